import math

import numpy as np
import pytest

from sweepcvrp.bounds import (
    BoundsReport,
    choose_R,
    compute_bounds,
    instance_diameter,
    local_cost,
    local_subset,
    lower_bound,
    radial_cost,
    upper_bound_formula,
)
from sweepcvrp.bruteforce import brute_force_opt
from sweepcvrp.geometry import Instance, Point
from sweepcvrp.itp import itp_solve
from sweepcvrp.sweep import sweep_solve

from helpers import random_instance

CROSS = Instance(
    terminals=(Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)),
    depot=Point(0, 0),
    capacity=2,
)


def _single_terminal(distance=3.0, k=2):
    return Instance(terminals=(Point(distance, 0.0),), depot=Point(0, 0),
                    capacity=min(k, 1))


class TestRadialCost:
    def test_r_zero(self):
        assert radial_cost(CROSS, 0.0) == 0.0

    def test_unclipped_single(self):
        inst = Instance(terminals=(Point(3, 0),), depot=Point(0, 0), capacity=1)
        assert radial_cost(inst, math.inf) == pytest.approx(6.0, abs=1e-12)  # (2/1)*3

    def test_clipped(self):
        inst = Instance(terminals=(Point(3, 0),), depot=Point(0, 0), capacity=1)
        assert radial_cost(inst, 1.0) == pytest.approx(2.0, abs=1e-12)

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            radial_cost(CROSS, -0.5)

    def test_monotone_and_lipschitz_in_r(self):
        rng = np.random.default_rng(223)
        for _ in range(20):
            inst = random_instance(rng, max_n=15, max_k=4)
            rs = sorted(rng.uniform(0, 2, size=6))
            values = [radial_cost(inst, r) for r in rs]
            slope = 2.0 * inst.n / inst.capacity
            for (r1, v1), (r2, v2) in zip(zip(rs, values), zip(rs[1:], values[1:])):
                assert v2 >= v1 - 1e-12
                assert v2 - v1 <= slope * (r2 - r1) + 1e-12


class TestLocalCost:
    def test_r_above_everything(self):
        value, certified = local_cost(CROSS, 10.0)
        assert value == 0.0 and certified

    def test_r_inf_empty(self):
        assert local_subset(CROSS, math.inf) == []
        value, certified = local_cost(CROSS, math.inf)
        assert value == 0.0 and certified

    def test_r_zero_full_tsp(self):
        value, certified = local_cost(CROSS, 0.0)
        assert value == pytest.approx(4 * math.sqrt(2), abs=1e-9)
        assert certified

    def test_two_survivors(self):
        inst = Instance(
            terminals=(Point(2, 0), Point(3, 0), Point(0.1, 0)),
            depot=Point(0, 0), capacity=1,
        )
        value, certified = local_cost(inst, 1.5)
        assert value == pytest.approx(2.0, abs=1e-12)
        assert certified

    def test_subset_uses_geq(self):
        inst = Instance(terminals=(Point(1, 0),), depot=Point(0, 0), capacity=1)
        assert local_subset(inst, 1.0) == [0]  # d == R stays in

    def test_heuristic_mode_not_certified(self):
        rng = np.random.default_rng(227)
        inst = random_instance(rng, max_n=8, max_k=2, min_n=5)
        value, certified = local_cost(inst, 0.0, tsp_mode="heuristic")
        assert not certified
        exact_value, _ = local_cost(inst, 0.0, tsp_mode="exact")
        assert value >= exact_value - 1e-9


class TestLowerBound:
    def test_all_terminals_at_depot(self):
        inst = Instance(terminals=(Point(0, 0), Point(0, 0)), depot=Point(0, 0),
                        capacity=1)
        for R in (0.0, 0.5, math.inf):
            value, valid = lower_bound(inst, R)
            assert value == pytest.approx(0.0, abs=1e-12)
            assert valid

    def test_cross_r_zero(self):
        value, valid = lower_bound(CROSS, 0.0)
        assert value == pytest.approx(4 * math.sqrt(2) - 3 * math.pi, abs=1e-9)
        assert valid  # vacuous (negative) but still a valid bound

    def test_r_inf(self):
        value, valid = lower_bound(CROSS, math.inf)
        expected = radial_cost(CROSS, math.inf) - 1.5 * math.pi * 2.0
        assert value == pytest.approx(expected, abs=1e-9)
        assert valid

    def test_heuristic_flagged_invalid(self):
        rng = np.random.default_rng(229)
        inst = random_instance(rng, max_n=9, max_k=3, min_n=5)
        _, valid = lower_bound(inst, 0.0, tsp_mode="heuristic")
        assert not valid

    def test_sandwich_against_bruteforce(self):
        rng = np.random.default_rng(233)
        for _ in range(30):
            inst = random_instance(rng, max_n=8, max_k=3)
            opt = brute_force_opt(inst)
            rstar = choose_R(inst.depot)
            radii = [0.0, rstar, math.inf] + list(rng.uniform(0, 3, size=5))
            for R in radii:
                value, valid = lower_bound(inst, R, tsp_mode="exact")
                assert valid
                assert value <= opt + 1e-9


class TestUpperBound:
    def test_empty_instance(self):
        inst = Instance(terminals=(), depot=Point(0.3, 0.4), capacity=1)
        value, certified = upper_bound_formula(inst, 3)
        assert value == 0.0 and certified

    def test_single_terminal(self):
        inst = Instance(terminals=(Point(1, 0),), depot=Point(0, 0), capacity=1)
        # T*_0 over one point is 0; rad_inf = 2; D = 1
        value, _ = upper_bound_formula(inst, 1, approx_factor=1.0)
        assert value == pytest.approx(2.0 + 1.5 * math.pi, abs=1e-9)
        value2, _ = upper_bound_formula(inst, 1, approx_factor=2.0)
        assert value2 == pytest.approx(2 * (2.0 + 1.5 * math.pi), abs=1e-9)

    def test_cross_formula(self):
        value, certified = upper_bound_formula(CROSS, 1, approx_factor=1.0)
        expected = 4 * math.sqrt(2) + 4.0 + 6 * math.pi  # T*_0 + rad_inf + 3piD/2 * 2
        assert certified
        assert value == pytest.approx(expected, abs=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            upper_bound_formula(CROSS, 0)
        with pytest.raises(ValueError):
            upper_bound_formula(CROSS, 1, approx_factor=0.5)


class TestChooseR:
    def test_center(self):
        assert choose_R(Point(0.5, 0.5)) == pytest.approx(0.2869483936740798,
                                                          abs=1e-12)

    def test_corner(self):
        assert choose_R(Point(0.0, 0.0)) == pytest.approx(0.5738967873481595,
                                                          abs=1e-12)

    def test_far_field(self):
        from sweepcvrp.closedform import g1, g2

        a, b = 9.0, -3.0
        R = choose_R(Point(a, b))
        assert R == pytest.approx(0.75 * g1(a, b), abs=1e-12)
        assert g2(a, b) == pytest.approx(R, abs=1e-12)  # far field: g2 = R


class TestReports:
    def test_report_fields_and_sandwich(self):
        report = compute_bounds(CROSS, 0.0, M=1)
        assert report.local_certified
        assert report.lower <= report.upper + 1e-9
        assert report.D == pytest.approx(2.0, abs=1e-12)
        assert report.M == 1

    def test_json_dict_inf(self):
        report = compute_bounds(CROSS, math.inf, M=2)
        d = report.to_dict()
        assert d["R"] == "inf"
        assert isinstance(d["lower"], float)

    def test_csv_row_parses(self):
        report = compute_bounds(CROSS, 0.75, M=2)
        row = report.to_csv_row()
        fields = row.split(",")
        assert len(fields) == len(BoundsReport.CSV_HEADER.split(","))
        assert float(fields[0]) == 0.75
        assert fields[3] == "true"

    def test_lower_le_upper_random(self):
        rng = np.random.default_rng(239)
        for _ in range(20):
            inst = random_instance(rng, max_n=10, max_k=3)
            R = float(rng.uniform(0, 2))
            report = compute_bounds(inst, R, M=int(rng.integers(1, 4)))
            assert report.local_certified
            assert report.lower <= report.upper + 1e-9


class TestAlgorithmsAgainstBounds:
    def test_sweep_and_itp_within_upper(self):
        rng = np.random.default_rng(241)
        for _ in range(15):
            inst = random_instance(rng, max_n=10, max_k=3)
            for M in (1, 2):
                ub, certified = upper_bound_formula(inst, M)
                assert certified
                assert sweep_solve(inst, M).total_cost <= ub + 1e-9
            ub1, _ = upper_bound_formula(inst, 1)
            assert itp_solve(inst, tsp_mode="exact").total_cost <= ub1 + 1e-9

    def test_instance_diameter_includes_depot(self):
        inst = Instance(terminals=(Point(0, 0),), depot=Point(5, 0), capacity=1)
        assert instance_diameter(inst) == 5.0
