"""Instance generation and the ratio-experiment harness.

Instances are reproducible: terminal coordinates come from the Philox 4x64
counter-based generator (numpy's implementation) keyed with the given seed,
mapped to [0,1) with the standard 53-bit scheme ((word >> 11) * 2^-53),
x then y per terminal in terminal order.

The experiment runner emits one CSV row per (seed, algorithm):

  seed,n,k,M,algo,cost,lb_r0,lb_rstar,lb_rinf,best_lb,ub,ratio,certified

Lower bounds are evaluated at R = 0, R = (3/4) E d(depot, v) and R = inf;
best_lb is the largest of the three. `certified` is false whenever a
heuristic TSP entered any of the lower bounds, which makes the ratio
indicative rather than a certificate. In small-instance mode the ratio
denominator is the brute-force optimum instead of best_lb. Comment lines
starting with `#` carry caveats and are skipped by the parser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .bounds import choose_R, lower_bound, upper_bound_formula
from .bruteforce import brute_force_opt
from .geometry import Instance, Point
from .group_cvrp import SolveConfig
from .itp import itp_solve
from .sweep import sweep_solve

CSV_HEADER = "seed,n,k,M,algo,cost,lb_r0,lb_rstar,lb_rinf,best_lb,ub,ratio,certified"

_ALGOS = ("sweep", "itp")


def gen_instance(n: int, k: int, depot: Point, seed: int) -> Instance:
    """n i.i.d. uniform terminals on the unit square; deterministic in seed."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    coords = rng.random((n, 2))
    terminals = tuple(Point(float(x), float(y)) for x, y in coords)
    return Instance(terminals=terminals, depot=depot, capacity=k)


def resolve_k(n: int, k_fixed: int | None = None, k_alpha: float | None = None) -> int:
    """Fixed capacity, or k = ceil(n^alpha) for alpha in [0, 1]."""
    if (k_fixed is None) == (k_alpha is None):
        raise ValueError("specify exactly one of k_fixed, k_alpha")
    if k_fixed is not None:
        k = k_fixed
    else:
        if not 0.0 <= k_alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {k_alpha}")
        k = math.ceil(n ** k_alpha) if n > 0 else 1
    if not 1 <= k <= max(n, 1):
        raise ValueError(f"k = {k} outside 1..max(n,1) for n = {n}")
    return k


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    depot: Point
    M: int
    seeds: tuple[int, ...]
    k_fixed: int | None = None
    k_alpha: float | None = None
    algos: tuple[str, ...] = _ALGOS
    tsp_mode: str = "auto"
    small_instance_mode: bool = False  # brute-force opt as ratio denominator

    def __post_init__(self) -> None:
        for algo in self.algos:
            if algo not in _ALGOS:
                raise ValueError(f"unknown algo {algo!r}")
        resolve_k(self.n, self.k_fixed, self.k_alpha)  # validate early

    @property
    def k(self) -> int:
        return resolve_k(self.n, self.k_fixed, self.k_alpha)


@dataclass(frozen=True)
class RatioRow:
    seed: int
    n: int
    k: int
    M: int
    algo: str
    cost: float
    lb_r0: float
    lb_rstar: float
    lb_rinf: float
    best_lb: float
    ub: float
    ratio: float
    certified: bool

    def to_csv(self) -> str:
        return (
            f"{self.seed},{self.n},{self.k},{self.M},{self.algo},"
            f"{self.cost!r},{self.lb_r0!r},{self.lb_rstar!r},{self.lb_rinf!r},"
            f"{self.best_lb!r},{self.ub!r},{self.ratio!r},"
            f"{str(self.certified).lower()}"
        )


def parse_csv_row(line: str) -> RatioRow:
    f = line.strip().split(",")
    if len(f) != 13:
        raise ValueError(f"expected 13 fields, got {len(f)}: {line!r}")
    return RatioRow(
        seed=int(f[0]), n=int(f[1]), k=int(f[2]), M=int(f[3]), algo=f[4],
        cost=float(f[5]), lb_r0=float(f[6]), lb_rstar=float(f[7]),
        lb_rinf=float(f[8]), best_lb=float(f[9]), ub=float(f[10]),
        ratio=float(f[11]), certified=f[12] == "true",
    )


def read_csv(fp: TextIO) -> list[RatioRow]:
    rows = []
    for line in fp:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line == CSV_HEADER:
            continue
        rows.append(parse_csv_row(line))
    return rows


@dataclass
class ExperimentResult:
    rows: list[RatioRow] = field(default_factory=list)
    # per-seed largest lower bound among the certified ones (R=inf always is)
    best_certified_lb: dict[int, float] = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)


def run_ratio_experiment(config: ExperimentConfig) -> ExperimentResult:
    """One row per (seed, algo), seeds in the given order."""
    k = config.k
    rstar = choose_R(config.depot)
    result = ExperimentResult()
    result.caveats.append(
        "observational desk-scale run; the asymptotic regime (M >= 1e5, "
        "n -> inf) is out of reach, so ratios are empirical, not bounds"
    )
    if config.small_instance_mode:
        result.caveats.append("ratio denominator is the brute-force optimum")

    for seed in config.seeds:
        instance = gen_instance(config.n, k, config.depot, seed)
        lbs = {}
        valid = {}
        for name, R in (("r0", 0.0), ("rstar", rstar), ("rinf", math.inf)):
            lbs[name], valid[name] = lower_bound(
                instance, R, tsp_mode=config.tsp_mode, seed=seed
            )
        best_lb = max(lbs.values())
        certified = all(valid.values())
        certified_values = [v for name, v in lbs.items() if valid[name]]
        result.best_certified_lb[seed] = max(certified_values)

        if config.small_instance_mode:
            denominator = brute_force_opt(instance)
        else:
            denominator = best_lb

        for algo in config.algos:
            if algo == "sweep":
                solve_cfg = SolveConfig(tsp_mode=config.tsp_mode, seed=seed)
                cost = sweep_solve(instance, config.M, solve_cfg).total_cost
                ub, _ = upper_bound_formula(
                    instance, config.M, 1.0, config.tsp_mode, seed
                )
                M = config.M
            else:
                cost = itp_solve(instance, tsp_mode=config.tsp_mode, seed=seed).total_cost
                ub, _ = upper_bound_formula(instance, 1, 1.0, config.tsp_mode, seed)
                M = 1
            ratio = cost / denominator if denominator > 0.0 else math.nan
            result.rows.append(RatioRow(
                seed=seed, n=config.n, k=k, M=M, algo=algo, cost=cost,
                lb_r0=lbs["r0"], lb_rstar=lbs["rstar"], lb_rinf=lbs["rinf"],
                best_lb=best_lb, ub=ub, ratio=ratio, certified=certified,
            ))
    return result


def write_csv(result: ExperimentResult, fp: TextIO) -> None:
    for caveat in result.caveats:
        fp.write(f"# {caveat}\n")
    fp.write(CSV_HEADER + "\n")
    for row in result.rows:
        fp.write(row.to_csv() + "\n")


def mean_certified_ratio(result: ExperimentResult, algo: str = "sweep") -> float:
    """Mean of cost / best-certified-lower-bound over seeds, for one algo."""
    ratios = [
        row.cost / result.best_certified_lb[row.seed]
        for row in result.rows
        if row.algo == algo and result.best_certified_lb[row.seed] > 0.0
    ]
    if not ratios:
        return math.nan
    return math.fsum(ratios) / len(ratios)
