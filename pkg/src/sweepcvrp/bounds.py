"""Radial/local cost bounds on the optimal CVRP value.

For a clipping radius R (a nonnegative float, or math.inf for the unclipped
radial cost):

  rad_R  = (2/k) * sum over terminals of min{d(depot, v), R}
  T*_R   = optimal TSP length over {v : d(depot, v) >= R}   (no depot added)

  lower bound:  opt >= T*_R + rad_R - (3 pi / 2) D
  upper bound:  sweep cost <= factor * (T*_0 + rad_inf + (3 pi / 2) D * ceil(n/(M k)))

with D the diameter of the terminals plus depot. The lower bound is only a
valid certificate when T*_R comes from the exact TSP solver: a heuristic
tour overestimates T*_R, so such values are flagged rather than trusted.

math.inf is the distinguished "unclipped" R value; the set {d >= inf} is
empty and T*_inf = 0 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closedform import choose_radius
from .geometry import Instance, Point, diameter, dist
from .tsp import tsp_dispatch


def radial_cost(instance: Instance, R: float) -> float:
    """(2/k) * sum of depot distances clipped at R."""
    if R < 0.0 or math.isnan(R):
        raise ValueError(f"R must be >= 0 or inf, got {R}")
    depot = instance.depot
    return (2.0 / instance.capacity) * math.fsum(
        min(dist(depot, v), R) for v in instance.terminals
    )


def local_subset(instance: Instance, R: float) -> list[int]:
    """Indices of terminals at distance >= R from the depot."""
    depot = instance.depot
    return [i for i, v in enumerate(instance.terminals) if dist(depot, v) >= R]


def local_cost(
    instance: Instance, R: float, tsp_mode: str = "auto", seed: int = 0
) -> tuple[float, bool]:
    """(T*_R, certified): TSP length over the >=R terminals; certified is
    True iff the exact solver produced it (subsets of size <= 1 are 0 and
    trivially certified)."""
    subset = local_subset(instance, R)
    if len(subset) <= 1:
        return 0.0, True
    points = [instance.terminals[i] for i in subset]
    result = tsp_dispatch(points, mode=tsp_mode, seed=seed)
    return result.length, result.certified_optimal


def instance_diameter(instance: Instance) -> float:
    return diameter([*instance.terminals, instance.depot])


def lower_bound(
    instance: Instance, R: float, tsp_mode: str = "auto", seed: int = 0
) -> tuple[float, bool]:
    """(value, valid): value = T*_R + rad_R - (3 pi / 2) D. Valid only with a
    certified T*_R; lower bounds may be vacuous (negative) and that is fine."""
    local, certified = local_cost(instance, R, tsp_mode, seed)
    value = local + radial_cost(instance, R) \
        - 1.5 * math.pi * instance_diameter(instance)
    return value, certified


def upper_bound_formula(
    instance: Instance, M: int, approx_factor: float = 1.0,
    tsp_mode: str = "auto", seed: int = 0,
) -> tuple[float, bool]:
    """(value, certified) for the sweep-cost upper bound
    factor * (T*_0 + rad_inf + (3 pi / 2) D ceil(n/(M k))).

    Use factor 1 when the group subproblems are solved exactly. The bound is
    a certificate only when T*_0 is exact (certified False records the
    caveat otherwise)."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if approx_factor < 1.0:
        raise ValueError(f"approx_factor must be >= 1, got {approx_factor}")
    t_zero, certified = local_cost(instance, 0.0, tsp_mode, seed)
    rad_inf = radial_cost(instance, math.inf)
    groups = math.ceil(instance.n / (M * instance.capacity))
    value = approx_factor * (
        t_zero + rad_inf
        + 1.5 * math.pi * instance_diameter(instance) * groups
    )
    return value, certified


def choose_R(depot: Point) -> float:
    """The analysis radius R = (3/4) E d(depot, v) for v uniform on the unit
    square (depot coordinates interpreted in unit-square units)."""
    return choose_radius(depot.x, depot.y)


@dataclass(frozen=True)
class BoundsReport:
    R: float  # may be math.inf
    rad_R: float
    local_R: float
    local_certified: bool
    D: float
    lower: float
    upper: float  # approx-factor-1 certificate value
    M: int

    CSV_HEADER = "R,rad_R,local_R,local_certified,D,lower,upper,M"

    def to_dict(self) -> dict:
        return {
            "R": "inf" if math.isinf(self.R) else self.R,
            "rad_R": self.rad_R,
            "local_R": self.local_R,
            "local_certified": self.local_certified,
            "D": self.D,
            "lower": self.lower,
            "upper": self.upper,
            "M": self.M,
        }

    def to_csv_row(self) -> str:
        r = "inf" if math.isinf(self.R) else repr(self.R)
        return (
            f"{r},{self.rad_R!r},{self.local_R!r},"
            f"{str(self.local_certified).lower()},{self.D!r},"
            f"{self.lower!r},{self.upper!r},{self.M}"
        )


def compute_bounds(
    instance: Instance, R: float, M: int,
    tsp_mode: str = "auto", seed: int = 0,
) -> BoundsReport:
    """Evaluate every bound ingredient at one R; the upper bound is reported
    at approx factor 1 (the exact-subsolver certificate)."""
    local, certified = local_cost(instance, R, tsp_mode, seed)
    rad = radial_cost(instance, R)
    D = instance_diameter(instance)
    lower = local + rad - 1.5 * math.pi * D
    upper, _ = upper_bound_formula(instance, M, 1.0, tsp_mode, seed)
    return BoundsReport(
        R=R, rad_R=rad, local_R=local, local_certified=certified,
        D=D, lower=lower, upper=upper, M=M,
    )
