"""Planar geometry substrate: points, CVRP instances, tours, sweep ordering.

All coordinates are IEEE-754 binary64. Length comparisons throughout the
package use an absolute tolerance of 1e-9, which is appropriate for data at
unit-square scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TextIO

import numpy as np

TOL = 1e-9

# n*n distance scans stay exact and fast up to this size; beyond it the
# diameter switches to convex hull + rotating calipers.
_DIAMETER_SCAN_LIMIT = 4096


class Point(NamedTuple):
    x: float
    y: float


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class Instance:
    """A unit-demand CVRP instance: terminals, a depot, and a capacity.

    The terminal list is ordered (indices are meaningful) and may contain
    duplicate coordinates. Capacity must satisfy 1 <= k <= max(n, 1).
    """

    terminals: tuple[Point, ...]
    depot: Point
    capacity: int

    def __post_init__(self) -> None:
        n = len(self.terminals)
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")
        if self.capacity > max(n, 1):
            raise ValueError(
                f"capacity {self.capacity} exceeds max(n, 1) = {max(n, 1)}"
            )
        for p in (self.depot, *self.terminals):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"non-finite coordinate: {p}")

    @property
    def n(self) -> int:
        return len(self.terminals)


@dataclass(frozen=True)
class Tour:
    """One depot-rooted tour. `indices` are instance terminal indices in
    visit order; `length` is depot -> first -> ... -> last -> depot."""

    indices: tuple[int, ...]
    length: float


@dataclass(frozen=True)
class Solution:
    tours: tuple[Tour, ...]
    total_cost: float


def tour_length(depot: Point, points: Sequence[Point]) -> float:
    """Length of the closed tour depot -> points (in order) -> depot."""
    if not points:
        return 0.0
    total = dist(depot, points[0])
    for a, b in zip(points, points[1:]):
        total += dist(a, b)
    total += dist(points[-1], depot)
    return total


def make_tour(depot: Point, all_points: Sequence[Point], indices: Sequence[int]) -> Tour:
    pts = [all_points[i] for i in indices]
    return Tour(indices=tuple(indices), length=tour_length(depot, pts))


def make_solution(tours: Iterable[Tour]) -> Solution:
    tours = tuple(tours)
    return Solution(tours=tours, total_cost=math.fsum(t.length for t in tours))


def polar_angle(p: Point, depot: Point) -> float:
    """Polar angle of p with respect to depot, normalized to [0, 2*pi).

    A terminal coinciding with the depot gets angle 0 (and therefore sorts
    first); any consistent choice preserves the contiguous-group structure
    the sweep relies on.
    """
    if p.x == depot.x and p.y == depot.y:
        return 0.0
    angle = math.atan2(p.y - depot.y, p.x - depot.x)
    if angle < 0.0:
        angle += 2.0 * math.pi
    if angle >= 2.0 * math.pi:  # guard against rounding at the wrap
        angle = 0.0
    return angle


def sweep_sort(instance: Instance) -> list[int]:
    """Terminal indices ordered by nondecreasing polar angle around the depot.

    Ties broken by nondecreasing distance to the depot, then by original
    index (the sort is stable by construction of the key).
    """
    depot = instance.depot
    return sorted(
        range(instance.n),
        key=lambda i: (
            polar_angle(instance.terminals[i], depot),
            dist(depot, instance.terminals[i]),
            i,
        ),
    )


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Convex hull in counterclockwise order (Andrew's monotone chain).

    Collinear points on the hull boundary are dropped. Degenerate inputs
    (all points equal or collinear) yield hulls of size 1 or 2.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _sq_dist(p: Point, q: Point) -> float:
    return (p.x - q.x) ** 2 + (p.y - q.y) ** 2


def diameter(points: Sequence[Point]) -> float:
    """Maximum pairwise distance; 0 for fewer than two points.

    Uses the O(n^2) scan below _DIAMETER_SCAN_LIMIT and convex hull +
    rotating calipers above. Both paths maximize the same squared-distance
    expression, so they agree bit-for-bit.
    """
    n = len(points)
    if n <= 1:
        return 0.0
    if n <= _DIAMETER_SCAN_LIMIT:
        if n <= 64:
            best = 0.0
            for i in range(n):
                for j in range(i + 1, n):
                    d2 = _sq_dist(points[i], points[j])
                    if d2 > best:
                        best = d2
            return math.sqrt(best)
        # same per-pair expression, row-vectorized
        xs = np.array([p.x for p in points])
        ys = np.array([p.y for p in points])
        best = 0.0
        for i in range(n - 1):
            dx = xs[i + 1 :] - xs[i]
            dy = ys[i + 1 :] - ys[i]
            row = float(np.max(dx * dx + dy * dy))
            if row > best:
                best = row
        return math.sqrt(best)
    hull = convex_hull(points)
    return math.sqrt(_max_sq_dist_calipers(hull))


def _max_sq_dist_calipers(hull: Sequence[Point]) -> float:
    m = len(hull)
    if m == 1:
        return 0.0
    if m == 2:
        return _sq_dist(hull[0], hull[1])
    best = 0.0
    j = 1
    for i in range(m):
        ni = (i + 1) % m
        # advance the antipodal pointer while the triangle area keeps growing
        while True:
            nj = (j + 1) % m
            cur = abs(_cross(hull[i], hull[ni], hull[j]))
            nxt = abs(_cross(hull[i], hull[ni], hull[nj]))
            if nxt > cur:
                j = nj
            else:
                break
        for q in (hull[j], hull[(j + 1) % m]):
            d2 = _sq_dist(hull[i], q)
            if d2 > best:
                best = d2
        d2 = _sq_dist(hull[ni], hull[j])
        if d2 > best:
            best = d2
    return best


# --- instance text format ----------------------------------------------------
#
# Line 1: `n k depot_x depot_y`; lines 2..n+1: `x y` per terminal.
# Fields are space-separated decimals; floats are written with repr so they
# round-trip exactly.


def write_instance(instance: Instance, fp: TextIO) -> None:
    fp.write(
        f"{instance.n} {instance.capacity} {instance.depot.x!r} {instance.depot.y!r}\n"
    )
    for p in instance.terminals:
        fp.write(f"{p.x!r} {p.y!r}\n")


def read_instance(fp: TextIO) -> Instance:
    header = fp.readline().split()
    if len(header) != 4:
        raise ValueError("instance header must be `n k depot_x depot_y`")
    n, k = int(header[0]), int(header[1])
    depot = Point(float(header[2]), float(header[3]))
    terminals = []
    for line_no in range(n):
        fields = fp.readline().split()
        if len(fields) != 2:
            raise ValueError(f"terminal line {line_no + 2}: expected `x y`")
        terminals.append(Point(float(fields[0]), float(fields[1])))
    return Instance(terminals=tuple(terminals), depot=depot, capacity=k)


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fp:
        return read_instance(fp)


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        write_instance(instance, fp)
