"""CVRP on a single sweep group: exact set-partition DP for small groups,
tour-splitting heuristic otherwise.

The exact path computes, for every subset of the group, the optimal tour
through the depot (one Held-Karp sweep yields all subsets at once), then a
set-partition DP over capacity-feasible blocks. The heuristic path computes
one TSP tour over the group plus depot and cuts it into segments of at most
k terminals, choosing the best of k rotation offsets.

All solutions returned here use local indices 0..len(U)-1; callers remap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import Point, Solution, Tour, dist, make_solution, tour_length
from .tsp import tsp_dispatch

EXACT_GROUP_THRESHOLD = 12


@dataclass(frozen=True)
class SolveConfig:
    exact_group_threshold: int = EXACT_GROUP_THRESHOLD
    tsp_mode: str = "auto"
    seed: int = 0


@dataclass(frozen=True)
class GroupResult:
    solution: Solution
    method: str  # "exact" or "heuristic"


def _held_karp_all_subsets(U: Sequence[Point], depot: Point):
    """Shortest depot-rooted path DP over all subsets of U.

    Returns (tour_cost, tour_end, parent) where tour_cost[mask] is the
    optimal closed-tour cost over the terminals in mask plus the depot,
    tour_end[mask] the last terminal of that optimal path, and parent
    the DP backpointers for order reconstruction.
    """
    n = len(U)
    size = 1 << n
    d0 = [dist(depot, u) for u in U]
    d = [[dist(a, b) for b in U] for a in U]
    inf = math.inf
    dp = [[inf] * n for _ in range(size)]
    parent = [[-1] * n for _ in range(size)]
    for j in range(n):
        dp[1 << j][j] = d0[j]
    for mask in range(1, size):
        row = dp[mask]
        for j in range(n):
            cj = row[j]
            if cj == inf:
                continue
            dj = d[j]
            for m in range(n):
                bit = 1 << m
                if mask & bit:
                    continue
                cand = cj + dj[m]
                nmask = mask | bit
                if cand < dp[nmask][m]:
                    dp[nmask][m] = cand
                    parent[nmask][m] = j
    tour_cost = [0.0] * size
    tour_end = [-1] * size
    for mask in range(1, size):
        row = dp[mask]
        best, best_j = inf, -1
        for j in range(n):
            if row[j] == inf:
                continue
            cand = row[j] + d0[j]
            if cand < best:
                best, best_j = cand, j
        tour_cost[mask] = best
        tour_end[mask] = best_j
    return tour_cost, tour_end, parent


def _reconstruct_path(mask: int, end: int, parent) -> list[int]:
    order = []
    j = end
    while j != -1:
        order.append(j)
        mask, j = mask ^ (1 << j), parent[mask][j]
    order.reverse()
    return order


def cvrp_exact_small(U: Sequence[Point], depot: Point, k: int) -> Solution:
    """Minimum-total-length partition of U into tours of at most k terminals.

    Subset DP: optimal single-tour cost per feasible subset, then a
    set-partition DP over those subsets. Rejects |U| > EXACT_GROUP_THRESHOLD.
    """
    n = len(U)
    if n > EXACT_GROUP_THRESHOLD:
        raise ValueError(
            f"{n} points exceeds exact group threshold {EXACT_GROUP_THRESHOLD}"
        )
    if k < 1:
        raise ValueError(f"capacity must be >= 1, got {k}")
    if n == 0:
        return make_solution([])

    tour_cost, tour_end, parent = _held_karp_all_subsets(U, depot)

    size = 1 << n
    inf = math.inf
    part = [inf] * size
    choice = [0] * size
    part[0] = 0.0
    for mask in range(1, size):
        low = mask & (-mask)  # anchor blocks on the lowest set bit
        rest = mask ^ low
        sub = rest
        best, best_s = inf, 0
        while True:
            s = sub | low
            if s.bit_count() <= k:
                cand = tour_cost[s] + part[mask ^ s]
                if cand < best:
                    best, best_s = cand, s
            if sub == 0:
                break
            sub = (sub - 1) & rest
        part[mask] = best
        choice[mask] = best_s

    tours = []
    mask = size - 1
    while mask:
        s = choice[mask]
        order = _reconstruct_path(s, tour_end[s], parent)
        tours.append(Tour(indices=tuple(order), length=tour_cost[s]))
        mask ^= s
    return make_solution(tours)


def split_tour_sequence(
    U: Sequence[Point], depot: Point, seq: Sequence[int], k: int
) -> tuple[list[list[int]], float]:
    """Cut the cyclic terminal sequence `seq` into consecutive segments of at
    most k terminals, trying the k rotation offsets and keeping the cheapest.

    Returns (segments, total_cost). Offset r puts the first r terminals in a
    short leading segment; ties prefer the smaller offset.
    """
    n = len(seq)
    if n == 0:
        return [], 0.0
    best_cost = math.inf
    best_segments: list[list[int]] = []
    for r in range(min(k, n)):
        segments = []
        if r > 0:
            segments.append(list(seq[:r]))
        segments.extend(list(seq[i : i + k]) for i in range(r, n, k))
        cost = math.fsum(
            tour_length(depot, [U[i] for i in seg]) for seg in segments
        )
        if cost < best_cost:
            best_cost = cost
            best_segments = segments
    return best_segments, best_cost


def cvrp_group_heuristic(
    U: Sequence[Point], depot: Point, k: int,
    tsp_mode: str = "auto", seed: int = 0,
) -> Solution:
    """Tour-splitting solution: one TSP tour over U plus the depot, then the
    best-offset split into segments of at most k terminals.

    With an exact TSP tour the total cost is bounded by
    TSP(U + depot) + (2/k) * sum of depot distances (classical splitting
    inequality; the offset average argument).
    """
    n = len(U)
    if n == 0:
        return make_solution([])
    if n == 1:
        return make_solution([Tour(indices=(0,), length=2.0 * dist(depot, U[0]))])
    points = [depot, *U]
    res = tsp_dispatch(points, mode=tsp_mode, seed=seed)
    pos = res.order.index(0)  # rotate so the depot leads the cycle
    cycle = res.order[pos + 1 :] + res.order[:pos]
    seq = [i - 1 for i in cycle]  # back to local U indices
    segments, _ = split_tour_sequence(U, depot, seq, k)
    return make_solution(
        Tour(indices=tuple(seg), length=tour_length(depot, [U[i] for i in seg]))
        for seg in segments
    )


def solve_group(
    U: Sequence[Point], depot: Point, k: int, config: SolveConfig = SolveConfig()
) -> GroupResult:
    """Exact partition for small groups, tour splitting otherwise."""
    if len(U) == 0:
        return GroupResult(solution=make_solution([]), method="exact")
    if len(U) <= config.exact_group_threshold:
        return GroupResult(solution=cvrp_exact_small(U, depot, k), method="exact")
    return GroupResult(
        solution=cvrp_group_heuristic(U, depot, k, config.tsp_mode, config.seed),
        method="heuristic",
    )
