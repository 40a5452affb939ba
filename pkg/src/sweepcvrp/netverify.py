"""Re-execution of the computer-assisted verification over the depot net.

The claim being certified, for every depot position O:

  g2(O) - (31/48) g1(O) >= 0   and   g3(O) - 31/48 >= 0.

Depots at distance >= 3*sqrt(2) from the unit square satisfy both exactly
(there g2 = (3/4) g1 and g3 = 1). The remaining region reduces by the
square's symmetries to the wedge {1/2 <= a <= b}, which is covered by a
0.002-spaced grid of 2,814,378 points; each grid point must clear the
margins 0.0025 and 0.0096 in interval arithmetic, and the margins minus the
worst-case Lipschitz drift over half a grid cell ((79/48) resp. (3+sqrt 2)
times sqrt(2)/1000) must stay positive, which extends the grid check to the
whole region.

Grid coordinates are produced from integer indices by one multiplication by
0.002 (itself not exactly representable); the resulting double is wrapped in
a degenerate interval, so the representation error (~1e-15) is absorbed by
the Lipschitz slack, consuming well under 2^-40 of the 2e-4 headroom.
"""

from __future__ import annotations

import json
import math
import sys
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterator, Sequence, TextIO

import numpy as np

from .interval import (
    Interval,
    iv_add,
    iv_div,
    iv_mul,
    iv_point,
    iv_ratio,
    iv_sqrt,
    iv_sub,
    v_g_all,
    v_mul,
    v_point,
    v_sub,
)

GRID_MAX_INDEX = 2371
GRID_STEP = 0.002
GRID_BASE = 0.5
FAR_FIELD_DISTANCE = 3.0 * math.sqrt(2.0)
THRESHOLD_G2 = 0.0025
THRESHOLD_G3 = 0.0096

_RATIO_31_48 = iv_ratio(31, 48)
_V_31_48 = (_RATIO_31_48.lo, _RATIO_31_48.hi)

_PROGRESS_EVERY = 100_000
_BATCH_POINTS = 65536


def grid_coord(index):
    """Net coordinate for an integer grid index (works on arrays)."""
    return GRID_BASE + GRID_STEP * index


def enumerate_net(stride: int = 1) -> Iterator[tuple[float, float]]:
    """Net points (0.5 + 0.002*i, 0.5 + 0.002*j), i <= j, every `stride`-th
    index on both axes. stride=1 yields all 2,814,378 points."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    for i in range(0, GRID_MAX_INDEX + 1, stride):
        a = grid_coord(i)
        for j in range(i, GRID_MAX_INDEX + 1, stride):
            yield (a, grid_coord(j))


def net_size(stride: int = 1) -> int:
    m = len(range(0, GRID_MAX_INDEX + 1, stride))
    return m * (m + 1) // 2


@dataclass(frozen=True)
class PointCheck:
    margin2: Interval  # g2 - (31/48) g1
    margin3: Interval  # g3 - 31/48
    passed: bool


def verify_point(
    a: float, b: float,
    thresholds: tuple[float, float] = (THRESHOLD_G2, THRESHOLD_G3),
) -> PointCheck:
    """Interval margin check at one depot position: passes iff the interval
    lower bounds clear both thresholds."""
    g1, g2, g3 = v_g_all(v_point(np.float64(a)), v_point(np.float64(b)))
    m2 = v_sub(g2, v_mul(_V_31_48, g1))
    m3 = v_sub(g3, _V_31_48)
    margin2 = Interval(float(m2[0]), float(m2[1]))
    margin3 = Interval(float(m3[0]), float(m3[1]))
    passed = margin2.lo >= thresholds[0] and margin3.lo >= thresholds[1]
    return PointCheck(margin2=margin2, margin3=margin3, passed=passed)


def square_distance(a: float, b: float) -> float:
    """Distance from (a, b) to the unit square, by coordinate clamping."""
    dx = max(0.0, -a, a - 1.0)
    dy = max(0.0, -b, b - 1.0)
    return math.hypot(dx, dy)


def verify_far_field(a: float, b: float) -> bool:
    """True iff the depot is at distance >= 3*sqrt(2) from the unit square,
    where g2 = (3/4) g1 and g3 = 1 hold exactly and no numeric check is
    needed."""
    return square_distance(a, b) >= FAR_FIELD_DISTANCE


def verify_depot(
    a: float, b: float,
    thresholds: tuple[float, float] = (THRESHOLD_G2, THRESHOLD_G3),
) -> tuple[bool, str]:
    """Check an arbitrary depot: far-field positions pass by the exact
    argument, everything else goes through the interval margins."""
    if verify_far_field(a, b):
        return True, "far-field"
    return verify_point(a, b, thresholds).passed, "interval"


@dataclass(frozen=True)
class NetCertificate:
    points_checked: int
    min_margin_g2: float  # smallest interval lower bound of g2 - (31/48) g1
    min_margin_g3: float
    threshold_g2: float
    threshold_g3: float
    lipschitz_slack_g2: float  # lower bound of 0.0025 - (79/48) sqrt(2)/1000
    lipschitz_slack_g3: float  # lower bound of 0.0096 - (3+sqrt(2)) sqrt(2)/1000
    passed: bool
    stride: int
    runtime_seconds: float

    def canonical_dict(self) -> dict:
        """All verification content; excludes the (nondeterministic) runtime
        so certificates for the same stride compare bit-identical."""
        return {
            "points_checked": self.points_checked,
            "min_margin_g2": self.min_margin_g2,
            "min_margin_g3": self.min_margin_g3,
            "threshold_g2": self.threshold_g2,
            "threshold_g3": self.threshold_g3,
            "lipschitz_slack_g2": self.lipschitz_slack_g2,
            "lipschitz_slack_g3": self.lipschitz_slack_g3,
            "pass": self.passed,
            "stride": self.stride,
        }


def lipschitz_slacks() -> tuple[Interval, Interval]:
    """Rigorous enclosures of the two propagation constants:
    0.0025 - (79/48)*sqrt(2)/1000 and 0.0096 - (3+sqrt(2))*sqrt(2)/1000.
    Both must be positive for the grid check to extend to the continuum."""
    sqrt2 = iv_sqrt(iv_point(2.0))
    step = iv_div(sqrt2, iv_point(1000.0))
    slack2 = iv_sub(iv_point(THRESHOLD_G2), iv_mul(iv_ratio(79, 48), step))
    slack3 = iv_sub(
        iv_point(THRESHOLD_G3), iv_mul(iv_add(iv_point(3.0), sqrt2), step)
    )
    return slack2, slack3


def _margins_batch(i_idx: np.ndarray, j_idx: np.ndarray):
    a = grid_coord(i_idx.astype(np.float64))
    b = grid_coord(j_idx.astype(np.float64))
    g1, g2, g3 = v_g_all((a, a), (b, b))
    m2 = v_sub(g2, v_mul(_V_31_48, g1))
    m3 = v_sub(g3, _V_31_48)
    return a, b, m2[0], m3[0]


def _scan_rows(args):
    """Verify all net points of the given rows; returns aggregate minima and
    any failing points. Worker for both the serial and pooled paths."""
    rows, stride, thr2, thr3 = args
    count = 0
    min2 = math.inf
    min3 = math.inf
    failures: list[tuple[int, int, float, float, float, float]] = []
    i_parts = []
    j_parts = []
    for i in rows:
        js = np.arange(i, GRID_MAX_INDEX + 1, stride, dtype=np.int64)
        i_parts.append(np.full(js.shape, i, dtype=np.int64))
        j_parts.append(js)
    if not i_parts:
        return count, min2, min3, failures
    i_idx = np.concatenate(i_parts)
    j_idx = np.concatenate(j_parts)
    a, b, m2lo, m3lo = _margins_batch(i_idx, j_idx)
    count = int(i_idx.size)
    min2 = float(m2lo.min())
    min3 = float(m3lo.min())
    bad = (m2lo < thr2) | (m3lo < thr3)
    for idx in np.nonzero(bad)[0]:
        failures.append(
            (int(i_idx[idx]), int(j_idx[idx]), float(a[idx]), float(b[idx]),
             float(m2lo[idx]), float(m3lo[idx]))
        )
    return count, min2, min3, failures


def _row_chunks(stride: int, batch_points: int = _BATCH_POINTS) -> Iterator[list[int]]:
    chunk: list[int] = []
    size = 0
    for i in range(0, GRID_MAX_INDEX + 1, stride):
        row_len = len(range(i, GRID_MAX_INDEX + 1, stride))
        chunk.append(i)
        size += row_len
        if size >= batch_points:
            yield chunk
            chunk, size = [], 0
    if chunk:
        yield chunk


def verify_all(
    stride: int = 1,
    threads: int = 1,
    thresholds: tuple[float, float] = (THRESHOLD_G2, THRESHOLD_G3),
    report_path: str | None = None,
    progress: bool = False,
    batch_points: int = _BATCH_POINTS,
) -> NetCertificate:
    """Run the margin check over the whole (stride-sampled) net.

    Passes iff every point clears both thresholds and both Lipschitz slack
    constants are positive. Scanning stops at the first chunk containing a
    failure; the certificate then carries the failing points. At stride=1
    this is the full 2,814,378-point verification.
    """
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    thr2, thr3 = thresholds
    start = time.perf_counter()

    slack2, slack3 = lipschitz_slacks()
    slacks_ok = slack2.lo > 0.0 and slack3.lo > 0.0

    total = 0
    min2 = math.inf
    min3 = math.inf
    failures: list[tuple[int, int, float, float, float, float]] = []
    next_report = _PROGRESS_EVERY

    tasks = ((rows, stride, thr2, thr3) for rows in _row_chunks(stride, batch_points))
    if threads == 1:
        results = map(_scan_rows, tasks)
        pool = None
    else:
        pool = Pool(processes=threads)
        results = pool.imap(_scan_rows, tasks)
    try:
        for count, c_min2, c_min3, c_failures in results:
            total += count
            min2 = min(min2, c_min2)
            min3 = min(min3, c_min3)
            failures.extend(c_failures)
            if progress and total >= next_report:
                print(
                    f"verify-net: {total}/{net_size(stride)} points, "
                    f"min margins {min2:.6f} {min3:.6f}",
                    file=sys.stderr,
                )
                next_report = (total // _PROGRESS_EVERY + 1) * _PROGRESS_EVERY
            if c_failures:
                break  # fail fast; the certificate carries the evidence
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()

    passed = slacks_ok and not failures and total == net_size(stride)
    cert = NetCertificate(
        points_checked=total,
        min_margin_g2=min2,
        min_margin_g3=min3,
        threshold_g2=thr2,
        threshold_g3=thr3,
        lipschitz_slack_g2=slack2.lo,
        lipschitz_slack_g3=slack3.lo,
        passed=passed,
        stride=stride,
        runtime_seconds=time.perf_counter() - start,
    )
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8") as fp:
            write_report(cert, failures, fp)
    return cert


def write_report(
    cert: NetCertificate,
    failures: Sequence[tuple[int, int, float, float, float, float]],
    fp: TextIO,
) -> None:
    """Header line with the certificate fields, then one line
    `i j a b margin2_lo margin3_lo` per failing point."""
    header = {"format": "netverify-report-v1"}
    header.update(cert.canonical_dict())
    header["runtime_seconds"] = cert.runtime_seconds
    fp.write(json.dumps(header) + "\n")
    for i, j, a, b, m2, m3 in failures:
        fp.write(f"{i} {j} {a!r} {b!r} {m2!r} {m3!r}\n")


def read_report(fp: TextIO) -> tuple[dict, list[tuple[int, int, float, float, float, float]]]:
    header = json.loads(fp.readline())
    failures = []
    for line in fp:
        parts = line.split()
        if not parts:
            continue
        failures.append(
            (int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3]),
             float(parts[4]), float(parts[5]))
        )
    return header, failures
