"""Rigorous interval enclosures for the closed-form distance integrals.

Every operation returns an interval guaranteed to contain the exact real
result for any inputs drawn from the input intervals. Rounding discipline:
operations are evaluated in round-to-nearest and then inflated outward,
1 ulp per side for +,-,*,/ and squaring (IEEE correct rounding errs by at
most half an ulp) and 4 ulps per side for sqrt/log/arccos/arcsin (libm is
assumed faithfully rounded, i.e. below 1 ulp of error; the 4-ulp margin
covers that assumption with room to spare). This trades a little width for
portability: no hardware rounding-mode switching is required.

The working representation is a pair (lo, hi) of binary64 scalars or numpy
arrays; all `v_*` functions operate elementwise on such pairs, which is what
lets the net verifier evaluate millions of depot positions in vectorized
batches. The scalar `Interval` dataclass is a thin facade over the same
kernels.

Piecewise formulas (the disk-segment and disk-corner integrals) evaluate
every branch whose guard can hold somewhere in the input box and return the
hull, so enclosures stay valid across branch boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Interval",
    "iv_point", "iv_add", "iv_sub", "iv_mul", "iv_div", "iv_neg",
    "iv_min", "iv_max", "iv_abs",
    "iv_sqrt", "iv_log", "iv_arccos", "iv_arcsin", "iv_pi", "iv_ratio",
    "iv_g",
]

_INF = np.inf

# domain overshoot tolerated by arccos/arcsin before erroring
_DOMAIN_SLOP = 1e-12

# two binary64 neighbors of pi (math.pi rounds down from the true value)
PI_LO = math.pi
PI_HI = math.nextafter(math.pi, math.inf)


# --- outward rounding helpers -------------------------------------------------

def _dn1(x):
    return np.nextafter(x, -_INF)


def _up1(x):
    return np.nextafter(x, _INF)


def _dn4(x):
    # np.spacing(|x|) is at least the local ulp, so this moves >= 4 ulps down
    return x - 4.0 * np.spacing(np.abs(x))


def _up4(x):
    return x + 4.0 * np.spacing(np.abs(x))


# --- elementwise interval kernel ---------------------------------------------
# An interval batch is a pair (lo, hi) of equal-shaped float64 arrays (or
# python/numpy scalars). Soundness contract: for inputs x in [xlo, xhi] the
# exact real result lies in the returned [lo, hi].

def v_point(x):
    """Degenerate interval around an exact binary64 value."""
    return x, x


def v_add(a, b):
    return _dn1(a[0] + b[0]), _up1(a[1] + b[1])


def v_sub(a, b):
    return _dn1(a[0] - b[1]), _up1(a[1] - b[0])


def v_neg(a):
    return -a[1], -a[0]


def v_mul(a, b):
    p1 = a[0] * b[0]
    p2 = a[0] * b[1]
    p3 = a[1] * b[0]
    p4 = a[1] * b[1]
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return _dn1(lo), _up1(hi)


def v_div(a, b):
    """Quotient; the divisor must not contain zero (callers guarantee it)."""
    q1 = a[0] / b[0]
    q2 = a[0] / b[1]
    q3 = a[1] / b[0]
    q4 = a[1] / b[1]
    lo = np.minimum(np.minimum(q1, q2), np.minimum(q3, q4))
    hi = np.maximum(np.maximum(q1, q2), np.maximum(q3, q4))
    return _dn1(lo), _up1(hi)


def v_sqr(a):
    """Elementwise square; tighter than v_mul(a, a) for sign-straddling
    inputs since x*x never goes negative."""
    alo_abs = np.abs(a[0])
    ahi_abs = np.abs(a[1])
    m = np.minimum(alo_abs, ahi_abs)
    M = np.maximum(alo_abs, ahi_abs)
    straddles = (a[0] < 0.0) & (a[1] > 0.0)
    lo = np.where(straddles, 0.0, np.maximum(0.0, _dn1(m * m)))
    return lo, _up1(M * M)


def v_min(a, b):
    return np.minimum(a[0], b[0]), np.minimum(a[1], b[1])


def v_max(a, b):
    return np.maximum(a[0], b[0]), np.maximum(a[1], b[1])


def v_abs(a):
    straddles = (a[0] < 0.0) & (a[1] > 0.0)
    lo = np.where(straddles, 0.0, np.minimum(np.abs(a[0]), np.abs(a[1])))
    return lo, np.maximum(np.abs(a[0]), np.abs(a[1]))


def v_sqrt(a):
    """Elementwise sqrt; the radicand's lower end is clamped at 0."""
    lo_in = np.maximum(a[0], 0.0)
    hi_in = np.maximum(a[1], 0.0)
    return np.maximum(0.0, _dn4(np.sqrt(lo_in))), _up4(np.sqrt(hi_in))


def v_log(a):
    # increasing; domain a[0] > 0 is the caller's responsibility in the
    # masked kernels (lanes violating it are discarded via fallbacks)
    return _dn4(np.log(a[0])), _up4(np.log(a[1]))


def v_arccos(a):
    # decreasing; inputs clamped to [-1, 1]
    lo_in = np.clip(a[0], -1.0, 1.0)
    hi_in = np.clip(a[1], -1.0, 1.0)
    return _dn4(np.arccos(hi_in)), _up4(np.arccos(lo_in))


def v_arcsin(a):
    # increasing; inputs clamped to [-1, 1]
    lo_in = np.clip(a[0], -1.0, 1.0)
    hi_in = np.clip(a[1], -1.0, 1.0)
    return _dn4(np.arcsin(lo_in)), _up4(np.arcsin(hi_in))


def _ratio_const(p: int, q: int) -> tuple[float, float]:
    c = p / q
    if Fraction(c) == Fraction(p, q):
        return c, c
    return math.nextafter(c, -math.inf), math.nextafter(c, math.inf)


V_PI = (PI_LO, PI_HI)
V_HALF_PI = (PI_LO / 2.0, PI_HI / 2.0)  # division by 2 is exact
_V_HALF = _ratio_const(1, 2)
_V_THIRD = _ratio_const(1, 3)
_V_SIXTH = _ratio_const(1, 6)
_V_TWO_THIRDS = _ratio_const(2, 3)
_V_THREE_QUARTERS = _ratio_const(3, 4)
_V_ONE = (1.0, 1.0)
_V_TWO_THIRDS_PI = (_dn1(PI_LO * _V_TWO_THIRDS[0]), _up1(PI_HI * _V_TWO_THIRDS[1]))


def _hull_into(out, mask, cand):
    """Merge candidate intervals into the running hull where mask holds."""
    out_lo = np.where(mask, np.minimum(out[0], cand[0]), out[0])
    out_hi = np.where(mask, np.maximum(out[1], cand[1]), out[1])
    return out_lo, out_hi


# --- closed-form kernels -------------------------------------------------------

def _va_crude(a, b, hyp_hi):
    """Fallback enclosure for the triangle integral: |A1| <= area * max
    radius = (|a| |b| / 2) * hyp. Used where the log form is unusable
    (intervals straddling a = 0, or inflation pushing the log argument
    nonpositive)."""
    amax = np.maximum(np.abs(a[0]), np.abs(a[1]))
    bmax = np.maximum(np.abs(b[0]), np.abs(b[1]))
    w = _up1(_up1(amax * bmax) * 0.5)
    w = _up1(w * hyp_hi)
    return -w, w


def v_A1(a, b):
    """Triangle integral of sqrt(x^2+y^2) over (0,0),(a,0),(a,b):
    a^3/6 * log(b/|a| + sqrt(1+b^2/a^2)) + ab/6 * sqrt(a^2+b^2),
    odd in a, with exact zero at a = 0."""
    hyp = v_sqrt(v_add(v_sqr(a), v_sqr(b)))
    # reduce to a > 0 via oddness; sign-straddling lanes use the fallback
    negate = a[1] <= 0.0
    ap = (np.where(negate, -a[1], a[0]), np.where(negate, -a[0], a[1]))
    with np.errstate(all="ignore"):
        # log((b + hyp) / a); the cubic factor tames the cancellation for
        # very negative b
        num = v_add(b, hyp)
        larg = v_div(num, ap)
        lg = v_log(larg)
        cube = v_mul(v_sqr(ap), ap)
        t1 = v_mul(v_mul(cube, _V_SIXTH), lg)
        t2 = v_mul(v_mul(v_mul(ap, b), _V_SIXTH), hyp)
        val = v_add(t1, t2)
    good = (ap[0] > 0.0) & (larg[0] > 0.0) & np.isfinite(val[0]) & np.isfinite(val[1])
    crude = _va_crude(a, b, hyp[1])
    lo = np.where(good, np.where(negate, -val[1], val[0]), crude[0])
    hi = np.where(good, np.where(negate, -val[0], val[1]), crude[1])
    return lo, hi


def v_A1_unit(h, root):
    """v_A1 specialized to the disk pattern (h, sqrt(1-h^2)), where the
    hypotenuse is exactly 1: h^3/6 * log((1+root)/|h|) + h*root/6."""
    negate = h[1] <= 0.0
    hp = (np.where(negate, -h[1], h[0]), np.where(negate, -h[0], h[1]))
    with np.errstate(all="ignore"):
        larg = v_div(v_add(_V_ONE, root), hp)
        lg = v_log(larg)
        cube = v_mul(v_sqr(hp), hp)
        t1 = v_mul(v_mul(cube, _V_SIXTH), lg)
        t2 = v_mul(v_mul(hp, root), _V_SIXTH)
        val = v_add(t1, t2)
    good = (hp[0] > 0.0) & (larg[0] > 0.0) & np.isfinite(val[0]) & np.isfinite(val[1])
    crude = _va_crude(h, root, _V_ONE[1])
    lo = np.where(good, np.where(negate, -val[1], val[0]), crude[0])
    hi = np.where(good, np.where(negate, -val[0], val[1]), crude[1])
    return lo, hi


def v_B_pair(h):
    """Disk-segment integrals (B0, B1) over {x <= h}: 0 below h = -1,
    (pi, 2pi/3) above h = 1, the sector + triangles formula between. Branch
    hulls keep the enclosure valid when h straddles a boundary."""
    has_low = h[0] < -1.0
    has_high = h[1] >= 1.0
    has_mid = (h[1] >= -1.0) & (h[0] < 1.0)

    c = (np.clip(h[0], -1.0, 1.0), np.clip(h[1], -1.0, 1.0))
    root = v_sqrt(v_sub(_V_ONE, v_sqr(c)))
    pma = v_sub(V_PI, v_arccos(c))  # pi - arccos h
    a0 = v_mul(v_mul(c, root), _V_HALF)
    a1 = v_A1_unit(c, root)
    b0_mid = v_add(pma, v_add(a0, a0))
    b1_mid = v_add(v_mul(_V_TWO_THIRDS, pma), v_add(a1, a1))

    shape = np.broadcast(h[0], h[1]).shape
    b0 = (np.full(shape, _INF), np.full(shape, -_INF))
    b1 = (np.full(shape, _INF), np.full(shape, -_INF))
    zero = (np.float64(0.0), np.float64(0.0))
    b0 = _hull_into(b0, has_low, zero)
    b1 = _hull_into(b1, has_low, zero)
    b0 = _hull_into(b0, has_mid, b0_mid)
    b1 = _hull_into(b1, has_mid, b1_mid)
    b0 = _hull_into(b0, has_high, V_PI)
    b1 = _hull_into(b1, has_high, _V_TWO_THIRDS_PI)
    return b0, b1


def v_C_pair(h1, h2):
    """Disk-corner integrals (C0, C1) over {x <= h1, y <= h2}: hull over the
    five-case piecewise formula (outside-disk sign cases via B, the inside
    case via the sector plus four triangles)."""
    s = v_add(v_sqr(h1), v_sqr(h2))
    outside = s[1] > 1.0
    m_empty = outside & (h1[0] <= 0.0) & (h2[0] <= 0.0)
    m_seg2 = outside & (h1[1] > 0.0) & (h2[0] <= 0.0)
    m_seg1 = outside & (h1[0] <= 0.0) & (h2[1] > 0.0)
    m_both = outside & (h1[1] > 0.0) & (h2[1] > 0.0)
    m_in = s[0] <= 1.0

    b0_h1, b1_h1 = v_B_pair(h1)
    b0_h2, b1_h2 = v_B_pair(h2)

    # inside-disk formula on arguments clamped to [-1, 1]
    c1 = (np.clip(h1[0], -1.0, 1.0), np.clip(h1[1], -1.0, 1.0))
    c2 = (np.clip(h2[0], -1.0, 1.0), np.clip(h2[1], -1.0, 1.0))
    root1 = v_sqrt(v_sub(_V_ONE, v_sqr(c1)))
    root2 = v_sqrt(v_sub(_V_ONE, v_sqr(c2)))
    ang = v_add(V_HALF_PI, v_add(v_arcsin(c1), v_arcsin(c2)))
    # A0(c1,root1) + A0(c2,root2) + A0(c1,c2) + A0(c2,c1); the last two
    # collapse to c1*c2
    a0_sum = v_add(
        v_mul(v_add(v_mul(c1, root1), v_mul(c2, root2)), _V_HALF),
        v_mul(c1, c2),
    )
    c0_in = v_add(v_mul(ang, _V_HALF), a0_sum)
    a1_sum = v_add(
        v_add(v_A1_unit(c1, root1), v_A1_unit(c2, root2)),
        v_add(v_A1(c1, c2), v_A1(c2, c1)),
    )
    c1_in = v_add(v_mul(ang, _V_THIRD), a1_sum)

    shape = np.broadcast(h1[0], h2[0]).shape
    C0 = (np.full(shape, _INF), np.full(shape, -_INF))
    C1 = (np.full(shape, _INF), np.full(shape, -_INF))
    zero = (np.float64(0.0), np.float64(0.0))
    C0 = _hull_into(C0, m_empty, zero)
    C1 = _hull_into(C1, m_empty, zero)
    C0 = _hull_into(C0, m_seg2, (b0_h2[0], b0_h2[1]))
    C1 = _hull_into(C1, m_seg2, (b1_h2[0], b1_h2[1]))
    C0 = _hull_into(C0, m_seg1, (b0_h1[0], b0_h1[1]))
    C1 = _hull_into(C1, m_seg1, (b1_h1[0], b1_h1[1]))
    C0 = _hull_into(C0, m_both, v_sub(v_add(b0_h1, b0_h2), V_PI))
    C1 = _hull_into(C1, m_both, v_sub(v_add(b1_h1, b1_h2), _V_TWO_THIRDS_PI))
    C0 = _hull_into(C0, m_in, c0_in)
    C1 = _hull_into(C1, m_in, c1_in)
    return C0, C1


def v_D_pair(a, b, R):
    """Normalized square-cap integrals (D0, D1): inclusion-exclusion of the
    four corner terms. R must be a positive interval."""
    x1 = v_div(v_sub(_V_ONE, a), R)
    x2 = v_div(v_neg(a), R)
    y1 = v_div(v_sub(_V_ONE, b), R)
    y2 = v_div(v_neg(b), R)
    c0_11, c1_11 = v_C_pair(x1, y1)
    c0_12, c1_12 = v_C_pair(x1, y2)
    c0_21, c1_21 = v_C_pair(x2, y1)
    c0_22, c1_22 = v_C_pair(x2, y2)
    d0 = v_add(v_sub(c0_11, c0_12), v_sub(c0_22, c0_21))
    d1 = v_add(v_sub(c1_11, c1_12), v_sub(c1_22, c1_21))
    return d0, d1


def v_g1(a, b):
    """Expected depot-to-uniform-point distance: eight triangle terms."""
    one_m_a = v_sub(_V_ONE, a)
    one_m_b = v_sub(_V_ONE, b)
    total = v_A1(a, b)
    for (p, q) in (
        (b, a), (b, one_m_a), (one_m_a, b), (one_m_a, one_m_b),
        (one_m_b, one_m_a), (one_m_b, a), (a, one_m_b),
    ):
        total = v_add(total, v_A1(p, q))
    return total


def v_g_all(a, b):
    """(g1, g2, g3) enclosures; R = (3/4) g1 is threaded through as an
    interval."""
    g1 = v_g1(a, b)
    R = v_mul(g1, _V_THREE_QUARTERS)
    d0, d1 = v_D_pair(a, b, R)
    r2 = v_sqr(R)
    r3 = v_mul(r2, R)
    g2 = v_add(v_sub(R, v_mul(r3, d0)), v_mul(r3, d1))
    g3 = v_sub(_V_ONE, v_mul(r2, d0))
    return g1, g2, g3


# --- scalar facade -------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Closed enclosure [lo, hi] of a real number."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def _wrap(pair) -> Interval:
    return Interval(float(pair[0]), float(pair[1]))


def iv_point(x: float) -> Interval:
    return Interval(x, x)


def iv_ratio(p: int, q: int) -> Interval:
    """Enclosure of the exact rational p/q."""
    if q == 0:
        raise ZeroDivisionError("zero denominator")
    return _wrap(_ratio_const(p, q))


def iv_pi() -> Interval:
    return Interval(PI_LO, PI_HI)


def iv_add(x: Interval, y: Interval) -> Interval:
    return _wrap(v_add((x.lo, x.hi), (y.lo, y.hi)))


def iv_sub(x: Interval, y: Interval) -> Interval:
    return _wrap(v_sub((x.lo, x.hi), (y.lo, y.hi)))


def iv_mul(x: Interval, y: Interval) -> Interval:
    return _wrap(v_mul((x.lo, x.hi), (y.lo, y.hi)))


def iv_div(x: Interval, y: Interval) -> Interval:
    if y.lo <= 0.0 <= y.hi:
        raise ZeroDivisionError(f"divisor interval [{y.lo}, {y.hi}] contains zero")
    return _wrap(v_div((x.lo, x.hi), (y.lo, y.hi)))


def iv_neg(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def iv_min(x: Interval, y: Interval) -> Interval:
    return _wrap(v_min((x.lo, x.hi), (y.lo, y.hi)))


def iv_max(x: Interval, y: Interval) -> Interval:
    return _wrap(v_max((x.lo, x.hi), (y.lo, y.hi)))


def iv_abs(x: Interval) -> Interval:
    return _wrap(v_abs((x.lo, x.hi)))


def iv_sqrt(x: Interval) -> Interval:
    if x.hi < 0.0:
        raise ValueError(f"sqrt of negative interval [{x.lo}, {x.hi}]")
    return _wrap(v_sqrt((x.lo, x.hi)))


def iv_log(x: Interval) -> Interval:
    if x.lo <= 0.0:
        raise ValueError(f"log of nonpositive interval [{x.lo}, {x.hi}]")
    return _wrap(v_log((x.lo, x.hi)))


def _check_unit_domain(x: Interval, name: str) -> None:
    if x.lo < -1.0 - _DOMAIN_SLOP or x.hi > 1.0 + _DOMAIN_SLOP:
        raise ValueError(f"{name} argument [{x.lo}, {x.hi}] outside [-1, 1]")


def iv_arccos(x: Interval) -> Interval:
    _check_unit_domain(x, "arccos")
    return _wrap(v_arccos((x.lo, x.hi)))


def iv_arcsin(x: Interval) -> Interval:
    _check_unit_domain(x, "arcsin")
    return _wrap(v_arcsin((x.lo, x.hi)))


def iv_g(j: int, a: float, b: float) -> Interval:
    """Enclosure of g_j at the depot (a, b), j in {1, 2, 3}."""
    if j not in (1, 2, 3):
        raise ValueError(f"j must be 1, 2 or 3, got {j}")
    g1, g2, g3 = v_g_all(v_point(np.float64(a)), v_point(np.float64(b)))
    return _wrap((g1, g2, g3)[j - 1])
