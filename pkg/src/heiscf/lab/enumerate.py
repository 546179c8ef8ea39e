"""Enumeration of rational points of the Siegel model.

Two routes are kept deliberately separate: a structured enumeration that
solves the linear relation |r|^2 = 2(ac + bd) for the p coordinate, and
a naive triple loop used as its oracle.  Both count points (q : r : p)
with |q|^2 = m whose planar coordinates lie in a box region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..gaussian import GaussInt, gi_gcd
from ..siegel import ProjIntPoint

__all__ = [
    "Region",
    "RationalEnumeration",
    "kprime_region",
    "enumerate_rationals_qnorm",
    "enumerate_rationals_naive",
    "qnorm_representations",
    "solve_p_line",
]


@dataclass(frozen=True)
class Region:
    """Origin-centered box |u|^2 <= u_sq, |v|^2 <= v_sq (exact bounds)."""

    u_sq: Fraction
    v_sq: Fraction


def kprime_region(delta: float = 0.0) -> Region:
    """A box containing every point within gauge distance delta of K_D.

    K_D satisfies |u| <= 2^(1/4), |v| <= 2^(-1/2); translating by a group
    element of norm <= delta moves u by at most sqrt(2) delta and v by at
    most 2^(1/4) sqrt(2) delta + delta^2.
    """
    u_bound = 2**0.25 + math.sqrt(2) * delta
    v_bound = 2**-0.5 + 2**0.25 * math.sqrt(2) * delta + delta * delta
    pad = Fraction(1, 1000)
    return Region(
        Fraction(u_bound * u_bound).limit_denominator(10**6) + pad,
        Fraction(v_bound * v_bound).limit_denominator(10**6) + pad,
    )


@dataclass
class RationalEnumeration:
    m: int
    region: Region
    lowest_terms: bool
    points: list[tuple[GaussInt, GaussInt, GaussInt]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.points)

    def reduced_points(self) -> list[ProjIntPoint]:
        return [ProjIntPoint.reduced(*t) for t in self.points]


def qnorm_representations(m: int) -> list[GaussInt]:
    """All Gaussian integers q with |q|^2 = m."""
    out = []
    a = -math.isqrt(m)
    while a <= math.isqrt(m):
        rest = m - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            out.append(GaussInt(a, b))
            if b != 0:
                out.append(GaussInt(a, -b))
        a += 1
    return out


def solve_p_line(
    a: int, b: int, s: int, p_norm_max: int
) -> list[tuple[int, int]]:
    """Integer solutions (c, d) of a c + b d = s with c^2 + d^2 <= p_norm_max.

    Solutions, when they exist, form a line c = c0 - (b/g) t, d = d0 + (a/g) t;
    only the segment meeting the disk is walked.
    """
    g = math.gcd(a, b)
    if g == 0:
        raise ValueError("q must be nonzero")
    if s % g != 0:
        return []
    # particular solution via extended gcd (sign-normalized: a x + b y = g > 0)
    x, y = _ext_gcd(a, b)
    if a * x + b * y < 0:
        x, y = -x, -y
    c0 = x * (s // g)
    d0 = y * (s // g)
    db, da = -(b // g), a // g  # step per unit t
    # walk t over the window where c^2 + d^2 can stay within the disk
    step_sq = db * db + da * da
    # project the current point onto the line direction to center the window
    t_center = -(c0 * db + d0 * da) / step_sq
    t_half = math.isqrt(4 * p_norm_max // step_sq) + 2
    out = []
    for t in range(math.floor(t_center) - t_half, math.floor(t_center) + t_half + 1):
        c = c0 + db * t
        d = d0 + da * t
        if c * c + d * d <= p_norm_max:
            out.append((c, d))
    return out


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_x, old_y


def _canonical_unit_triple(q: GaussInt, r: GaussInt, p: GaussInt):
    from ..gaussian import canonical_associate

    _, u = canonical_associate(q)
    return (u * q, u * r, u * p)


def enumerate_rationals_qnorm(
    m: int, region: Region, lowest_terms: bool = True
) -> RationalEnumeration:
    """Structured enumeration of triples (q : r : p), |q|^2 = m, in the region.

    For each q = a+bi and each admissible r, the p coordinate is read off
    the line a c + b d = |r|^2 / 2 intersected with the |p| disk.  Unit
    multiples are folded into a canonical representative.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    r_norm_max = _floor_frac(m * region.u_sq)
    p_norm_max = _floor_frac(m * region.v_sq)
    seen = set()
    points = []
    for q in qnorm_representations(m):
        a, b = q.re, q.im
        for r in _gauss_ints_in_disk(r_norm_max):
            rn = r.norm()
            if rn % 2 != 0:
                continue
            for c, d in solve_p_line(a, b, rn // 2, p_norm_max):
                p = GaussInt(c, d)
                trip = _canonical_unit_triple(q, r, p)
                if lowest_terms and not _triple_coprime(*trip):
                    continue
                if trip not in seen:
                    seen.add(trip)
                    points.append(trip)
    points.sort(key=_trip_key)
    return RationalEnumeration(m, region, lowest_terms, points)


def enumerate_rationals_naive(
    m: int, region: Region, lowest_terms: bool = True
) -> RationalEnumeration:
    """Naive oracle: full loop over (r, p) pairs with the constraint checked.

    Vectorized with numpy but logically a triple loop.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    r_norm_max = _floor_frac(m * region.u_sq)
    p_norm_max = _floor_frac(m * region.v_sq)
    rs = [g for g in _gauss_ints_in_disk(r_norm_max)]
    ps = [g for g in _gauss_ints_in_disk(p_norm_max)]
    r_norm = np.array([g.norm() for g in rs], dtype=np.int64)
    pc = np.array([g.re for g in ps], dtype=np.int64)
    pd = np.array([g.im for g in ps], dtype=np.int64)
    seen = set()
    points = []
    for q in qnorm_representations(m):
        a, b = q.re, q.im
        # |r|^2 == 2 Re(conj(q) p) == 2 (a c + b d)
        rhs = 2 * (a * pc + b * pd)
        match = r_norm[:, None] == rhs[None, :]
        for ri, pi in zip(*np.nonzero(match)):
            trip = _canonical_unit_triple(q, rs[ri], ps[pi])
            if lowest_terms and not _triple_coprime(*trip):
                continue
            if trip not in seen:
                seen.add(trip)
                points.append(trip)
    points.sort(key=_trip_key)
    return RationalEnumeration(m, region, lowest_terms, points)


def _trip_key(t):
    return tuple((g.re, g.im) for g in t)


def _triple_coprime(q: GaussInt, r: GaussInt, p: GaussInt) -> bool:
    g = q
    for x in (r, p):
        if not x.is_zero():
            g = gi_gcd(g, x)
        if g.is_unit():
            return True
    return g.is_unit()


def _gauss_ints_in_disk(norm_max: int):
    amax = math.isqrt(norm_max) if norm_max >= 0 else -1
    for a in range(-amax, amax + 1):
        bmax = math.isqrt(norm_max - a * a)
        for b in range(-bmax, bmax + 1):
            yield GaussInt(a, b)


def _floor_frac(x: Fraction) -> int:
    return int(math.floor(x))
