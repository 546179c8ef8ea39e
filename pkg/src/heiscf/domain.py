"""Fundamental domains and the certified nearest-integer map.

Only the Dirichlet domain is shipped: the set of points whose nearest
integer point is the origin, with radius 2^(-1/4).  The abstract base
keeps the door open for other domains satisfying the same tiling and
radius conditions.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from fractions import Fraction

from mpmath import mp, mpf

from .errors import AmbiguousNearestInteger
from .gaussian import GaussInt
from .siegel import IntegerPoint, SiegelPoint

__all__ = [
    "Domain",
    "DirichletDomain",
    "integer_point",
    "rk_constant",
]


def integer_point(a: int, b: int, c: int) -> IntegerPoint:
    """The integer Siegel point with u = a+bi (a = b mod 2) and Im(v) = c."""
    if (a + b) % 2 != 0:
        raise ValueError("a and b must have equal parity")
    return IntegerPoint(GaussInt(a, b), GaussInt((a * a + b * b) // 2, c))


class Domain(ABC):
    """A fundamental domain for S under left-translation by S(Z)."""

    @abstractmethod
    def contains(self, h: SiegelPoint) -> bool: ...

    @abstractmethod
    def radius(self) -> float: ...

    @abstractmethod
    def nearest(self, h: SiegelPoint) -> IntegerPoint: ...


# Any minimizer gamma has d(gamma, h)^4 <= rad^4 = 1/2, forcing
# |u - u_gamma|^2 <= sqrt(2); 8/5 adds slack for the big-float backend.
_U_DIST_SQ_BOUND = Fraction(8, 5)
_U_COORD_SLACK = Fraction(13, 10)


class DirichletDomain(Domain):
    """The Dirichlet fundamental domain K_D with certified nearest map.

    Ties on the boundary break toward the lexicographically smallest
    (Re u, Im u, Im v) candidate; on the big-float backend candidates
    closer than the certification tolerance trigger precision escalation
    and finally an AmbiguousNearestInteger error.
    """

    name = "dirichlet"

    def radius(self) -> float:
        return 2.0 ** -0.25

    def radius_pow4(self) -> Fraction:
        return Fraction(1, 2)

    def contains(self, h: SiegelPoint) -> bool:
        return self.nearest(h).is_origin()

    def nearest(self, h: SiegelPoint) -> IntegerPoint:
        if h.exact:
            return self._nearest_exact(h)
        return self._nearest_bigfloat(h)

    # -- exact backend ------------------------------------------------------

    def _nearest_exact(self, h: SiegelPoint) -> IntegerPoint:
        ure, uim = h.u.re(), h.u.im()
        vim = h.v.im()
        best = None
        for a, b in _u_candidates_exact(ure, uim):
            du_sq = (ure - a) ** 2 + (uim - b) ** 2
            # Im(v - conj(u_gamma) u) = Im v - (a*Im u - b*Re u)
            delta = vim - (a * uim - b * ure)
            for c in _int_candidates(delta):
                d4 = (du_sq / 2) ** 2 + (delta - c) ** 2
                key = (d4, a, b, c)
                if best is None or key < best:
                    best = key
        _, a, b, c = best
        return integer_point(a, b, c)

    # -- big-float backend --------------------------------------------------

    def _nearest_bigfloat(self, h: SiegelPoint) -> IntegerPoint:
        ctx = h.ctx
        tol = ctx.check_scale
        with ctx.work():
            tol = tol * max(mpf(1), abs(h.v))
        bits = ctx.bits
        for _ in range(5):
            ranked = self._ranked_candidates(h, bits)
            if len(ranked) == 1 or ranked[1][0] - ranked[0][0] >= tol:
                _, a, b, c = ranked[0]
                return integer_point(a, b, c)
            bits *= 2
        raise AmbiguousNearestInteger(
            "nearest integer ambiguous at working precision"
        )

    def _ranked_candidates(self, h: SiegelPoint, bits: int):
        with mp.workprec(bits):
            ure, uim = h.u.real, h.u.imag
            vim = h.v.imag
            cands = []
            for a in _int_range(ure, _U_COORD_SLACK):
                for b in _int_range(uim, _U_COORD_SLACK):
                    if (a + b) % 2 != 0:
                        continue
                    du_sq = (ure - a) ** 2 + (uim - b) ** 2
                    if du_sq > float(_U_DIST_SQ_BOUND):
                        continue
                    delta = vim - (a * uim - b * ure)
                    for c in {int(mp.floor(delta)), int(mp.ceil(delta))}:
                        d4 = (du_sq / 2) ** 2 + (delta - c) ** 2
                        cands.append((d4, a, b, c))
            cands.sort(key=lambda t: (t[0], t[1:]))
            return cands


def _int_candidates(delta: Fraction) -> list[int]:
    lo = math.floor(delta)
    return [lo] if delta == lo else [lo, lo + 1]


def _u_candidates_exact(ure: Fraction, uim: Fraction):
    for a in range(math.ceil(ure - _U_COORD_SLACK), math.floor(ure + _U_COORD_SLACK) + 1):
        for b in range(
            math.ceil(uim - _U_COORD_SLACK), math.floor(uim + _U_COORD_SLACK) + 1
        ):
            if (a + b) % 2 != 0:
                continue
            if (ure - a) ** 2 + (uim - b) ** 2 <= _U_DIST_SQ_BOUND:
                yield a, b


def _int_range(x, slack: Fraction):
    xf = float(x)
    return range(math.ceil(xf - float(slack)), math.floor(xf + float(slack)) + 1)


def rk_constant(rad: float, tol: float = 1e-9) -> float:
    """The infinite product prod_{n>=1} (1 + rad^n)^2 within tol.

    Truncated when the remaining factor, bounded by
    exp(2 rad^(N+1) / (1 - rad)), contributes less than tol.
    """
    if rad < 0:
        raise ValueError("rad must be non-negative")
    if rad >= 1:
        raise ValueError("divergent product: rad >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if rad == 0:
        return 1.0
    with mp.workprec(96):
        r = mpf(rad)
        prod = mpf(1)
        rn = mpf(1)
        n = 0
        while True:
            n += 1
            rn *= r
            prod *= (1 + rn) ** 2
            tail = mp.exp(2 * rn * r / (1 - r)) - 1
            if prod * tail < tol:
                return float(prod)
            if n > 100000:
                raise RuntimeError("rk_constant failed to converge")
