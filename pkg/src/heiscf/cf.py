"""Continued-fraction expansion on the Siegel model.

Implements the Gauss-map orbit, the digit sequence, the continuant
matrices accumulated as products of digit matrices, the convergents, and
the tail convergents used by the relative-size machinery.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .domain import DirichletDomain, Domain
from .errors import CertificationError, InternalError, InvalidDigitString
from .gaussian import GaussInt
from .matrices import (
    UMatrix,
    digit_matrix,
    identity_matrix,
    mat_apply_triple,
    mat_mul,
    translation_matrix,
)
from .siegel import (
    IntegerPoint,
    PrecisionContext,
    ProjIntPoint,
    SiegelPoint,
    group_mul,
    koranyi_inversion,
    planar_to_proj,
)

__all__ = [
    "CFExpansion",
    "gauss_map_step",
    "expand",
    "reconstruct",
    "tail_convergents",
    "expansion_to_json",
]

_E1 = (GaussInt(1, 0), GaussInt(0, 0), GaussInt(0, 0))


def gauss_map_step(
    h: SiegelPoint, K: Optional[Domain] = None
) -> tuple[IntegerPoint, SiegelPoint]:
    """One Gauss-map step: digit [iota h] and next iterate [iota h]^-1 * iota h.

    The origin is a fixed point and yields the zero digit.
    """
    K = K or DirichletDomain()
    if h.is_origin():
        return IntegerPoint.origin(), h
    ih = koranyi_inversion(h)
    gamma = K.nearest(ih)
    h_next = group_mul(gamma.inv().to_siegel(h.ctx), ih)
    return gamma, h_next


@dataclass
class CFExpansion:
    """Digits, iterates, continuants and convergents of one expansion."""

    point: SiegelPoint
    gamma0: IntegerPoint
    digits: list[IntegerPoint]
    iterates: list[SiegelPoint]  # h_0 .. h_n
    continuants: list[UMatrix]  # Q_0 .. Q_n
    terminated: bool
    max_depth_hit: bool = False
    ctx: Optional[PrecisionContext] = None
    _t_gamma0: UMatrix = field(default=None, repr=False)

    def __post_init__(self):
        if self._t_gamma0 is None:
            self._t_gamma0 = translation_matrix(self.gamma0)

    @property
    def depth(self) -> int:
        return len(self.digits)

    def _check_index(self, n: int) -> None:
        if not 0 <= n <= self.depth:
            raise IndexError(f"index {n} out of range 0..{self.depth}")

    def first_column(self, n: int) -> tuple[GaussInt, GaussInt, GaussInt]:
        """(q_n, r_n, p_n), unreduced continuant entries (no gamma_0 shift)."""
        self._check_index(n)
        return self.continuants[n].column(0)

    def second_column(self, n: int) -> tuple[GaussInt, GaussInt, GaussInt]:
        """(q~_n, r~_n, p~_n), the middle continuant column."""
        self._check_index(n)
        return self.continuants[n].column(1)

    def third_column(self, n: int) -> tuple[GaussInt, GaussInt, GaussInt]:
        self._check_index(n)
        return self.continuants[n].column(2)

    def raw_convergent_triple(self, n: int) -> tuple[GaussInt, GaussInt, GaussInt]:
        """T_gamma0 . Q_n . (1:0:0) without reduction; q entry matches first_column."""
        self._check_index(n)
        return mat_apply_triple(self._t_gamma0, self.first_column(n))

    def convergent(self, n: int) -> ProjIntPoint:
        """The nth convergent as a reduced projective triple."""
        return ProjIntPoint.reduced(*self.raw_convergent_triple(n))

    def convergents(self) -> list[ProjIntPoint]:
        return [self.convergent(n) for n in range(self.depth + 1)]


def expand(
    h: SiegelPoint,
    K: Optional[Domain] = None,
    max_depth: Optional[int] = None,
) -> CFExpansion:
    """Expand h into continued-fraction digits.

    Exact backend: runs to termination (rational points always terminate)
    unless max_depth cuts it short; a generous internal guard converts
    non-termination into an InternalError.  Big-float backend: produces
    max_depth certified digits or raises CertificationError.
    """
    K = K or DirichletDomain()
    if max_depth is not None and max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    guard = None
    if h.exact:
        if max_depth is None:
            qnorm = planar_to_proj(h).q.norm()
            guard = 4 * qnorm.bit_length() + 64
    elif max_depth is None:
        raise ValueError("max_depth is required on the big-float backend")

    gamma0 = K.nearest(h)
    h0 = group_mul(gamma0.inv().to_siegel(h.ctx), h)

    digits: list[IntegerPoint] = []
    iterates = [h0]
    continuants = [identity_matrix()]
    terminated = h0.is_origin()
    max_depth_hit = False
    limit = max_depth if max_depth is not None else guard

    cur = h0
    while not terminated:
        if len(digits) >= limit:
            if max_depth is None:
                raise InternalError(
                    "rational expansion exceeded the termination guard"
                )
            max_depth_hit = True
            break
        if not cur.exact:
            with cur.ctx.work():
                if abs(cur.v) < 4 * cur.ctx.check_scale:
                    raise CertificationError(
                        "orbit too close to the origin to certify inversion"
                    )
        gamma, nxt = gauss_map_step(cur, K)
        digits.append(gamma)
        continuants.append(mat_mul(continuants[-1], digit_matrix(gamma)))
        iterates.append(nxt)
        cur = nxt
        terminated = cur.exact and cur.is_origin()

    return CFExpansion(
        point=h,
        gamma0=gamma0,
        digits=digits,
        iterates=iterates,
        continuants=continuants,
        terminated=terminated,
        max_depth_hit=max_depth_hit,
        ctx=h.ctx,
    )


def reconstruct(gamma0: IntegerPoint, digits: list[IntegerPoint]) -> SiegelPoint:
    """Exact rational point gamma0 * iota(gamma_1 * iota(... gamma_n))."""
    w = SiegelPoint.origin()
    for gamma in reversed(digits):
        gw = group_mul(gamma.to_siegel(), w)
        if gw.v.is_zero():
            raise InvalidDigitString(
                "invalid digit string: intermediate point has v = 0"
            )
        w = koranyi_inversion(gw)
    return group_mul(gamma0.to_siegel(), w)


def tail_convergents(
    e: CFExpansion, i: int, n: int
) -> tuple[GaussInt, GaussInt, GaussInt]:
    """The triple A_{gamma_{i+1}} ... A_{gamma_n} (1:0:0), unreduced.

    Satisfies q^(i)_n = -p^(i-1)_n and equals the full (q_n, r_n, p_n)
    at i = 0.
    """
    if not 0 <= i <= n <= e.depth:
        raise IndexError(f"need 0 <= i <= n <= {e.depth}, got i={i}, n={n}")
    m = identity_matrix()
    for k in range(i, n):
        m = mat_mul(m, digit_matrix(e.digits[k]))
    return mat_apply_triple(m, _E1)


def expansion_to_json(e: CFExpansion) -> str:
    """One-line JSON fixture record for an expansion."""
    rec = {
        "point": str(e.point),
        "gamma0": str(e.gamma0),
        "digits": [str(g) for g in e.digits],
        "convergents": [str(c) for c in e.convergents()],
        "terminated": e.terminated,
        "backend": "exact" if e.ctx is None else "bigfloat",
        "bits": None if e.ctx is None else e.ctx.bits,
    }
    return json.dumps(rec, separators=(",", ":"))
