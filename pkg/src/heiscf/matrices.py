"""The matrix model of Heisenberg Moebius maps.

Matrices in U(2,1; Z[i]) act on the projective Siegel model.  The
inversion matrix J realizes the Koranyi inversion, lower-triangular
translation matrices realize left multiplication, and products of digit
matrices accumulate the continuants whose columns are the convergents.
All entries stay exact Gaussian integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInU21, PointAtInfinity
from .gaussian import GaussInt, GaussRat, format_gauss_int
from .siegel import IntegerPoint, ProjIntPoint, SiegelPoint

__all__ = [
    "UMatrix",
    "matrix_J",
    "identity_matrix",
    "translation_matrix",
    "digit_matrix",
    "mat_mul",
    "mat_apply",
    "mat_apply_triple",
    "u21_check",
    "u21_inverse",
]

_ZERO = GaussInt(0, 0)
_ONE = GaussInt(1, 0)


@dataclass(frozen=True)
class UMatrix:
    """A 3x3 Gaussian-integer matrix, row-major."""

    rows: tuple[
        tuple[GaussInt, GaussInt, GaussInt],
        tuple[GaussInt, GaussInt, GaussInt],
        tuple[GaussInt, GaussInt, GaussInt],
    ]

    def entry(self, i: int, j: int) -> GaussInt:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[GaussInt, GaussInt, GaussInt]:
        return (self.rows[0][j], self.rows[1][j], self.rows[2][j])

    def dagger(self) -> "UMatrix":
        return UMatrix(
            tuple(
                tuple(self.rows[j][i].conj() for j in range(3)) for i in range(3)
            )
        )

    def __str__(self) -> str:
        return (
            "["
            + ",".join(
                "[" + ",".join(format_gauss_int(e) for e in row) + "]"
                for row in self.rows
            )
            + "]"
        )


def _mat(entries) -> UMatrix:
    return UMatrix(tuple(tuple(row) for row in entries))


IDENTITY = _mat(
    [[_ONE, _ZERO, _ZERO], [_ZERO, _ONE, _ZERO], [_ZERO, _ZERO, _ONE]]
)

J = _mat(
    [[_ZERO, _ZERO, -_ONE], [_ZERO, _ONE, _ZERO], [-_ONE, _ZERO, _ZERO]]
)


def identity_matrix() -> UMatrix:
    return IDENTITY


def matrix_J() -> UMatrix:
    """The inversion matrix; applying it equals the Koranyi inversion."""
    return J


def translation_matrix(gamma: IntegerPoint) -> UMatrix:
    """Lower-triangular matrix realizing left multiplication by gamma."""
    u, v = gamma.u, gamma.v
    return _mat(
        [[_ONE, _ZERO, _ZERO], [u, _ONE, _ZERO], [v, u.conj(), _ONE]]
    )


def digit_matrix(gamma: IntegerPoint) -> UMatrix:
    """A_gamma = J * T_gamma."""
    return mat_mul(J, translation_matrix(gamma))


def mat_mul(m1: UMatrix, m2: UMatrix) -> UMatrix:
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = _ZERO
            for k in range(3):
                acc = acc + m1.rows[i][k] * m2.rows[k][j]
            row.append(acc)
        out.append(row)
    return _mat(out)


def mat_apply_triple(
    m: UMatrix, triple: tuple[GaussInt, GaussInt, GaussInt]
) -> tuple[GaussInt, GaussInt, GaussInt]:
    """Apply m to a raw integer triple (no reduction)."""
    return tuple(
        m.rows[i][0] * triple[0] + m.rows[i][1] * triple[1] + m.rows[i][2] * triple[2]
        for i in range(3)
    )


def mat_apply(m: UMatrix, h):
    """Projective action on a point; kind of output matches kind of input.

    ProjIntPoint -> ProjIntPoint (reduced); SiegelPoint -> SiegelPoint.
    """
    if isinstance(h, ProjIntPoint):
        q, r, p = mat_apply_triple(m, (h.q, h.r, h.p))
        return ProjIntPoint.reduced(q, r, p)
    if isinstance(h, SiegelPoint):
        if h.exact:
            one = GaussRat.from_int(_ONE)
            col = (one, h.u, h.v)
            out = []
            for i in range(3):
                acc = GaussRat.from_int(_ZERO)
                for k in range(3):
                    acc = acc + GaussRat.from_int(m.rows[i][k]) * col[k]
                out.append(acc)
            if out[0].is_zero():
                raise PointAtInfinity("matrix image at infinity")
            return SiegelPoint(out[1] / out[0], out[2] / out[0])
        from mpmath import mpc

        with h.ctx.work():
            col = (mpc(1), h.u, h.v)
            out = []
            for i in range(3):
                acc = mpc(0)
                for k in range(3):
                    e = m.rows[i][k]
                    acc += mpc(e.re, e.im) * col[k]
                out.append(acc)
            if out[0] == 0:
                raise PointAtInfinity("matrix image at infinity")
            return SiegelPoint(out[1] / out[0], out[2] / out[0], h.ctx)
    raise TypeError(f"cannot apply matrix to {type(h).__name__}")


def u21_check(m: UMatrix) -> bool:
    """Membership in U(2,1; Z[i]): J m^dag J m = identity."""
    return mat_mul(mat_mul(mat_mul(J, m.dagger()), J), m) == IDENTITY


def u21_inverse(m: UMatrix) -> UMatrix:
    """Inverse via m^(-1) = J m^dag J; requires membership."""
    if not u21_check(m):
        raise NotInU21("matrix is not in U(2,1; Z[i])")
    return mat_mul(mat_mul(J, m.dagger()), J)
