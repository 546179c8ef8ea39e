"""The Heisenberg group in the planar and projective Siegel models.

Points live on the surface |u|^2 = 2 Re(v) in C^2.  Two numeric backends
are supported: exact Gaussian-rational coordinates (rational points,
exact identities) and arbitrary-precision big floats with an explicit
precision context (everything else).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from mpmath import mp, mpc, mpf

from .errors import (
    BackendMismatch,
    InversionAtOrigin,
    ParseError,
    PointAtInfinity,
)
from .gaussian import (
    GaussInt,
    GaussRat,
    RAT_ZERO,
    format_gauss_int,
    parse_complex_rational,
    reduce_triple,
)

__all__ = [
    "PrecisionContext",
    "HeisPoint",
    "SiegelPoint",
    "IntegerPoint",
    "ProjIntPoint",
    "from_heis",
    "to_heis",
    "group_mul",
    "group_inv",
    "koranyi_inversion",
    "gauge_norm",
    "gauge_norm_pow4",
    "distance",
    "distance_pow4",
    "proj_to_planar",
    "planar_to_proj",
    "is_integer_point",
]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for the big-float backend.

    All operations within one computation share the same context; the
    derived check_scale 2^(-bits/2) is the tolerance unit for constraint
    and identity checks.
    """

    bits: int = 256

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("bits must be >= 64")

    def work(self):
        return mp.workprec(self.bits)

    @property
    def check_scale(self) -> mpf:
        with mp.workprec(self.bits):
            return mpf(2) ** (-self.bits / 2)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(self.bits * 2)


ExactComplex = GaussRat
BigComplex = mpc


def _rat_to_mpc(x: GaussRat, ctx: PrecisionContext) -> mpc:
    with ctx.work():
        re = mpf(x.re().numerator) / x.re().denominator
        im = mpf(x.im().numerator) / x.im().denominator
        return mpc(re, im)


@dataclass(frozen=True)
class HeisPoint:
    """A point (z, t) of the Heisenberg group C x R."""

    z: Union[GaussRat, mpc]
    t: Union[Fraction, mpf]
    ctx: Optional[PrecisionContext] = None

    @property
    def exact(self) -> bool:
        return self.ctx is None

    def __str__(self) -> str:
        if self.exact:
            return f"heis({self.z}; {self.t})"
        return f"heis({_fmt_mpc(self.z, self.ctx)}; {_fmt_mpf(self.t, self.ctx)})"


@dataclass(frozen=True)
class SiegelPoint:
    """A point (u, v) of the Siegel model.

    Exact backend: GaussRat coordinates with |u|^2 = 2 Re(v) exactly.
    Big-float backend: mpc coordinates, constraint held to
    8 * check_scale * max(1, |v|).
    """

    u: Union[GaussRat, mpc]
    v: Union[GaussRat, mpc]
    ctx: Optional[PrecisionContext] = None

    def __post_init__(self):
        if self.ctx is None:
            if self.u.abs_sq() != 2 * self.v.re():
                raise ValueError(
                    f"not on the Siegel surface: |u|^2 != 2 Re v for ({self.u}; {self.v})"
                )
        else:
            with self.ctx.work():
                resid = abs(abs(self.u) ** 2 - 2 * self.v.real)
                bound = 8 * self.ctx.check_scale * max(mpf(1), abs(self.v))
                if resid > bound:
                    raise ValueError("Siegel constraint violated beyond tolerance")

    @property
    def exact(self) -> bool:
        return self.ctx is None

    @staticmethod
    def origin(ctx: Optional[PrecisionContext] = None) -> "SiegelPoint":
        if ctx is None:
            return SiegelPoint(RAT_ZERO, RAT_ZERO)
        with ctx.work():
            return SiegelPoint(mpc(0), mpc(0), ctx)

    @staticmethod
    def exact_rational(u: GaussRat, v: GaussRat) -> "SiegelPoint":
        return SiegelPoint(u, v)

    def is_origin(self) -> bool:
        if self.exact:
            return self.u.is_zero() and self.v.is_zero()
        return self.u == 0 and self.v == 0

    def to_bigfloat(self, ctx: PrecisionContext) -> "SiegelPoint":
        if not self.exact:
            if self.ctx == ctx:
                return self
            with ctx.work():
                return SiegelPoint(mpc(self.u), mpc(self.v), ctx)
        return SiegelPoint(_rat_to_mpc(self.u, ctx), _rat_to_mpc(self.v, ctx), ctx)

    def __str__(self) -> str:
        if self.exact:
            return f"({self.u}; {self.v})"
        return f"({_fmt_mpc(self.u, self.ctx)}; {_fmt_mpc(self.v, self.ctx)})"


def _fmt_mpf(x: mpf, ctx: PrecisionContext) -> str:
    digits = int(ctx.bits * 0.3011) + 2
    return mp.nstr(x, digits)


def _fmt_mpc(x: mpc, ctx: PrecisionContext) -> str:
    digits = int(ctx.bits * 0.3011) + 2
    re_s = mp.nstr(x.real, digits)
    im = x.imag
    if im == 0:
        return re_s
    im_s = mp.nstr(abs(im), digits)
    sign = "+" if im >= 0 else "-"
    return f"{re_s}{sign}{im_s}i"


def _check_same_backend(h1: SiegelPoint, h2: SiegelPoint) -> None:
    if h1.exact != h2.exact or (not h1.exact and h1.ctx != h2.ctx):
        raise BackendMismatch("points use different numeric backends")


# ---------------------------------------------------------------------------
# Heis <-> Siegel


_ONE_PLUS_I = GaussRat.from_int(GaussInt(1, 1))


def from_heis(h: HeisPoint) -> SiegelPoint:
    """(z, t) -> (z(1+i), |z|^2 + t i); satisfies the constraint by construction."""
    if h.exact:
        u = h.z * _ONE_PLUS_I
        v = GaussRat.from_fractions(h.z.abs_sq(), h.t)
        return SiegelPoint(u, v)
    ctx = h.ctx
    with ctx.work():
        u = h.z * mpc(1, 1)
        v = mpc(abs(h.z) ** 2, h.t)
        return SiegelPoint(u, v, ctx)


def to_heis(h: SiegelPoint) -> HeisPoint:
    """Inverse of from_heis: z = u/(1+i), t = Im(v)."""
    if h.exact:
        return HeisPoint(h.u / _ONE_PLUS_I, h.v.im())
    with h.ctx.work():
        return HeisPoint(h.u / mpc(1, 1), h.v.imag, h.ctx)


# ---------------------------------------------------------------------------
# Group operations


def group_mul(h1: SiegelPoint, h2: SiegelPoint) -> SiegelPoint:
    """Heisenberg product (u1+u2, v1 + conj(u1) u2 + v2)."""
    _check_same_backend(h1, h2)
    if h1.exact:
        return SiegelPoint(h1.u + h2.u, h1.v + h1.u.conj() * h2.u + h2.v)
    with h1.ctx.work():
        return SiegelPoint(
            h1.u + h2.u, h1.v + h1.u.conjugate() * h2.u + h2.v, h1.ctx
        )


def group_inv(h: SiegelPoint) -> SiegelPoint:
    """(u, v)^(-1) = (-u, conj(v))."""
    if h.exact:
        return SiegelPoint(-h.u, h.v.conj())
    with h.ctx.work():
        return SiegelPoint(-h.u, h.v.conjugate(), h.ctx)


def koranyi_inversion(h: SiegelPoint) -> SiegelPoint:
    """iota(u, v) = (-u/v, 1/v); involutive away from v = 0.

    On the big-float backend the real part of 1/v is re-projected onto the
    constraint surface to stop drift across deep orbits.
    """
    if h.exact:
        if h.v.is_zero():
            raise InversionAtOrigin("inversion at origin")
        return SiegelPoint(-(h.u / h.v), h.v.inverse())
    with h.ctx.work():
        if h.v == 0:
            raise InversionAtOrigin("inversion at origin")
        u = -h.u / h.v
        v = 1 / h.v
        v = mpc(abs(u) ** 2 / 2, v.imag)
        return SiegelPoint(u, v, h.ctx)


def gauge_norm_pow4(h: SiegelPoint) -> Union[Fraction, mpf]:
    """|v|^2, i.e. the fourth power of the gauge norm; exact on the exact backend."""
    if h.exact:
        return h.v.abs_sq()
    with h.ctx.work():
        return abs(h.v) ** 2


def gauge_norm(h: SiegelPoint) -> Union[float, mpf]:
    """The gauge norm |v|^(1/2)."""
    if h.exact:
        return float(h.v.abs_sq()) ** 0.25
    with h.ctx.work():
        return abs(h.v) ** mpf("0.5")


def distance_pow4(h1: SiegelPoint, h2: SiegelPoint) -> Union[Fraction, mpf]:
    """d(h1, h2)^4 = |conj(v1) - conj(u1) u2 + v2|^2."""
    _check_same_backend(h1, h2)
    if h1.exact:
        w = h1.v.conj() - h1.u.conj() * h2.u + h2.v
        return w.abs_sq()
    with h1.ctx.work():
        w = h1.v.conjugate() - h1.u.conjugate() * h2.u + h2.v
        return abs(w) ** 2


def distance(h1: SiegelPoint, h2: SiegelPoint) -> Union[float, mpf]:
    """Left-invariant gauge distance between two points."""
    d4 = distance_pow4(h1, h2)
    if h1.exact:
        return float(d4) ** 0.25
    with h1.ctx.work():
        return d4 ** mpf("0.25")


# ---------------------------------------------------------------------------
# Integer and projective points


@dataclass(frozen=True)
class IntegerPoint:
    """A point of S(Z): Gaussian-integer coordinates on the Siegel surface."""

    u: GaussInt
    v: GaussInt

    def __post_init__(self):
        if 2 * self.v.re != self.u.norm():
            raise ValueError(f"({self.u}; {self.v}) is not an integer Siegel point")

    @staticmethod
    def origin() -> "IntegerPoint":
        return IntegerPoint(GaussInt(), GaussInt())

    def is_origin(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def inv(self) -> "IntegerPoint":
        return IntegerPoint(-self.u, self.v.conj())

    def mul(self, other: "IntegerPoint") -> "IntegerPoint":
        return IntegerPoint(
            self.u + other.u, self.v + self.u.conj() * other.u + other.v
        )

    def norm_pow4(self) -> int:
        return self.v.norm()

    def to_siegel(self, ctx: Optional[PrecisionContext] = None) -> SiegelPoint:
        h = SiegelPoint(GaussRat.from_int(self.u), GaussRat.from_int(self.v))
        return h if ctx is None else h.to_bigfloat(ctx)

    def __str__(self) -> str:
        return f"({format_gauss_int(self.u)}; {format_gauss_int(self.v)})"


def is_integer_point(u: GaussInt, v: GaussInt) -> bool:
    """True iff (u, v) lies in S(Z), i.e. 2 Re(v) = |u|^2 exactly."""
    return 2 * v.re == u.norm()


@dataclass(frozen=True)
class ProjIntPoint:
    """Integer projective triple (q : r : p) in lowest terms, canonical q."""

    q: GaussInt
    r: GaussInt
    p: GaussInt

    def __post_init__(self):
        if self.q.is_zero():
            raise PointAtInfinity("point at infinity: q = 0")
        if self.r.norm() != 2 * (self.q.conj() * self.p).re:
            raise ValueError("triple violates the projective Siegel constraint")

    @staticmethod
    def reduced(q: GaussInt, r: GaussInt, p: GaussInt) -> "ProjIntPoint":
        return ProjIntPoint(*reduce_triple(q, r, p))

    def __str__(self) -> str:
        return (
            f"[{format_gauss_int(self.q)} : {format_gauss_int(self.r)}"
            f" : {format_gauss_int(self.p)}]"
        )


def proj_to_planar(pt: ProjIntPoint) -> SiegelPoint:
    """(q : r : p) -> (r/q, p/q), exact backend."""
    q = GaussRat.from_int(pt.q)
    return SiegelPoint(GaussRat.from_int(pt.r) / q, GaussRat.from_int(pt.p) / q)


def planar_to_proj(h: SiegelPoint) -> ProjIntPoint:
    """Clear denominators of an exact planar point and reduce."""
    if not h.exact:
        raise BackendMismatch("planar_to_proj requires the exact backend")
    q0 = h.u.den * h.v.den
    qr = GaussRat.from_int(q0)
    r = (h.u * qr).to_gauss_int()
    p = (h.v * qr).to_gauss_int()
    return ProjIntPoint.reduced(q0, r, p)


# ---------------------------------------------------------------------------
# Parsing


def _component_point(
    parts: list[str], ctx: Optional[PrecisionContext]
) -> SiegelPoint:
    comps = [parse_complex_rational(p) for p in parts]
    (ure, uim), (vre, vim) = comps
    if ctx is None:
        return SiegelPoint(
            GaussRat.from_fractions(ure, uim), GaussRat.from_fractions(vre, vim)
        )
    with ctx.work():
        u = mpc(mpf(ure.numerator) / ure.denominator, mpf(uim.numerator) / uim.denominator)
        v = mpc(mpf(vre.numerator) / vre.denominator, mpf(vim.numerator) / vim.denominator)
        return SiegelPoint(u, v, ctx)


def _split_pair(s: str) -> list[str]:
    body = s.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    sep = ";" if ";" in body else ","
    parts = body.split(sep)
    if len(parts) != 2:
        raise ParseError(f"expected two components in {s!r}")
    return parts


def parse_planar_point(
    s: str, ctx: Optional[PrecisionContext] = None
) -> SiegelPoint:
    """Parse `(u; v)` planar form; exact if ctx is None."""
    try:
        return _component_point(_split_pair(s), ctx)
    except ValueError as e:
        raise ParseError(str(e)) from e


def parse_heis_point(s: str, ctx: Optional[PrecisionContext] = None) -> HeisPoint:
    """Parse `heis(z; t)` or bare `z, t` form."""
    body = s.strip()
    if body.startswith("heis"):
        body = body[4:]
    zs, ts = _split_pair(body)
    zre, zim = parse_complex_rational(zs)
    tre, tim = parse_complex_rational(ts)
    if tim != 0:
        raise ParseError("t component must be real")
    if ctx is None:
        return HeisPoint(GaussRat.from_fractions(zre, zim), tre)
    with ctx.work():
        z = mpc(mpf(zre.numerator) / zre.denominator, mpf(zim.numerator) / zim.denominator)
        t = mpf(tre.numerator) / tre.denominator
        return HeisPoint(z, t, ctx)


def parse_proj_point(s: str) -> ProjIntPoint:
    """Parse `[q : r : p]` projective form."""
    from .gaussian import parse_gauss_int

    body = s.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = body.split(":")
    if len(parts) != 3:
        raise ParseError(f"expected three components in {s!r}")
    q, r, p = (parse_gauss_int(p.strip()) for p in parts)
    return ProjIntPoint.reduced(q, r, p)
