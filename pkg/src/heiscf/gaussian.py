"""Exact arithmetic over Z[i] and Q(i).

Gaussian integers carry all lattice and continuant arithmetic; Gaussian
rationals carry the coordinates of rational points.  Everything here is
exact: no floats, no rounding except the explicit nearest-integer
division used by the Euclidean algorithm.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

__all__ = [
    "GaussInt",
    "GaussRat",
    "canonical_associate",
    "gi_gcd",
    "gi_norm",
    "parse_gauss_int",
    "r2_count",
    "r2_count_naive",
    "reduce_triple",
]


def _round_half_up(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0), ties toward +infinity."""
    return (2 * num + den) // (2 * den)


@dataclass(frozen=True)
class GaussInt:
    """A Gaussian integer re + im*i with unbounded integer parts."""

    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: "GaussInt") -> bool:
        n = self.norm()
        if n == 0:
            return other.is_zero()
        t = other * self.conj()
        return t.re % n == 0 and t.im % n == 0

    def exact_div(self, other: "GaussInt") -> "GaussInt":
        """Exact quotient self/other; raises if it is not a Gaussian integer."""
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        t = self * other.conj()
        if t.re % n != 0 or t.im % n != 0:
            raise ValueError(f"{other} does not divide {self}")
        return GaussInt(t.re // n, t.im // n)

    def round_div(self, other: "GaussInt") -> "GaussInt":
        """Quotient rounded coordinate-wise to the nearest Gaussian integer."""
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        t = self * other.conj()
        return GaussInt(_round_half_up(t.re, n), _round_half_up(t.im, n))

    def __str__(self) -> str:
        return format_gauss_int(self)


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def gi_norm(g: GaussInt) -> int:
    """|g|^2 = re^2 + im^2."""
    return g.norm()


def canonical_associate(g: GaussInt) -> tuple[GaussInt, GaussInt]:
    """Return (c, u) with c = u*g the canonical unit multiple of g.

    Canonical means re > 0 and im >= 0 (the quarter-plane containing the
    positive real axis); zero maps to zero.  Exactly one of the four
    associates lands there, which makes lowest-terms outputs reproducible.
    """
    if g.is_zero():
        return g, ONE
    for u in UNITS:
        c = u * g
        if c.re > 0 and c.im >= 0:
            return c, u
    raise AssertionError("unreachable: no canonical associate")


def gi_gcd(g1: GaussInt, g2: GaussInt) -> GaussInt:
    """GCD in Z[i], normalized to the canonical associate.

    Euclidean algorithm with rounded division; the remainder norm strictly
    decreases, so this terminates.
    """
    if g1.is_zero() and g2.is_zero():
        raise ValueError("gcd undefined for (0, 0)")
    a, b = g1, g2
    while not b.is_zero():
        q = a.round_div(b)
        a, b = b, a - q * b
    return canonical_associate(a)[0]


def reduce_triple(
    q: GaussInt, r: GaussInt, p: GaussInt
) -> tuple[GaussInt, GaussInt, GaussInt]:
    """Divide (q, r, p) by its GCD and canonicalize the q component.

    The result represents the same projective point with q in canonical
    associate form.  q must be nonzero.
    """
    from .errors import PointAtInfinity

    if q.is_zero():
        raise PointAtInfinity("point at infinity: q = 0")
    g = canonical_associate(q)[0]
    for x in (r, p):
        if not g.is_unit() and not x.is_zero():
            g = gi_gcd(g, x)
    q, r, p = q.exact_div(g), r.exact_div(g), p.exact_div(g)
    _, u = canonical_associate(q)
    return u * q, u * r, u * p


def r2_count_naive(n: int) -> int:
    """O(sqrt(n)) enumeration oracle for r2(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    a = 0
    while a * a <= n:
        rest = n - a * a
        b = _isqrt(rest)
        if b * b == rest:
            sa = 1 if a == 0 else 2
            sb = 1 if b == 0 else 2
            count += sa * sb
        a += 1
    return count


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def r2_count(n: int) -> int:
    """Number of ways to write n = a^2 + b^2 counting signs and order.

    Computed from the factorization: zero if some prime = 3 mod 4 occurs
    to an odd power, else 4 * prod(e_p + 1) over primes p = 1 mod 4.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 4
    from sympy import factorint

    result = 4
    for p, e in factorint(n).items():
        if p == 2:
            continue
        if p % 4 == 3:
            if e % 2 == 1:
                return 0
        else:
            result *= e + 1
    return result


# ---------------------------------------------------------------------------
# Gaussian rationals


def _fraction_parts(num: GaussInt, den: GaussInt) -> tuple[Fraction, Fraction]:
    n = den.norm()
    t = num * den.conj()
    return Fraction(t.re, n), Fraction(t.im, n)


@dataclass(frozen=True)
class GaussRat:
    """A Gaussian rational num/den in canonical lowest terms.

    gcd(num, den) is a unit and den is the canonical associate; arithmetic
    is exact and closed.
    """

    num: GaussInt
    den: GaussInt

    @staticmethod
    def make(num: GaussInt, den: GaussInt = ONE) -> "GaussRat":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return GaussRat(ZERO, ONE)
        g = gi_gcd(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        _, u = canonical_associate(den)
        return GaussRat(u * num, u * den)

    @staticmethod
    def from_int(g: GaussInt) -> "GaussRat":
        return GaussRat(g, ONE)

    @staticmethod
    def from_fractions(re: Fraction, im: Fraction) -> "GaussRat":
        d = re.denominator * im.denominator // _gcd_int(
            re.denominator, im.denominator
        )
        num = GaussInt(
            int(re * d),
            int(im * d),
        )
        return GaussRat.make(num, GaussInt(d, 0))

    def __add__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat.make(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "GaussRat") -> "GaussRat":
        if other.is_zero():
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat.make(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.num, self.den)

    def conj(self) -> "GaussRat":
        return GaussRat.make(self.num.conj(), self.den.conj())

    def inverse(self) -> "GaussRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return GaussRat.make(self.den, self.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def re(self) -> Fraction:
        return _fraction_parts(self.num, self.den)[0]

    def im(self) -> Fraction:
        return _fraction_parts(self.num, self.den)[1]

    def abs_sq(self) -> Fraction:
        return Fraction(self.num.norm(), self.den.norm())

    def is_integral(self) -> bool:
        return self.den.divides(self.num)

    def to_gauss_int(self) -> GaussInt:
        return self.num.exact_div(self.den)

    def __str__(self) -> str:
        if self.den == ONE:
            return format_gauss_int(self.num)
        ns = format_gauss_int(self.num)
        ds = format_gauss_int(self.den)
        if ("+" in ns[1:]) or ("-" in ns[1:]):
            ns = f"({ns})"
        if ("+" in ds[1:]) or ("-" in ds[1:]):
            ds = f"({ds})"
        return f"{ns}/{ds}"


RAT_ZERO = GaussRat(ZERO, ONE)
RAT_ONE = GaussRat(ONE, ONE)


def _gcd_int(a: int, b: int) -> int:
    import math

    return math.gcd(a, b)


# ---------------------------------------------------------------------------
# Text rendering and parsing


def format_gauss_int(g: GaussInt) -> str:
    """Render as a+bi with no spaces; unit coefficients elided (`1+i`, `-5i`)."""
    if g.is_zero():
        return "0"
    parts = []
    if g.re != 0:
        parts.append(str(g.re))
    if g.im != 0:
        if g.im == 1:
            s = "i"
        elif g.im == -1:
            s = "-i"
        else:
            s = f"{g.im}i"
        if parts and not s.startswith("-"):
            parts.append("+" + s)
        else:
            parts.append(s)
    return "".join(parts)


_TERM_RE = _re.compile(r"[+-]?[^+-]+")


def parse_gauss_int(s: str) -> GaussInt:
    """Parse the a+bi grammar produced by format_gauss_int."""
    re_part, im_part = _parse_complex_terms(s)
    if re_part.denominator != 1 or im_part.denominator != 1:
        raise ParseError(f"not a Gaussian integer: {s!r}")
    return GaussInt(int(re_part), int(im_part))


_NUM_RE = _re.compile(
    r"^(?P<sign>[+-])?(?P<a>\d+(?:\.\d+)?|\.\d+)?"
    r"(?:/(?P<b>\d+(?:\.\d+)?))?(?P<i>i)?(?:/(?P<c>\d+(?:\.\d+)?))?$"
)


def _parse_term(tok: str) -> tuple[Fraction, bool]:
    m = _NUM_RE.match(tok)
    if not m or (m.group("a") is None and m.group("i") is None):
        raise ParseError(f"bad term {tok!r}")
    if m.group("a") is None and (m.group("b") is not None):
        raise ParseError(f"bad term {tok!r}")
    val = Fraction(m.group("a")) if m.group("a") is not None else Fraction(1)
    if m.group("b") is not None:
        val /= Fraction(m.group("b"))
    if m.group("c") is not None:
        if m.group("i") is None:
            raise ParseError(f"bad term {tok!r}")
        val /= Fraction(m.group("c"))
    if m.group("sign") == "-":
        val = -val
    return val, m.group("i") is not None


def _parse_complex_terms(s: str) -> tuple[Fraction, Fraction]:
    s = s.strip().replace(" ", "")
    if not s:
        raise ParseError("empty complex literal")
    toks = _TERM_RE.findall(s)
    if "".join(toks) != s:
        raise ParseError(f"bad complex literal {s!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen_re = seen_im = False
    for tok in toks:
        val, is_imag = _parse_term(tok)
        if is_imag:
            if seen_im:
                raise ParseError(f"duplicate imaginary part in {s!r}")
            im_part = val
            seen_im = True
        else:
            if seen_re:
                raise ParseError(f"duplicate real part in {s!r}")
            re_part = val
            seen_re = True
    return re_part, im_part


def parse_complex_rational(s: str) -> tuple[Fraction, Fraction]:
    """Parse a complex rational: term sums (`1+4/5i`) or `num/den` with
    parenthesized Gaussian-integer parts (`(1+i)/(2-i)`)."""
    s = s.strip().replace(" ", "")
    if ")/(" in s or (s.startswith("(") and "/" in s):
        left, _, right = s.partition(")/")
        num = parse_gauss_int(left.lstrip("("))
        den = parse_gauss_int(right.strip("()"))
        r = GaussRat.make(num, den)
        return r.re(), r.im()
    return _parse_complex_terms(s)


def parse_gauss_rat(s: str) -> GaussRat:
    re_part, im_part = parse_complex_rational(s)
    return GaussRat.from_fractions(re_part, im_part)
