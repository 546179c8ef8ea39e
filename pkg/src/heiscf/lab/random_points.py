"""Seeded generators for test fixtures: digit strings and sample points.

Digit strings use only integer points of gauge norm >= 3; any such string
reconstructs to a point whose every forward orbit iterate stays strictly
inside the fundamental domain, so expansion recovers the digits verbatim.
Rational points come from truncating those reconstructions; big-float
points are uniform dyadic samples of the domain's bounding box.
"""

from __future__ import annotations

import random
from typing import Optional

from ..cf import reconstruct
from ..domain import integer_point
from ..siegel import HeisPoint, IntegerPoint, PrecisionContext, SiegelPoint, from_heis

__all__ = [
    "random_digit",
    "random_digit_string",
    "random_rational_point",
    "random_bigfloat_point",
]


def random_digit(rng: random.Random) -> IntegerPoint:
    """A uniform-ish integer point with gauge norm >= 3 (so |v|^2 >= 81)."""
    while True:
        a = rng.randint(-4, 4)
        b = rng.choice(range(-4 + (a % 2), 5, 2))
        c = rng.randint(-12, 12)
        gamma = integer_point(a, b, c)
        if gamma.v.norm() >= 81:
            return gamma


def random_digit_string(
    rng: random.Random, length: int, gamma0: Optional[IntegerPoint] = None
) -> tuple[IntegerPoint, list[IntegerPoint]]:
    """An integer part and a digit string that round-trips exactly."""
    if gamma0 is None:
        gamma0 = integer_point(rng.randint(-3, 3) * 2, rng.randint(-3, 3) * 2, rng.randint(-9, 9))
    return gamma0, [random_digit(rng) for _ in range(length)]


def random_rational_point(
    rng: random.Random, length: int = 6, q_norm_max: int = 10**12
) -> SiegelPoint:
    """A rational point with a known finite expansion and bounded denominator.

    Built by reconstructing a random digit string, dropping trailing digits
    until the denominator norm fits the bound.
    """
    gamma0, digits = random_digit_string(rng, length)
    while True:
        h = reconstruct(gamma0, digits)
        if h.u.den.norm() <= q_norm_max and h.v.den.norm() <= q_norm_max:
            return h
        if not digits:
            return h
        digits = digits[:-1]


def random_bigfloat_point(
    rng: random.Random, ctx: Optional[PrecisionContext] = None
) -> SiegelPoint:
    """A uniform dyadic sample from the box containing the fundamental domain.

    Coordinates are dyadic rationals with ctx.bits fractional bits, mapped
    through (z, t) -> (z(1+i), |z|^2 + ti) so the model constraint holds to
    working precision.
    """
    ctx = ctx or PrecisionContext(64)
    scale = 1 << ctx.bits

    def dyadic(bound: float) -> int:
        return rng.randint(-int(bound * scale), int(bound * scale))

    z_re, z_im = dyadic(2.0**-0.25), dyadic(2.0**-0.25)
    t = dyadic(2.0**-0.5)
    from mpmath import mpc, mpf

    with ctx.work():
        z = mpc(mpf(z_re) / scale, mpf(z_im) / scale)
        h = HeisPoint(z, mpf(t) / scale, ctx)
        return from_heis(h)
