import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heiscf.errors import InversionAtOrigin, ParseError
from heiscf.gaussian import GaussInt, GaussRat
from heiscf.siegel import (
    HeisPoint,
    IntegerPoint,
    PrecisionContext,
    ProjIntPoint,
    SiegelPoint,
    distance,
    distance_pow4,
    from_heis,
    gauge_norm,
    group_inv,
    group_mul,
    is_integer_point,
    koranyi_inversion,
    parse_heis_point,
    parse_planar_point,
    parse_proj_point,
    planar_to_proj,
    proj_to_planar,
    to_heis,
)


def rational_point(zr, zi, t):
    """Exact model point from Heisenberg coordinates."""
    z = GaussRat.from_fractions(Fraction(zr), Fraction(zi))
    return from_heis(HeisPoint(z, Fraction(t)))


heis_coords = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=16),
    st.fractions(min_value=-3, max_value=3, max_denominator=16),
    st.fractions(min_value=-3, max_value=3, max_denominator=16),
)


class TestModelConstraint:
    def test_origin(self):
        o = SiegelPoint.origin()
        assert o.is_origin()

    def test_constraint_enforced(self):
        with pytest.raises(ValueError):
            SiegelPoint(
                GaussRat.from_int(GaussInt(1, 0)), GaussRat.from_int(GaussInt(1, 0))
            )

    @given(heis_coords)
    def test_from_heis_lands_on_model(self, c):
        h = rational_point(*c)
        # |u|^2 = 2 Re v exactly
        assert h.u.abs_sq() == 2 * h.v.re()

    @given(heis_coords)
    def test_heis_round_trip(self, c):
        h = rational_point(*c)
        z, t = to_heis(h).z, to_heis(h).t
        assert from_heis(HeisPoint(z, t)) == h


class TestGroupLaw:
    @given(heis_coords, heis_coords)
    @settings(max_examples=60)
    def test_closure(self, c1, c2):
        a, b = rational_point(*c1), rational_point(*c2)
        ab = group_mul(a, b)
        assert ab.u.abs_sq() == 2 * ab.v.re()

    @given(heis_coords, heis_coords, heis_coords)
    @settings(max_examples=40)
    def test_associative(self, c1, c2, c3):
        a, b, c = (rational_point(*x) for x in (c1, c2, c3))
        assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))

    @given(heis_coords)
    def test_inverse(self, c):
        a = rational_point(*c)
        assert group_mul(a, group_inv(a)).is_origin()
        assert group_mul(group_inv(a), a).is_origin()

    @given(heis_coords)
    def test_identity(self, c):
        a = rational_point(*c)
        o = SiegelPoint.origin()
        assert group_mul(a, o) == a and group_mul(o, a) == a


class TestKoranyiInversion:
    @given(heis_coords.filter(lambda c: c != (0, 0, 0)))
    @settings(max_examples=60)
    def test_involution(self, c):
        a = rational_point(*c)
        if a.v.is_zero():
            return
        assert koranyi_inversion(koranyi_inversion(a)) == a

    def test_origin_raises(self):
        with pytest.raises(InversionAtOrigin):
            koranyi_inversion(SiegelPoint.origin())

    @given(heis_coords.filter(lambda c: c != (0, 0, 0)))
    @settings(max_examples=60)
    def test_norm_reciprocal(self, c):
        a = rational_point(*c)
        if a.v.is_zero():
            return
        ia = koranyi_inversion(a)
        assert ia.v.abs_sq() * a.v.abs_sq() == 1


class TestDistance:
    def test_norm_is_distance_to_origin(self):
        a = rational_point(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))
        assert math.isclose(gauge_norm(a), distance(SiegelPoint.origin(), a))

    @given(heis_coords, heis_coords)
    @settings(max_examples=60)
    def test_symmetric(self, c1, c2):
        a, b = rational_point(*c1), rational_point(*c2)
        assert distance_pow4(a, b) == distance_pow4(b, a)

    @given(heis_coords, heis_coords, heis_coords)
    @settings(max_examples=40)
    def test_left_invariant(self, c1, c2, c3):
        g, a, b = (rational_point(*x) for x in (c1, c2, c3))
        assert distance_pow4(a, b) == distance_pow4(group_mul(g, a), group_mul(g, b))

    @given(heis_coords, heis_coords, heis_coords)
    @settings(max_examples=40)
    def test_triangle_inequality(self, c1, c2, c3):
        a, b, c = (rational_point(*x) for x in (c1, c2, c3))
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9

    def test_ball_volume_monte_carlo(self):
        # Vol(B_r) = (pi^2 / 2) r^4 in (z, t) coordinates: estimate the
        # unit-ball volume by sampling the box |z| <= 1, |t| <= 1
        rng = np.random.default_rng(42)
        n = 200_000
        zr = rng.uniform(-1, 1, n)
        zi = rng.uniform(-1, 1, n)
        t = rng.uniform(-1, 1, n)
        # gauge norm^4 of (z, t): |v|^2 with v = |z|^2 + ti
        r4 = (zr * zr + zi * zi) ** 2 + t * t
        vol = 8.0 * np.mean(r4 <= 1.0)
        assert abs(vol - math.pi**2 / 2) < 0.05


class TestIntegerPoints:
    def test_parity_invariant(self):
        with pytest.raises(ValueError):
            IntegerPoint(GaussInt(1, 0), GaussInt(1, 3))  # 1 + 0 odd

    def test_is_integer_point(self):
        assert is_integer_point(GaussInt(1, 1), GaussInt(1, 1))
        assert is_integer_point(GaussInt(0, 0), GaussInt(0, 5))
        assert not is_integer_point(GaussInt(1, 1), GaussInt(2, 0))

    def test_group_ops(self):
        g = IntegerPoint(GaussInt(1, 1), GaussInt(1, 2))
        inv = g.inv()
        prod = g.mul(inv)
        assert prod.u.is_zero() and prod.v.is_zero()


class TestProjective:
    def test_round_trip(self):
        h = rational_point(Fraction(1, 2), Fraction(1, 3), Fraction(2, 7))
        trip = planar_to_proj(h)
        assert proj_to_planar(trip) == h

    @given(heis_coords)
    @settings(max_examples=60)
    def test_round_trip_property(self, c):
        h = rational_point(*c)
        assert proj_to_planar(planar_to_proj(h)) == h

    def test_constraint(self):
        with pytest.raises(ValueError):
            ProjIntPoint(GaussInt(1, 0), GaussInt(1, 0), GaussInt(1, 0))


class TestParsing:
    def test_planar(self):
        h = parse_planar_point("(1+i; 1+4/5i)")
        assert h.u == GaussRat.from_int(GaussInt(1, 1))
        assert h.v.re() == 1 and h.v.im() == Fraction(4, 5)

    def test_planar_garbage(self):
        with pytest.raises(ParseError):
            parse_planar_point("(1+i)")
        with pytest.raises(ParseError):
            parse_planar_point("nonsense")

    def test_heis_forms(self):
        a = parse_heis_point("heis(1/2; 1/3)")
        b = parse_heis_point("1/2, 1/3")
        assert a.z == b.z and a.t == b.t

    def test_proj(self):
        p = parse_proj_point("[5 : 5+5i : 5+4i]")
        assert p.q == GaussInt(1, 0) or p.q.norm() <= 25  # reduced form

    def test_str_round_trip(self):
        h = parse_planar_point("(1+i; 1+4/5i)")
        assert parse_planar_point(str(h)) == h


class TestBigfloatBackend:
    def test_precision_context_floor(self):
        with pytest.raises(ValueError):
            PrecisionContext(32)

    def test_constraint_repair_tolerance(self):
        ctx = PrecisionContext(64)
        h = parse_planar_point("(1+i; 1+4/5i)", ctx)
        assert not h.exact
        assert h.ctx.bits == 64

    def test_group_ops_match_exact(self):
        ctx = PrecisionContext(128)
        a_ex = rational_point(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))
        b_ex = rational_point(Fraction(-1, 4), Fraction(2, 3), Fraction(-1, 7))
        ab_ex = group_mul(a_ex, b_ex)
        ab_big = group_mul(a_ex.to_bigfloat(ctx), b_ex.to_bigfloat(ctx))
        with ctx.work():
            assert abs(complex(ab_big.u) - complex(float(ab_ex.u.re()), float(ab_ex.u.im()))) < 1e-12
            assert abs(complex(ab_big.v) - complex(float(ab_ex.v.re()), float(ab_ex.v.im()))) < 1e-12

    def test_inversion_projects_back_to_model(self):
        ctx = PrecisionContext(64)
        h = parse_planar_point("(1+i; 1+4/5i)", ctx)
        ih = koranyi_inversion(h)
        with ctx.work():
            # constraint holds after repair
            assert abs(abs(ih.u) ** 2 - 2 * ih.v.real) < 1e-15
