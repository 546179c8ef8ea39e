import math
import random

import pytest

from heiscf.cf import expand, reconstruct
from heiscf.gaussian import GaussInt
from heiscf.lab.approx import (
    RAD_KD,
    RK_KD,
    approx_quality,
    best_approx_search,
    candidate_triples,
    convergent_distance,
    decompose_triple,
    prop71_check,
)
from heiscf.lab.random_points import random_digit_string, random_rational_point
from heiscf.siegel import (
    ProjIntPoint,
    distance,
    parse_planar_point,
    proj_to_planar,
)


def exact_expansion(seed, length=7):
    rng = random.Random(seed)
    g0, digits = random_digit_string(rng, length)
    return expand(reconstruct(g0, digits))


class TestConvergentDistance:
    def test_matches_direct(self):
        e = exact_expansion(0)
        for n in range(e.depth):
            d = convergent_distance(e, n)
            # measured from h_0 via the continuant columns; translating by
            # gamma_0 preserves distances, so the reduced convergent agrees
            direct = distance(proj_to_planar(e.convergent(n)), e.point)
            assert math.isclose(d, direct, rel_tol=1e-9)


class TestApproxQuality:
    @pytest.mark.parametrize("seed", range(6))
    def test_hard_bounds_hold(self, seed):
        e = exact_expansion(seed)
        for n in range(e.depth):
            rec = approx_quality(e, n)
            assert rec.passed, rec.violations

    def test_ratio_in_comparability_window(self):
        e = exact_expansion(1)
        for n in range(e.depth - 1):
            rec = approx_quality(e, n)
            assert rec.ratio_thm14 is not None
            assert 1.0 / RK_KD <= rec.ratio_thm14 <= RK_KD
            # empirically the ratio hugs 1, far from the worst case
            assert 0.01 < rec.ratio_thm14 < 100

    def test_c_n_below_empirical_ceiling(self):
        for seed in range(6):
            e = exact_expansion(seed)
            for n in range(e.depth):
                assert approx_quality(e, n).c_n <= RAD_KD * RK_KD

    def test_index_bound(self):
        e = exact_expansion(2)
        with pytest.raises(IndexError):
            approx_quality(e, e.depth)


class TestCandidateSearch:
    def test_spec_point_best(self):
        h = parse_planar_point("(1+i; 1+4/5i)")
        best, d = best_approx_search(h, B=3.0)
        assert d <= distance(proj_to_planar(best), h) + 1e-12
        # the point itself has |q| = 5 > B, so the best is strictly farther
        assert d > 0

    def test_exact_point_found_when_in_range(self):
        h = parse_planar_point("(1+i; 1+4/5i)")
        best, d = best_approx_search(h, B=5.0)
        assert d == 0.0
        assert proj_to_planar(best) == h

    def test_candidates_are_coprime_and_folded(self):
        h = parse_planar_point("(1/2; 1/8+1/4i)")
        for q, r, p in candidate_triples(h, B=2.0, dist_bound=1.0):
            assert q.re > 0 and q.im >= 0

    def test_convergents_beat_all_smaller_denominators(self):
        # each convergent is at least as close as every candidate with
        # a strictly smaller denominator norm (best-approximation flavor)
        e = exact_expansion(3, length=4)
        h = e.point
        n = 1
        qn, rn, pn = e.first_column(n)
        d_n = convergent_distance(e, n)
        for trip in candidate_triples(h, B=math.sqrt(qn.norm()) * 0.5, dist_bound=1.5):
            d = distance(proj_to_planar(ProjIntPoint.reduced(*trip)), h)
            assert d >= d_n - 1e-9 or trip[0].norm() >= qn.norm()


class TestDecompose:
    def test_columns_decompose_to_unit_vectors(self):
        e = exact_expansion(4)
        n = 2
        q, r, p = e.first_column(n + 1)
        a, b, c = decompose_triple(e, n, (q, r, p))
        assert (a, b, c) == (GaussInt(1, 0), GaussInt(0, 0), GaussInt(0, 0))

    def test_round_trip(self):
        from heiscf.matrices import mat_apply_triple

        e = exact_expansion(5)
        n = 1
        target = (GaussInt(3, 1), GaussInt(2, 0), GaussInt(1, 1))
        coeffs = decompose_triple(e, n, target)
        back = mat_apply_triple(e.continuants[n + 1], coeffs)
        assert back == target


class TestProp71:
    @pytest.mark.parametrize("seed", range(4))
    def test_no_violations_on_random_fixtures(self, seed):
        rng = random.Random(seed)
        h = random_rational_point(rng, length=5, q_norm_max=10**10)
        e = expand(h)
        ns = [n for n in range(1, e.depth) if e.first_column(n)[0].norm() <= 200**2]
        if not ns:
            pytest.skip("expansion too shallow")
        rep = prop71_check(e, max(ns))
        assert rep.violations_stated == []
        assert rep.violations_thm16 == []

    def test_report_fields(self):
        rng = random.Random(11)
        h = random_rational_point(rng, length=4, q_norm_max=10**8)
        e = expand(h)
        rep = prop71_check(e, 1)
        d = rep.as_dict()
        assert d["n"] == 1
        assert d["thm16_cutoff"] < 1.0  # vacuous at these sizes
        assert d["bound_proof"] is not None
