"""Approximation quality of convergents and best-approximation searches.

Measures the comparability ratios behind the distance and relative-size
bounds, runs exhaustive searches for closer rational points, and checks
the best-approximant inequality candidate by candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..cf import CFExpansion
from ..domain import rk_constant
from ..gaussian import GaussInt, canonical_associate, gi_gcd
from ..matrices import mat_apply_triple, u21_inverse
from ..siegel import (
    ProjIntPoint,
    SiegelPoint,
    distance,
    distance_pow4,
    proj_to_planar,
)
from .enumerate import solve_p_line

__all__ = [
    "ApproxRecord",
    "Prop71Report",
    "RAD_KD",
    "RK_KD",
    "approx_quality",
    "best_approx_search",
    "candidate_triples",
    "decompose_triple",
    "prop71_check",
]

RAD_KD = 2.0**-0.25
RK_KD = rk_constant(RAD_KD, 1e-6)


@dataclass
class ApproxRecord:
    """Per-index measurement of the comparability bounds."""

    n: int
    q_abs: float
    d_n: float
    v_next: complex
    ratio_thm14: Optional[float]
    c_n: float
    relsize_n: float
    succ_n: Optional[float]
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "q_abs": self.q_abs,
            "d_n": self.d_n,
            "v_next": [self.v_next.real, self.v_next.imag],
            "ratio_thm14": self.ratio_thm14,
            "c_n": self.c_n,
            "relsize_n": self.relsize_n,
            "succ_n": self.succ_n,
            "violations": list(self.violations),
        }


def _abs_gi(g: GaussInt) -> float:
    return math.sqrt(g.norm())


def _v_abs(e: CFExpansion, i: int) -> float:
    h = e.iterates[i]
    if h.exact:
        return float(h.v.abs_sq()) ** 0.5
    with e.ctx.work():
        return float(abs(h.v))


def _v_complex(e: CFExpansion, i: int) -> complex:
    h = e.iterates[i]
    if h.exact:
        return complex(float(h.v.re()), float(h.v.im()))
    return complex(float(h.v.real), float(h.v.imag))


def convergent_distance(e: CFExpansion, n: int) -> float:
    """d(nth convergent, h_0), via the exact route where possible."""
    q, r, p = e.first_column(n)
    conv = proj_to_planar(ProjIntPoint.reduced(q, r, p))
    h0 = e.iterates[0]
    if h0.exact:
        return float(distance_pow4(conv, h0)) ** 0.25
    with e.ctx.work():
        return float(distance(conv.to_bigfloat(e.ctx), h0))


def approx_quality(e: CFExpansion, n: int, rk: Optional[float] = None) -> ApproxRecord:
    """Fill an ApproxRecord for index n and flag hard-bound violations.

    Hard bounds: d_n / |v_{n+1}/q_n^2|^(1/2) and |q_n| |v_0 ... v_{n-1}|
    within [1/R, R]; |q_{n-1}| / |v_n q_n| within [1/R^2, R^2];
    d_n |q_n| <= rad * R.
    """
    if n + 1 > e.depth:
        raise IndexError("approx_quality requires n + 1 <= depth")
    rk = rk if rk is not None else RK_KD
    q_abs = _abs_gi(e.first_column(n)[0])
    d_n = convergent_distance(e, n)
    v_next = _v_complex(e, n + 1)
    v_next_abs = _v_abs(e, n + 1)

    ratio = None
    if v_next_abs > 0.0:
        ratio = d_n / math.sqrt(v_next_abs / (q_abs * q_abs))

    prod = 1.0
    for i in range(n):
        prod *= _v_abs(e, i)
    relsize = q_abs * prod

    succ = None
    if n >= 1:
        qprev_abs = _abs_gi(-e.third_column(n)[0])
        vn_abs = _v_abs(e, n)
        if vn_abs > 0.0:
            succ = qprev_abs / (vn_abs * q_abs)

    c_n = d_n * q_abs

    record = ApproxRecord(
        n=n,
        q_abs=q_abs,
        d_n=d_n,
        v_next=v_next,
        ratio_thm14=ratio,
        c_n=c_n,
        relsize_n=relsize,
        succ_n=succ,
    )
    if ratio is not None and not (1.0 / rk <= ratio <= rk):
        record.violations.append(f"thm14 ratio {ratio} outside [1/R, R]")
    if not (1.0 / rk <= relsize <= rk):
        record.violations.append(f"relsize {relsize} outside [1/R, R]")
    if succ is not None and not (1.0 / rk**2 <= succ <= rk**2):
        record.violations.append(f"successive ratio {succ} outside [1/R^2, R^2]")
    if c_n > RAD_KD * rk:
        record.violations.append(f"c_n {c_n} exceeds rad * R")
    return record


# ---------------------------------------------------------------------------
# Candidate enumeration near a point


def _point_floats(h: SiegelPoint) -> tuple[complex, complex]:
    if h.exact:
        return (
            complex(float(h.u.re()), float(h.u.im())),
            complex(float(h.v.re()), float(h.v.im())),
        )
    return (
        complex(float(h.u.real), float(h.u.imag)),
        complex(float(h.v.real), float(h.v.imag)),
    )


def candidate_triples(h: SiegelPoint, B: float, dist_bound: float = 2.0, dist_fn=None):
    """Lowest-terms triples (Q, R, P) with |Q| <= B near h.

    Near means gauge distance <= dist_bound (any candidate beating a
    convergent at distance < 1 lies within 2 of h).  A dist_fn(q_norm)
    further tightens the search radius per denominator norm; q values
    whose radius comes back <= 0 are skipped outright.  Yields raw integer
    triples; unit multiples are folded into a canonical representative.
    """
    uh, vh = _point_floats(h)
    seen = set()
    qmax2 = int(B * B + 1e-9)
    for qa in range(-int(B) - 1, int(B) + 2):
        for qb in range(-int(B) - 1, int(B) + 2):
            qn = qa * qa + qb * qb
            if qn == 0 or qn > qmax2:
                continue
            dist_q = dist_bound
            if dist_fn is not None:
                dist_q = min(dist_bound, dist_fn(qn))
                if dist_q <= 0.0:
                    continue
            db2 = dist_q * dist_q
            u_slack = math.sqrt(2.0) * dist_q + 1e-9
            q = GaussInt(qa, qb)
            qc = complex(qa, qb)
            q_abs = math.sqrt(qn)
            center = qc * uh
            rad = q_abs * u_slack
            u_r_max = abs(uh) + u_slack
            v_r_max = db2 + u_r_max * abs(uh) + abs(vh)
            p_norm_max = int(qn * (v_r_max * v_r_max) + 1)
            for ra in range(math.floor(center.real - rad), math.ceil(center.real + rad) + 1):
                for rb in range(math.floor(center.imag - rad), math.ceil(center.imag + rad) + 1):
                    dr = complex(ra, rb) - center
                    if abs(dr) > rad:
                        continue
                    rn = ra * ra + rb * rb
                    if rn % 2 != 0:
                        continue
                    uc = complex(ra, rb) / qc
                    for pc, pd in solve_p_line(qa, qb, rn // 2, p_norm_max):
                        # float prefilter: keep only candidates plausibly
                        # within dist_bound of h (exact check happens later)
                        vc = complex(pc, pd) / qc
                        d4f = abs(vc.conjugate() - uc.conjugate() * uh + vh) ** 2
                        if d4f > db2 * db2 * 1.000001 + 1e-9:
                            continue
                        trip = (q, GaussInt(ra, rb), GaussInt(pc, pd))
                        if not _coprime(*trip):
                            continue
                        trip = _fold_unit(*trip)
                        if trip in seen:
                            continue
                        seen.add(trip)
                        yield trip


def _coprime(q: GaussInt, r: GaussInt, p: GaussInt) -> bool:
    g = q
    for x in (r, p):
        if not x.is_zero():
            g = gi_gcd(g, x)
        if g.is_unit():
            return True
    return g.is_unit()


def _fold_unit(q: GaussInt, r: GaussInt, p: GaussInt):
    _, u = canonical_associate(q)
    return (u * q, u * r, u * p)


def _trip_key(t):
    return tuple((g.re, g.im) for g in t)


def _cand_distance_pow4(h: SiegelPoint, trip):
    """d(planar(trip), h)^4, exact Fraction on the exact backend."""
    pt = proj_to_planar(ProjIntPoint.reduced(*trip))
    if h.exact:
        return distance_pow4(pt, h)
    with h.ctx.work():
        return distance_pow4(pt.to_bigfloat(h.ctx), h)


def best_approx_search(
    h: SiegelPoint, B: float, dist_bound: float = 2.0
) -> tuple[ProjIntPoint, float]:
    """The lowest-terms rational point with |Q| <= B closest to h.

    Exhaustive over the candidate region; ties break by triple ordering.
    """
    if B < 1:
        raise ValueError("B must be >= 1")
    best = None
    for trip in candidate_triples(h, B, dist_bound):
        d4 = _cand_distance_pow4(h, trip)
        key = (d4, _trip_key(trip))
        if best is None or key < best[0]:
            best = (key, trip)
    if best is None:
        raise ValueError("no candidate in the search region; widen dist_bound")
    (d4, _), trip = best
    return ProjIntPoint.reduced(*trip), float(d4) ** 0.25


# ---------------------------------------------------------------------------
# Best-approximant machinery


def decompose_triple(e: CFExpansion, n: int, target) -> tuple[GaussInt, GaussInt, GaussInt]:
    """Coordinates (a, b, c) of target in the Q_{n+1} column basis."""
    if n + 1 > e.depth:
        raise IndexError("decompose_triple requires n + 1 <= depth")
    if isinstance(target, ProjIntPoint):
        target = (target.q, target.r, target.p)
    minv = u21_inverse(e.continuants[n + 1])
    return mat_apply_triple(minv, target)


@dataclass
class Prop71Report:
    """Per-candidate evaluation of the best-approximant inequality."""

    n: int
    q_abs: float
    bound_stated: float
    bound_proof: Optional[float]
    candidates_checked: int
    thm16_cutoff: float
    dist_bound_used: float = 0.0
    violations_stated: list[dict] = field(default_factory=list)
    violations_proof: list[dict] = field(default_factory=list)
    violations_thm16: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "q_abs": self.q_abs,
            "bound_stated": self.bound_stated,
            "bound_proof": self.bound_proof,
            "candidates_checked": self.candidates_checked,
            "thm16_cutoff": self.thm16_cutoff,
            "dist_bound_used": self.dist_bound_used,
            "violations_stated": self.violations_stated,
            "violations_proof": self.violations_proof,
            "violations_thm16": self.violations_thm16,
        }


def prop71_check(
    e: CFExpansion,
    n: int,
    a_bound: float = 1.0,
    dist_bound: float = 2.0,
    rk: Optional[float] = None,
) -> Prop71Report:
    """Evaluate sqrt(x1) + sqrt(x2) >= bound over every enumerated candidate.

    x1 scales the linear form |conj(P) - conj(R) u + conj(Q) v| by the
    convergent's, x2 scales |Q| by |q_n|.  Both the stated bound
    1 / (|v_n| R) and the proof-side quantity
    |(q_{n+1} + q~_{n+1} u_{n+1} - q_n v_{n+1}) / q_n|^(1/2) are compared;
    discrepancies are logged, not adjudicated.  Also checks the
    consequence that candidates with |Q| below |q_n| / (2 rad^2 R^2)
    cannot beat the convergent.
    """
    if n + 1 > e.depth:
        raise IndexError("prop71_check requires n + 1 <= depth")
    rk = rk if rk is not None else RK_KD
    h0 = e.iterates[0]
    uh, vh = _point_floats(h0)

    qn, rn, pn = e.first_column(n)
    q_abs = _abs_gi(qn)
    base = abs(
        _gi_c(pn).conjugate() - _gi_c(rn).conjugate() * uh + _gi_c(qn).conjugate() * vh
    )
    vn_abs = _v_abs(e, n)
    bound_stated = 1.0 / (vn_abs * rk) if vn_abs > 0 else math.inf

    bound_proof = None
    qn1 = _gi_c(e.first_column(n + 1)[0])
    fqn1 = _gi_c(e.second_column(n + 1)[0])
    un1 = _u_complex(e, n + 1)
    vn1 = _v_complex(e, n + 1)
    proof_num = qn1 + fqn1 * un1 - _gi_c(qn) * vn1
    bound_proof = math.sqrt(abs(proof_num) / q_abs)

    d_n4 = _cand_distance_pow4(h0, (qn, rn, pn))
    thm16_cutoff = q_abs / (2.0 * RAD_KD**2 * rk**2)

    # violation of sqrt(x1) + sqrt(x2) >= bound requires, at distance d and
    # denominator Q:  sqrt|Q| (d / sqrt(base) + 1 / sqrt|q_n|) < bound,
    # i.e. d < sqrt(base) (bound / sqrt|Q| - 1 / sqrt|q_n|); everything
    # farther satisfies the inequality outright, so the search radius can
    # shrink with |Q|.  The no-closer-point check only needs d <= d_n for
    # |Q| below its cutoff.
    bound_max = max(
        bound_stated if math.isfinite(bound_stated) else 0.0, bound_proof
    )
    d_n = float(d_n4) ** 0.25
    sqrt_base = math.sqrt(base)
    inv_sqrt_qn = 1.0 / math.sqrt(q_abs)

    def _dist_fn(q_norm: int) -> float:
        cut = sqrt_base * (bound_max / q_norm**0.25 - inv_sqrt_qn) * 1.001
        if q_norm**0.5 < thm16_cutoff:
            cut = max(cut, d_n * 1.001)
        return cut

    dist_fn = _dist_fn if base > 0 and math.isfinite(bound_stated) else None
    dist_used = min(dist_bound, max(_dist_fn(1), 0.0)) if dist_fn else dist_bound

    conv_fold = _fold_unit(qn, rn, pn)
    report = Prop71Report(
        n=n,
        q_abs=q_abs,
        bound_stated=bound_stated,
        bound_proof=bound_proof,
        candidates_checked=0,
        thm16_cutoff=thm16_cutoff,
        dist_bound_used=dist_used,
    )
    for trip in candidate_triples(h0, a_bound * q_abs, dist_bound, dist_fn=dist_fn):
        if trip == conv_fold:
            continue
        report.candidates_checked += 1
        Q, R, P = trip
        num = abs(
            _gi_c(P).conjugate() - _gi_c(R).conjugate() * uh + _gi_c(Q).conjugate() * vh
        )
        x1 = num / base if base > 0 else math.inf
        x2 = math.sqrt(Q.norm()) / q_abs
        s = math.sqrt(x1) + math.sqrt(x2)
        entry = {
            "triple": [str(Q), str(R), str(P)],
            "x1": x1,
            "x2": x2,
            "sum_sqrt": s,
        }
        if s < bound_stated * (1 - 1e-9):
            report.violations_stated.append(dict(entry, bound=bound_stated))
        if s < bound_proof * (1 - 1e-9):
            report.violations_proof.append(dict(entry, bound=bound_proof))
        if math.sqrt(Q.norm()) < thm16_cutoff:
            d4 = _cand_distance_pow4(h0, trip)
            if not d4 > d_n4:
                report.violations_thm16.append(dict(entry, d4=float(d4)))
    return report


def _gi_c(g: GaussInt) -> complex:
    return complex(g.re, g.im)


def _u_complex(e: CFExpansion, i: int) -> complex:
    h = e.iterates[i]
    if h.exact:
        return complex(float(h.u.re()), float(h.u.im()))
    return complex(float(h.u.real), float(h.u.imag))
