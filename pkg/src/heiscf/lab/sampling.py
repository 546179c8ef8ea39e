"""Seeded sampling of the fundamental domain and the Khinchin experiment.

Sampling is by rejection from the box |z| <= 2^(-1/4), |t| <= 2^(-1/2)
in C x R coordinates, which provably contains the Dirichlet domain.
The experiment machinery runs in machine floats: margins are O(1), so
double precision is ample, and the certified path stays available for
cross-checks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from ..domain import Domain
from ..siegel import PrecisionContext, SiegelPoint
from .enumerate import enumerate_rationals_qnorm, kprime_region

__all__ = [
    "nearest_float",
    "sample_K",
    "sample_K_floats",
    "acceptance_stats",
    "KhinchinExperimentReport",
    "khinchin_experiment",
]

_Z_BOUND = 2.0**-0.25
_T_BOUND = 2.0**-0.5
_U_SLACK = 1.3


def nearest_float(u: complex, v: complex) -> tuple[int, int, int]:
    """Double-precision nearest integer point (a, b, c); fast path for experiments."""
    best = None
    for a in range(math.ceil(u.real - _U_SLACK), math.floor(u.real + _U_SLACK) + 1):
        for b in range(math.ceil(u.imag - _U_SLACK), math.floor(u.imag + _U_SLACK) + 1):
            if (a + b) % 2 != 0:
                continue
            du_sq = (u.real - a) ** 2 + (u.imag - b) ** 2
            if du_sq > 1.6:
                continue
            delta = v.imag - (a * u.imag - b * u.real)
            for c in {math.floor(delta), math.ceil(delta)}:
                d4 = (du_sq / 2.0) ** 2 + (delta - c) ** 2
                key = (d4, a, b, c)
                if best is None or key < best:
                    best = key
    return best[1], best[2], best[3]


def sample_K_floats(rng: random.Random) -> tuple[complex, complex]:
    """One uniform sample of K_D as float (u, v) Siegel coordinates."""
    while True:
        zr = rng.uniform(-_Z_BOUND, _Z_BOUND)
        zi = rng.uniform(-_Z_BOUND, _Z_BOUND)
        if zr * zr + zi * zi > _Z_BOUND * _Z_BOUND:
            continue
        t = rng.uniform(-_T_BOUND, _T_BOUND)
        z = complex(zr, zi)
        u = z * complex(1.0, 1.0)
        v = complex(abs(z) ** 2, t)
        if nearest_float(u, v) == (0, 0, 0):
            return u, v


def sample_K(
    rng: random.Random,
    K: Optional[Domain] = None,
    ctx: Optional[PrecisionContext] = None,
) -> SiegelPoint:
    """Uniform sample of K w.r.t. the inherited measure, as a big-float point."""
    del K  # only the Dirichlet domain ships; kept for interface symmetry
    ctx = ctx or PrecisionContext(64)
    u, v = sample_K_floats(rng)
    from mpmath import mpc

    with ctx.work():
        um = mpc(u.real, u.imag)
        vm = mpc(abs(um) ** 2 / 2, v.imag)
        return SiegelPoint(um, vm, ctx)


def acceptance_stats(rng: random.Random, samples: int) -> dict:
    """Acceptance rate of the rejection sampler and the empirical norm sup."""
    accepted = 0
    tried = 0
    max_norm4 = 0.0
    while accepted < samples:
        zr = rng.uniform(-_Z_BOUND, _Z_BOUND)
        zi = rng.uniform(-_Z_BOUND, _Z_BOUND)
        tried += 1
        if zr * zr + zi * zi > _Z_BOUND * _Z_BOUND:
            continue
        t = rng.uniform(-_T_BOUND, _T_BOUND)
        z = complex(zr, zi)
        u = z * complex(1.0, 1.0)
        v = complex(abs(z) ** 2, t)
        if nearest_float(u, v) == (0, 0, 0):
            accepted += 1
            max_norm4 = max(max_norm4, abs(v) ** 2)
    return {
        "samples": accepted,
        "tried": tried,
        "acceptance_rate": accepted / tried,
        "max_gauge_norm": max_norm4**0.25,
    }


@dataclass
class KhinchinExperimentReport:
    C: float
    eps: float
    samples: int
    seed: int
    ranges: list[dict] = field(default_factory=list)

    def fractions(self) -> list[float]:
        return [r["fraction"] for r in self.ranges]

    def as_dict(self) -> dict:
        return {
            "C": self.C,
            "eps": self.eps,
            "samples": self.samples,
            "seed": self.seed,
            "ranges": self.ranges,
        }


@lru_cache(maxsize=8)
def _range_point_arrays(k_lo: int, k_hi: int, C: float, eps: float):
    """Per-dyadic-range arrays of rational planar coordinates and thresholds.

    Rational points are enumerated over the K' box (K thickened by the
    largest relevant phi) in lowest terms.  Cached: the tables depend only
    on the parameters, not the seed.
    """
    delta = min(1.0, C * (2.0**k_lo) ** (-(1.0 + eps) / 2.0))
    region = kprime_region(delta)
    out = []
    for k in range(k_lo, k_hi + 1):
        us, vs, thr4 = [], [], []
        for m in range(2**k, 2 ** (k + 1)):
            enum = enumerate_rationals_qnorm(m, region, lowest_terms=True)
            if not enum.points:
                continue
            phi = C * m ** (-(1.0 + eps) / 2.0)
            for q, r, p in enum.points:
                qc = complex(q.re, q.im)
                us.append(complex(r.re, r.im) / qc)
                vs.append(complex(p.re, p.im) / qc)
                thr4.append(phi**4)
        out.append(
            (
                k,
                np.array(us, dtype=np.complex128),
                np.array(vs, dtype=np.complex128),
                np.array(thr4, dtype=np.float64),
            )
        )
    return tuple(out)


def khinchin_experiment(
    C: float,
    eps: float,
    k_range: tuple[int, int],
    samples: int,
    seed: int,
) -> KhinchinExperimentReport:
    """Fraction of sampled h in K with a phi-good rational in each dyadic range.

    A sample counts for range k if some lowest-terms rational point with
    |q|^2 in [2^k, 2^(k+1)) lies within C |q|^(-1-eps) of it.  Sampling is
    reproducible: each sample uses a sub-seed derived from the master seed.
    """
    k_lo, k_hi = k_range
    tables = _range_point_arrays(k_lo, k_hi, C, eps)
    master = random.Random(seed)
    sub_seeds = [master.getrandbits(64) for _ in range(samples)]
    hits = {k: 0 for k, *_ in tables}
    for s in sub_seeds:
        u, v = sample_K_floats(random.Random(s))
        for k, us, vs, thr4 in tables:
            if len(us) == 0:
                continue
            w = np.conj(vs) - np.conj(us) * u + v
            d4 = np.abs(w) ** 2
            if bool(np.any(d4 <= thr4)):
                hits[k] += 1
    report = KhinchinExperimentReport(C=C, eps=eps, samples=samples, seed=seed)
    for k, us, vs, _ in tables:
        report.ranges.append(
            {
                "k": k,
                "m_lo": 2**k,
                "m_hi": 2 ** (k + 1) - 1,
                "points": int(len(us)),
                "hits": hits[k],
                "fraction": hits[k] / samples if samples else 0.0,
            }
        )
    return report
