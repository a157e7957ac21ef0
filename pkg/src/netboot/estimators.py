"""Point estimation of the degree distribution from a patch.

Seed degrees enter the estimate at face value; non-seed degrees are
downweighted by 1/k because a degree-k vertex is k times as likely to be
pulled into a snowball sample.  The estimate retains both degree multisets
so the bootstrap can resample without re-walking the patch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .lsmi import Patch


@dataclass(frozen=True)
class DegreeDistributionEstimate:
    """fk[k] estimates the probability of degree k, for k = 0..max observed."""

    fk: np.ndarray
    mu: float
    p0: float
    mu_s: float
    seed_degrees: np.ndarray  # multiset {d_s}
    nonseed_degrees: np.ndarray  # multiset {d_ns}, one entry per inclusion
    n_seed: int
    n_wave: int

    def __post_init__(self):
        for name in ("fk", "seed_degrees", "nonseed_degrees"):
            arr = np.asarray(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def k_max(self) -> int:
        return len(self.fk) - 1

    def to_dict(self) -> dict:
        return {
            "fk": [float(x) for x in self.fk],
            "mu": self.mu,
            "p0": self.p0,
            "n_seed": self.n_seed,
            "n_wave": self.n_wave,
        }


def lsmi_dd(patch: Patch) -> DegreeDistributionEstimate:
    """Estimate the degree distribution and mean degree from one patch.

    f(0) is the proportion of zero-degree seeds; for k >= 1 seed counts and
    1/k-weighted non-seed counts are combined so that the whole vector sums
    to one by construction (asserted, not renormalized).
    """
    d_s = np.asarray(patch.seed_degrees(), dtype=np.int64)
    if d_s.size == 0:
        raise ParameterError("patch has no seeds")
    d_ns = np.asarray(patch.nonseed_degrees(), dtype=np.int64)

    n_s = d_s.size
    p0 = float(np.count_nonzero(d_s == 0)) / n_s
    mu_s = float(d_s.mean())
    k_max = int(max(d_s.max(initial=0), d_ns.max(initial=0)))

    counts_s = np.bincount(d_s, minlength=k_max + 1).astype(float)
    counts_ns = np.bincount(d_ns, minlength=k_max + 1).astype(float)

    ks = np.arange(k_max + 1, dtype=float)
    inv_k = np.zeros(k_max + 1)
    inv_k[1:] = 1.0 / ks[1:]
    weighted_ns = counts_ns * inv_k  # non-seeds never have degree 0

    denom = n_s + mu_s * weighted_ns.sum()
    fk = (counts_s + (1.0 - p0) * mu_s * weighted_ns) / denom
    fk[0] = p0

    total = fk.sum()
    assert abs(total - 1.0) < 1e-12, f"estimate does not normalize: sum={total!r}"
    mu = float(np.sum(ks * fk))
    return DegreeDistributionEstimate(fk, mu, p0, mu_s, d_s, d_ns, patch.n_seed, patch.n_wave)


def density_from_mu(mu: float, n: int) -> float:
    """Convert a mean-degree value to a density given the graph order."""
    if n < 2:
        raise ParameterError("density needs n >= 2")
    return mu / (n - 1)
