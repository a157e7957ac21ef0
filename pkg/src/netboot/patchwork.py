"""Weighted bootstrap of patch data, intervals, and cross-validated selection.

Seed degrees are resampled uniformly; non-seed degrees are resampled with
probability proportional to 1/degree, which undoes the size bias of snowball
inclusion.  Cross-validation scores each (seeds, waves) combination by how
close the proportion of proxy statistics inside its interval comes to the
nominal level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParameterError
from .estimators import DegreeDistributionEstimate, lsmi_dd
from .graph import Graph
from .intervals import ConfidenceInterval, bootstrap_ci, percentile_ci
from .lsmi import lsmi_union, patch_view
from .rng import as_generator


@dataclass(frozen=True)
class BootstrapDistribution:
    """B bootstrap replicates of the degree-distribution estimate.

    ``fkb`` is (1 + k_max) x B with each column a resampled pmf; ``mub`` are
    the matching mean degrees.
    """

    fkb: np.ndarray
    mub: np.ndarray

    def __post_init__(self):
        for name in ("fkb", "mub"):
            arr = np.asarray(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_replicates(self) -> int:
        return self.mub.size


def _replicate_counts(values: np.ndarray, draws: np.ndarray, k_max: int) -> np.ndarray:
    """Per-replicate degree counts, shape (k_max + 1, B); draws is (B, size)."""
    b, size = draws.shape
    picked = values[draws].ravel()
    flat = picked + (k_max + 1) * np.repeat(np.arange(b), size)
    return np.bincount(flat, minlength=(k_max + 1) * b).reshape(b, k_max + 1).T.astype(float)


def boot_dd(est: DegreeDistributionEstimate, B: int, rng=None) -> BootstrapDistribution:
    """Resample the patch degree multisets B times and recompute the estimate.

    Each replicate draws |{d_s}| seed degrees uniformly with replacement and
    |{d_ns}| non-seed degrees with replacement with probability proportional
    to 1/degree; the replicate pmf then combines them at equal weight.
    """
    if B < 1:
        raise ParameterError("B must be >= 1")
    d_s = np.asarray(est.seed_degrees, dtype=np.int64)
    d_ns = np.asarray(est.nonseed_degrees, dtype=np.int64)
    if d_s.size == 0:
        raise ParameterError("cannot bootstrap an estimate with no seed degrees")
    rng = as_generator(rng)
    k_max = est.k_max
    n_s, n_ns = d_s.size, d_ns.size

    seed_draws = rng.integers(0, n_s, size=(B, n_s))
    counts_s = _replicate_counts(d_s, seed_draws, k_max)

    if n_ns:
        weights = 1.0 / d_ns
        cum = np.cumsum(weights / weights.sum())
        u = rng.random((B, n_ns))
        positions = np.minimum(np.searchsorted(cum, u, side="right"), n_ns - 1)
        counts_ns = _replicate_counts(d_ns, positions, k_max)
    else:
        counts_ns = np.zeros_like(counts_s)

    p0_star = counts_s[0] / n_s
    fkb = (counts_s + (1.0 - p0_star)[None, :] * counts_ns) / (n_s + n_ns)
    fkb[0] = p0_star
    mub = np.arange(k_max + 1, dtype=float) @ fkb
    return BootstrapDistribution(fkb, mub)


@dataclass(frozen=True)
class BootCi:
    """Intervals for the mean degree and for each f(k)."""

    mu: ConfidenceInterval
    fk: tuple[ConfidenceInterval, ...]


def boot_ci(
    boot: BootstrapDistribution,
    est: DegreeDistributionEstimate,
    level: float = 0.95,
    method: str = "percentile",
) -> BootCi:
    """Confidence intervals from the bootstrap distribution (percentile or basic)."""
    if boot.n_replicates < 2:
        raise ParameterError("interval construction needs at least 2 replicates")
    mu_ci = bootstrap_ci(boot.mub, level, est.mu, method)
    fk_cis = tuple(
        bootstrap_ci(boot.fkb[k], level, float(est.fk[k]), method) for k in range(boot.fkb.shape[0])
    )
    return BootCi(mu_ci, fk_cis)


@dataclass(frozen=True)
class CvResult:
    """Outcome of cross-validated seed-wave selection."""

    bci: ConfidenceInterval
    estimate: float
    best_combination: tuple[int, int]  # (n_seed, n_wave)
    seeds: tuple[int, ...]
    coverage_table: tuple[dict, ...]
    intervals: dict = field(repr=False, default_factory=dict)  # (n_seed, n_wave) -> ConfidenceInterval

    def to_dict(self) -> dict:
        return {
            "bci": self.bci.to_dict(),
            "estimate": self.estimate,
            "best_combination": {"n_seed": self.best_combination[0], "n_wave": self.best_combination[1]},
            "seeds": list(self.seeds),
            "coverage_table": [dict(row) for row in self.coverage_table],
        }


def select_best(rows, level: float) -> tuple[int, int]:
    """Pick the (n_seed, n_wave) whose proxy coverage is closest to the level.

    Ties go to fewer waves, then fewer seeds: cheaper patches consume less
    of the network.  The choice depends only on coverage proportions, so it
    is invariant to any common rescaling of statistics and endpoints.
    """
    best = min(rows, key=lambda r: (abs(r["coverage"] - level), r["n_wave"], r["n_seed"]))
    return best["n_seed"], best["n_wave"]


def lsmi_cv(
    g: Graph,
    n_seeds,
    n_wave: int,
    B: int = 100,
    level: float = 0.95,
    proxy_reps: int = 19,
    proxy_size: int = 30,
    method: str = "percentile",
    proxy_replace: Optional[bool] = None,
    repeats: int = 1,
    rng=None,
) -> CvResult:
    """Cross-validated patchwork bootstrap interval for the mean degree.

    Grows one big patch at (max seeds, n_wave), carves out every seed-wave
    combination, bootstraps each, and scores the resulting intervals by the
    proportion of proxy mean degrees they contain.  Proxy samples are drawn
    from the distinct vertices already observed in the big patch, without
    replacement unless the pool is smaller than ``proxy_size`` (or forced
    via ``proxy_replace``).

    With ``repeats`` > 1, independent big patches are grown and each
    combination is scored by its average proxy coverage; the returned
    interval comes from the first patch at the selected combination.
    """
    n_seeds = sorted(set(int(b) for b in n_seeds))
    if not n_seeds:
        raise ParameterError("n_seeds must be nonempty")
    if B < 1:
        raise ParameterError("B must be >= 1")
    if proxy_reps < 1 or proxy_size < 1:
        raise ParameterError("proxy_reps and proxy_size must be >= 1")
    if repeats < 1:
        raise ParameterError("repeats must be >= 1")
    rng = as_generator(rng)
    combos = [(b, w) for b in n_seeds for w in range(1, n_wave + 1)]

    coverage = np.zeros(len(combos))
    widths = np.zeros(len(combos))
    first_pass: dict[tuple[int, int], tuple[ConfidenceInterval, float]] = {}
    first_nest = None

    for rep in range(repeats):
        nest = lsmi_union(g, n_seeds, n_wave, rng)
        if rep == 0:
            first_nest = nest

        pool = nest.big_patch.vertex_degrees()
        if not pool:
            raise ParameterError("proxy pool is empty")
        pool_degrees = np.array([pool[v] for v in sorted(pool)], dtype=float)
        replace = proxy_replace if proxy_replace is not None else pool_degrees.size < proxy_size
        if not replace and pool_degrees.size < proxy_size:
            raise ParameterError(
                f"proxy pool has {pool_degrees.size} vertices, cannot draw {proxy_size} without replacement"
            )
        proxies = np.array(
            [pool_degrees[rng.choice(pool_degrees.size, size=proxy_size, replace=replace)].mean() for _ in range(proxy_reps)]
        )

        streams = rng.spawn(len(combos))
        for j, (b, w) in enumerate(combos):
            est = lsmi_dd(patch_view(nest, b, w))
            boot = boot_dd(est, B, streams[j])
            ci = bootstrap_ci(boot.mub, level, est.mu, method)
            coverage[j] += np.mean((proxies >= ci.lower) & (proxies <= ci.upper)) / repeats
            widths[j] += ci.width / repeats
            if rep == 0:
                first_pass[(b, w)] = (ci, est.mu)

    rows = tuple(
        {"n_seed": b, "n_wave": w, "coverage": float(coverage[j]), "width": float(widths[j])}
        for j, (b, w) in enumerate(combos)
    )
    best = select_best(rows, level)
    best_ci, best_mu = first_pass[best]
    return CvResult(
        bci=best_ci,
        estimate=best_mu,
        best_combination=best,
        seeds=first_nest.subset_for(best[0]),
        coverage_table=rows,
        intervals={key: ci for key, (ci, _) in first_pass.items()},
    )
