"""Snijders-Borgatti vertex bootstrap on adjacency matrices.

Each replicate resamples vertex indices with replacement and takes the
induced matrix; dyads between two copies of the same vertex have no observed
value, so they are filled with a random entry from that vertex's own row.
This keeps every replicate a valid zero-diagonal binary matrix of the same
dimension and directedness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .graph import AdjacencyMatrix
from .intervals import ConfidenceInterval, percentile_ci
from .rng import as_generator

# Guard for zero bootstrap SEs in two-sample z statistics (degenerate
# replicate distributions on empty/complete graphs).
SE_EPSILON = 1e-12

STATISTICS = ("density", "mean_degree", "transitivity")


def matrix_density(a: AdjacencyMatrix) -> float:
    """Fraction of realized dyads; same formula covers directed and undirected."""
    n = a.n
    if n < 2:
        raise ParameterError("density needs n >= 2")
    return float(a.entries.sum()) / (n * (n - 1))


def matrix_mean_degree(a: AdjacencyMatrix) -> float:
    """Mean degree (undirected) or mean in-degree (directed)."""
    if a.n < 1:
        raise ParameterError("mean degree needs n >= 1")
    return float(a.entries.sum()) / a.n


def matrix_transitivity(a: AdjacencyMatrix) -> float:
    """Global transitivity 3 * triangles / connected triples; symmetric input only."""
    if a.directed:
        raise ParameterError("transitivity is defined here for undirected (symmetric) matrices")
    m = a.entries.astype(np.float64)
    closed = float(np.trace(m @ m @ m))  # 6 * triangles
    deg = m.sum(axis=1)
    triples2 = float(np.sum(deg * (deg - 1)))  # 2 * connected triples
    if triples2 == 0:
        return 0.0
    return closed / triples2


_STAT_FN = {
    "density": matrix_density,
    "mean_degree": matrix_mean_degree,
    "transitivity": matrix_transitivity,
}


def _duplicate_dyads(s: np.ndarray) -> list[tuple[int, int]]:
    """Unordered index pairs (i < j) with s[i] == s[j], in lexicographic order."""
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(s.tolist()):
        groups.setdefault(v, []).append(i)
    pairs = []
    for positions in groups.values():
        if len(positions) > 1:
            for a in range(len(positions)):
                for b in range(a + 1, len(positions)):
                    pairs.append((positions[a], positions[b]))
    pairs.sort()
    return pairs


def _replicate(entries: np.ndarray, directed: bool, rng) -> tuple[np.ndarray, np.ndarray]:
    """One vertex-bootstrap resample; returns (matrix, chosen indices)."""
    n = entries.shape[0]
    s = rng.integers(0, n, size=n)
    star = entries[np.ix_(s, s)].copy()
    pairs = _duplicate_dyads(s)
    if pairs and n > 1:
        fills_per_pair = 2 if directed else 1
        raw = rng.integers(0, n - 1, size=(len(pairs), fills_per_pair))
        for idx, (i, j) in enumerate(pairs):
            v = int(s[i])
            r = int(raw[idx, 0])
            r += r >= v  # uniform over vertices other than v
            star[i, j] = entries[v, r]
            if directed:
                r2 = int(raw[idx, 1])
                r2 += r2 >= v
                star[j, i] = entries[v, r2]
            else:
                star[j, i] = star[i, j]
    np.fill_diagonal(star, 0)
    return star, s


def _iter_replicates(a: AdjacencyMatrix, B: int, rng):
    if B < 1:
        raise ParameterError("B must be >= 1")
    if a.n < 1:
        raise ParameterError("cannot bootstrap an empty matrix")
    rng = as_generator(rng)
    for _ in range(B):
        yield _replicate(a.entries, a.directed, rng)


def vertboot(a: AdjacencyMatrix, B: int, rng=None) -> list[AdjacencyMatrix]:
    """B bootstrapped adjacency matrices (induced resample + random dyad fill)."""
    return [AdjacencyMatrix(star, directed=a.directed) for star, _ in _iter_replicates(a, B, rng)]


@dataclass(frozen=True)
class StatBootstrap:
    stat: str
    observed: float
    replicates: np.ndarray
    se: float
    ci: ConfidenceInterval

    def to_dict(self) -> dict:
        return {"stat": self.stat, "observed": self.observed, "se": self.se, "ci": self.ci.to_dict()}


def bootstrap_statistic(a: AdjacencyMatrix, B: int, stat: str, rng=None, level: float = 0.95) -> StatBootstrap:
    """Bootstrap a whole-network statistic: replicates, percentile CI, and SE.

    Replicate matrices are streamed, not stored, so this stays usable at
    matrix sizes where keeping B copies would not.
    """
    if stat not in _STAT_FN:
        raise ParameterError(f"unknown statistic {stat!r}; choose from {STATISTICS}")
    fn = _STAT_FN[stat]
    observed = fn(a)  # validates stat/directedness combination up front
    values = np.empty(max(B, 0), dtype=float)
    for i, (star, _) in enumerate(_iter_replicates(a, B, rng)):
        values[i] = fn(_wrap(star, a.directed))
    se = float(values.std(ddof=1)) if B > 1 else 0.0
    return StatBootstrap(stat, observed, values, se, percentile_ci(values, level, observed))


def _wrap(entries: np.ndarray, directed: bool) -> AdjacencyMatrix:
    # bypass validation for internal replicates (already valid by construction)
    obj = object.__new__(AdjacencyMatrix)
    object.__setattr__(obj, "entries", entries)
    object.__setattr__(obj, "directed", directed)
    return obj


@dataclass(frozen=True)
class DensityComparison:
    index_a: int
    index_b: int
    density_a: float
    density_b: float
    se_a: float
    se_b: float
    z: float
    p_value: float
    degenerate_se: bool

    def to_dict(self) -> dict:
        return {
            "a": self.index_a,
            "b": self.index_b,
            "density_a": self.density_a,
            "density_b": self.density_b,
            "se_a": self.se_a,
            "se_b": self.se_b,
            "z": self.z,
            "p_value": self.p_value,
            "degenerate_se": self.degenerate_se,
        }


def compare_densities(matrices, B: int, rng=None, level: float = 0.95) -> list[DensityComparison]:
    """Pairwise two-sample z tests for density across T >= 2 networks.

    SEs come from independent vertex-bootstrap runs per network; zero SEs
    (constant replicates) are guarded with a tiny epsilon and flagged.
    """
    matrices = list(matrices)
    if len(matrices) < 2:
        raise ParameterError("compare_densities needs at least two matrices")
    for a in matrices:
        if a.n < 2:
            raise ParameterError("all matrices must have n >= 2")
    rng = as_generator(rng)
    runs = [bootstrap_statistic(a, B, "density", rng, level) for a in matrices]
    out = []
    for i in range(len(runs)):
        for j in range(i + 1, len(runs)):
            diff = runs[i].observed - runs[j].observed
            variance = runs[i].se ** 2 + runs[j].se ** 2
            degenerate = variance < SE_EPSILON**2
            denom = math.sqrt(max(variance, SE_EPSILON**2))
            z = diff / denom
            p = math.erfc(abs(z) / math.sqrt(2.0))
            out.append(
                DensityComparison(i, j, runs[i].observed, runs[j].observed, runs[i].se, runs[j].se, z, p, degenerate)
            )
    return out
