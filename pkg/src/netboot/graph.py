"""Simple undirected graphs: data model, file ingestion, statistics, perturbation.

The :class:`Graph` type is strictly undirected and simple (no self-loops, no
parallel edges).  Directed data is only handled in :class:`AdjacencyMatrix`
form, which is what the vertex bootstrap operates on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ParseError
from .rng import as_generator


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph over vertex ids 0..n-1.

    ``adjacency[v]`` is the ascending tuple of neighbors of ``v``; the
    structure is symmetric (u in adjacency[v] iff v in adjacency[u]) and
    every degree sum equals twice the edge count.
    """

    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    def edges(self):
        """Yield each edge once as (u, v) with u < v, in ascending order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        i = np.searchsorted(nbrs, v) if nbrs else 0
        return bool(nbrs) and i < len(nbrs) and nbrs[i] == v

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Strict: raises ParameterError on out-of-range ids, self-loops, or
        duplicate edges.  Loaders and generators must clean their input
        first (and report what they dropped).
        """
        if n < 0:
            raise ParameterError("vertex count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ParameterError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls(tuple(tuple(sorted(nbrs)) for nbrs in adj))


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Binary adjacency matrix with zero diagonal.

    ``entries`` is an (n, n) uint8 array, made read-only on construction so
    matrices can be shared across concurrent bootstrap replicates.
    """

    entries: np.ndarray
    directed: bool = False

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError(f"adjacency matrix must be square, got {a.shape}")
        if a.size and a.max() > 1:
            raise ParameterError("adjacency matrix entries must be 0 or 1")
        if np.any(np.diagonal(a)):
            raise ParameterError("adjacency matrix diagonal must be zero")
        if not self.directed and not np.array_equal(a, a.T):
            raise ParameterError("undirected adjacency matrix must be symmetric")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class GraphStats:
    order: int
    size: int
    density: float
    mean_degree: float
    transitivity: float

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "size": self.size,
            "density": self.density,
            "mean_degree": self.mean_degree,
            "transitivity": self.transitivity,
        }


@dataclass(frozen=True)
class FragilityFit:
    """Exponential fit to the degree CCDF: ln CCDF(k) = intercept - k / gamma."""

    gamma: float
    intercept: float
    k_range: tuple[int, int]


@dataclass(frozen=True)
class EdgeListResult:
    graph: Graph
    vertex_ids: tuple[int, ...]  # position i -> original id, first-appearance order
    self_loops_dropped: int
    duplicate_edges_dropped: int


@dataclass(frozen=True)
class MatrixLoadResult:
    matrix: AdjacencyMatrix
    diagonal_dropped: int  # nonzero diagonal entries forced to zero


def load_edge_list(lines) -> EdgeListResult:
    """Parse an edge list (two integer ids per line, ``#`` comments allowed).

    Vertex ids are remapped to 0..n-1 in first-appearance order.  Self-loops
    and duplicate edges are dropped, with counts reported in the result.
    """
    index: dict[int, int] = {}
    order: list[int] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0

    def intern(orig: int) -> int:
        if orig not in index:
            index[orig] = len(order)
            order.append(orig)
        return index[orig]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two vertex ids, got {len(tokens)} tokens")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id in {tokens!r}") from None
        if a < 0 or b < 0:
            raise ParseError(f"line {lineno}: vertex ids must be non-negative")
        u, v = intern(a), intern(b)
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)

    graph = Graph.from_edges(len(order), edges)
    return EdgeListResult(graph, tuple(order), self_loops, duplicates)


def load_adjacency_matrix(lines, skip: int = 0, directed: bool = False) -> MatrixLoadResult:
    """Parse whitespace-separated 0/1 tokens (row-major) into a matrix.

    ``skip`` leading tokens are discarded, which covers header-prefixed files
    such as sociomatrix dumps.  The remaining token count must be a perfect
    square.  Nonzero diagonal entries are forced to zero and counted.
    """
    if skip < 0:
        raise ParameterError("skip must be non-negative")
    text = lines if isinstance(lines, str) else "".join(lines)
    tokens = text.split()[skip:]
    count = len(tokens)
    n = math.isqrt(count)
    if n * n != count or count == 0:
        raise ParseError(f"token count {count} after skipping {skip} is not a positive perfect square")
    values = np.empty(count, dtype=np.uint8)
    for i, tok in enumerate(tokens):
        if tok == "0":
            values[i] = 0
        elif tok == "1":
            values[i] = 1
        else:
            raise ParseError(f"matrix token {i + skip} is {tok!r}, expected 0 or 1")
    entries = values.reshape(n, n)
    diag = int(np.count_nonzero(np.diagonal(entries)))
    if diag:
        np.fill_diagonal(entries, 0)
    if not directed and not np.array_equal(entries, entries.T):
        raise ParseError("matrix is not symmetric; pass directed=True for directed data")
    return MatrixLoadResult(AdjacencyMatrix(entries, directed=directed), diag)


def graph_stats(g: Graph) -> GraphStats:
    """Order, size, density, mean degree, and global transitivity of ``g``."""
    n = g.n
    if n < 1:
        raise ParameterError("graph_stats requires at least one vertex")
    m = g.m
    mean_degree = 2.0 * m / n
    density = mean_degree / (n - 1) if n > 1 else 0.0
    return GraphStats(n, m, density, mean_degree, _transitivity(g))


def _transitivity(g: Graph) -> float:
    # 3 * (#triangles) / (#connected triples); each edge's common-neighbor
    # count sums to 3 * triangles, and sum d(d-1)/2 counts the triples.
    neighbor_sets = [set(nbrs) for nbrs in g.adjacency]
    closed = 0
    for u, v in g.edges():
        su, sv = neighbor_sets[u], neighbor_sets[v]
        if len(sv) < len(su):
            su, sv = sv, su
        closed += sum(1 for w in su if w in sv)
    triples = sum(d * (d - 1) for d in map(len, g.adjacency)) // 2
    if triples == 0:
        return 0.0
    return closed / triples


def fit_exponential_ccdf(ks, ccdf) -> tuple[float, float]:
    """Least-squares fit of ln ccdf = intercept - k / gamma; returns (gamma, intercept).

    This is the regression core of :func:`gamma_fragility`, split out so the
    exact-recovery case (truly exponential ccdf input) can be checked
    directly.
    """
    ks = np.asarray(ks, dtype=float)
    ccdf = np.asarray(ccdf, dtype=float)
    if ks.size < 2:
        raise ParameterError("exponential CCDF fit needs at least two points")
    if np.any(ccdf <= 0):
        raise ParameterError("CCDF values must be positive")
    slope, intercept = np.polyfit(ks, np.log(ccdf), 1)
    if slope >= 0:
        raise ParameterError("degenerate degree CCDF: non-decreasing log fit")
    return -1.0 / slope, float(intercept)


def gamma_fragility(g: Graph) -> FragilityFit:
    """Characteristic scale of an exponential fit to the degree CCDF.

    CCDF(k) is the fraction of vertices with degree >= k; the fit runs over
    all k >= 1 with positive CCDF.  gamma < 1.5 is the conventional
    robust/fragile cutoff for infrastructure networks.
    """
    degs = g.degrees()
    positive = np.unique(degs[degs > 0])
    if positive.size < 2:
        raise ParameterError("gamma fit needs at least two distinct positive degrees")
    k_max = int(degs.max())
    counts = np.bincount(degs, minlength=k_max + 1)
    at_least = np.cumsum(counts[::-1])[::-1]  # at_least[k] = #vertices with degree >= k
    ks = np.arange(1, k_max + 1)
    ccdf = at_least[1:] / g.n
    keep = ccdf > 0
    gamma, intercept = fit_exponential_ccdf(ks[keep], ccdf[keep])
    return FragilityFit(gamma, intercept, (int(ks[keep][0]), int(ks[keep][-1])))


@dataclass(frozen=True)
class RemovalResult:
    graph: Graph
    removed: tuple[int, ...]  # original ids of deleted vertices, ascending
    mapping: dict  # surviving original id -> new contiguous id


def remove_vertices(g: Graph, fraction: float, rng=None) -> RemovalResult:
    """Delete floor(fraction * n) uniformly chosen vertices and their edges.

    Survivors are relabeled contiguously preserving their original order.
    """
    if not 0 <= fraction < 1:
        raise ParameterError(f"removal fraction must be in [0, 1), got {fraction}")
    rng = as_generator(rng)
    n_remove = int(fraction * g.n)
    if n_remove == 0:
        return RemovalResult(g, (), {v: v for v in range(g.n)})
    removed = np.sort(rng.choice(g.n, size=n_remove, replace=False))
    gone = set(int(v) for v in removed)
    mapping = {}
    for v in range(g.n):
        if v not in gone:
            mapping[v] = len(mapping)
    edges = [(mapping[u], mapping[v]) for u, v in g.edges() if u not in gone and v not in gone]
    return RemovalResult(Graph.from_edges(len(mapping), edges), tuple(int(v) for v in removed), mapping)


def graph_to_matrix(g: Graph) -> AdjacencyMatrix:
    entries = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges():
        entries[u, v] = 1
        entries[v, u] = 1
    return AdjacencyMatrix(entries, directed=False)


def matrix_to_graph(a: AdjacencyMatrix) -> Graph:
    if a.directed:
        raise ParameterError("cannot build an undirected Graph from a directed matrix")
    us, vs = np.nonzero(np.triu(a.entries, k=1))
    return Graph.from_edges(a.n, zip(us.tolist(), vs.tolist()))
