"""Labeled snowball sampling with multiple inclusions (LSMI).

A patch is a bag of snowball samples grown independently around randomly
chosen seed vertices.  Growth follows previously unused edges, so a vertex
can enter a wave once per distinct edge leading to it; every sampled vertex
carries its recorded degree so that downstream estimation never needs to
touch the graph again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError
from .graph import Graph
from .rng import as_generator


@dataclass(frozen=True)
class Inclusion:
    """One vertex inclusion within a wave."""

    vertex: int
    degree: int
    via: Optional[tuple[int, int]] = None  # (parent, vertex) edge that pulled it in


@dataclass(frozen=True)
class Lsmi:
    """A single snowball sample: seed plus waves of non-seed inclusions.

    ``waves[w]`` holds wave w + 1; wave 0 is the seed itself.  Within one
    Lsmi each graph edge is used at most once, so the total number of
    inclusions equals the number of used edges.
    """

    seed: int
    seed_degree: int
    waves: tuple[tuple[Inclusion, ...], ...]

    @property
    def n_wave(self) -> int:
        return len(self.waves)

    def truncated(self, n_wave: int) -> "Lsmi":
        return Lsmi(self.seed, self.seed_degree, self.waves[:n_wave])

    def nonseed_degrees(self) -> list[int]:
        return [inc.degree for wave in self.waves for inc in wave]


@dataclass(frozen=True)
class Patch:
    """A bag of independently grown Lsmis, the unit of patchwork estimation."""

    lsmis: tuple[Lsmi, ...]
    n_wave: int

    @property
    def n_seed(self) -> int:
        return len(self.lsmis)

    def seed_degrees(self) -> list[int]:
        return [l.seed_degree for l in self.lsmis]

    def nonseed_degrees(self) -> list[int]:
        """Degrees of all non-seed inclusions, with multiplicity."""
        out: list[int] = []
        for l in self.lsmis:
            out.extend(l.nonseed_degrees())
        return out

    def vertex_degrees(self) -> dict[int, int]:
        """Distinct sampled vertices (seeds and non-seeds) with their degrees."""
        seen: dict[int, int] = {}
        for l in self.lsmis:
            seen[l.seed] = l.seed_degree
            for wave in l.waves:
                for inc in wave:
                    seen[inc.vertex] = inc.degree
        return seen

    def to_dict(self) -> dict:
        return {
            "n_seed": self.n_seed,
            "n_wave": self.n_wave,
            "lsmis": [
                {
                    "seed": l.seed,
                    "seed_degree": l.seed_degree,
                    "waves": [[{"id": inc.vertex, "degree": inc.degree} for inc in wave] for wave in l.waves],
                }
                for l in self.lsmis
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Patch":
        lsmis = tuple(
            Lsmi(
                entry["seed"],
                entry["seed_degree"],
                tuple(tuple(Inclusion(inc["id"], inc["degree"]) for inc in wave) for wave in entry["waves"]),
            )
            for entry in data["lsmis"]
        )
        return cls(lsmis, data["n_wave"])


@dataclass(frozen=True)
class SeedNest:
    """A big patch plus nested seed subsets for the smaller seed counts.

    ``seed_subsets`` is ordered by decreasing size; each subset is contained
    in the previous (larger) one, so patches for every requested seed count
    can be carved out of the one big patch without touching the graph again.
    """

    big_patch: Patch
    seed_subsets: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.seed_subsets)

    def subset_for(self, n_seed: int) -> tuple[int, ...]:
        for subset in self.seed_subsets:
            if len(subset) == n_seed:
                return subset
        raise ParameterError(f"no seed subset of size {n_seed}; available sizes {self.sizes}")


def sample_seeds(g: Graph, n_seed: int, rng=None) -> list[int]:
    """Sample n_seed distinct vertices uniformly without replacement."""
    if not 1 <= n_seed <= g.n:
        raise ParameterError(f"n_seed must be in 1..{g.n}, got {n_seed}")
    rng = as_generator(rng)
    return [int(v) for v in rng.choice(g.n, size=n_seed, replace=False)]


def grow_lsmi(g: Graph, seed: int, n_wave: int) -> Lsmi:
    """Grow one snowball sample deterministically around ``seed``.

    Within each wave inclusions are processed in insertion order and their
    incident edges ascending by neighbor id; every not-yet-used edge
    contributes one inclusion of its far endpoint to the next wave.  Growth
    consumes no randomness, so truncating a deep Lsmi equals growing a
    shallow one.
    """
    if not 0 <= seed < g.n:
        raise ParameterError(f"seed {seed} out of range for n={g.n}")
    if n_wave < 0:
        raise ParameterError("n_wave must be >= 0")
    used: set[tuple[int, int]] = set()
    waves: list[tuple[Inclusion, ...]] = []
    frontier = [seed]
    for _ in range(n_wave):
        nxt: list[Inclusion] = []
        for v in frontier:
            for nb in g.adjacency[v]:
                edge = (v, nb) if v < nb else (nb, v)
                if edge not in used:
                    used.add(edge)
                    nxt.append(Inclusion(nb, g.degree(nb), (v, nb)))
        waves.append(tuple(nxt))
        frontier = [inc.vertex for inc in nxt]
    return Lsmi(seed, g.degree(seed), tuple(waves))


def lsmi(g: Graph, n_seed: Optional[int] = None, seeds=None, n_wave: int = 1, rng=None) -> Patch:
    """Assemble a patch from explicit seeds or n_seed random ones.

    With explicit seeds no randomness is consumed, which makes targeted
    patches (a particular ego, say) byte-reproducible by construction.
    """
    if (n_seed is None) == (seeds is None):
        raise ParameterError("pass exactly one of n_seed or seeds")
    if seeds is None:
        seeds = sample_seeds(g, n_seed, rng)
    else:
        seeds = [int(s) for s in seeds]
        if len(set(seeds)) != len(seeds):
            raise ParameterError("seeds must be distinct")
        for s in seeds:
            if not 0 <= s < g.n:
                raise ParameterError(f"seed {s} out of range for n={g.n}")
    return Patch(tuple(grow_lsmi(g, s, n_wave) for s in seeds), n_wave)


def lsmi_union(g: Graph, n_seeds, n_wave: int, rng=None) -> SeedNest:
    """One big patch at (max seeds, n_wave) plus nested smaller seed sets.

    Seeds are sampled once; each smaller set is subsampled uniformly without
    replacement from the next larger one, preserving big-patch order.
    """
    sizes = sorted(set(int(b) for b in n_seeds), reverse=True)
    if not sizes:
        raise ParameterError("n_seeds must be nonempty")
    if n_wave < 1:
        raise ParameterError("n_wave must be >= 1")
    rng = as_generator(rng)
    current = sample_seeds(g, sizes[0], rng)
    subsets = [tuple(current)]
    for size in sizes[1:]:
        keep = sorted(int(i) for i in rng.choice(len(current), size=size, replace=False))
        current = [current[i] for i in keep]
        subsets.append(tuple(current))
    big = Patch(tuple(grow_lsmi(g, s, n_wave) for s in subsets[0]), n_wave)
    return SeedNest(big, tuple(subsets))


def patch_view(nest: SeedNest, n_seed: int, n_wave: int) -> Patch:
    """Restriction of the big patch to (n_seed, n_wave); no graph access.

    Valid only on the grown grid: n_seed must be a requested seed count and
    n_wave at most the grown depth.
    """
    if not 1 <= n_wave <= nest.big_patch.n_wave:
        raise ParameterError(f"n_wave must be in 1..{nest.big_patch.n_wave}, got {n_wave}")
    chosen = set(nest.subset_for(n_seed))
    lsmis = tuple(l.truncated(n_wave) for l in nest.big_patch.lsmis if l.seed in chosen)
    return Patch(lsmis, n_wave)
