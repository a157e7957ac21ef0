from pathlib import Path

import numpy as np
import pytest

import netboot as nb

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def fixture_path(name: str) -> Path:
    """Path of a cached real-network fixture; skip the test when absent."""
    path = DATA_DIR / name
    if not path.exists():
        pytest.skip(f"fixture {name} not cached; run scripts/fetch_data.py on a networked machine")
    return path


def random_graph(n: int, p: float, seed: int) -> nb.Graph:
    """Erdos-Renyi-style graph for property tests."""
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return nb.Graph.from_edges(n, edges)


@pytest.fixture
def k3():
    return nb.Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def path3():
    return nb.Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4():
    return nb.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star4():
    # center 0 with three leaves
    return nb.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
