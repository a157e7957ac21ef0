import math

import numpy as np
import pytest

import netboot as nb
from netboot.errors import ParameterError
from netboot.estimators import DegreeDistributionEstimate
from netboot.patchwork import select_best

from conftest import random_graph


def make_estimate(seed_degrees, nonseed_degrees):
    """Build an estimate record directly from degree multisets."""
    g_stub = nb.Patch(
        tuple(nb.Lsmi(i, d, ()) for i, d in enumerate(seed_degrees)),
        0,
    )
    est = nb.lsmi_dd(g_stub)
    if not nonseed_degrees:
        return est
    k_max = max(max(seed_degrees, default=0), max(nonseed_degrees))
    fk = np.zeros(k_max + 1)
    fk[: len(est.fk)] = est.fk
    return DegreeDistributionEstimate(
        fk,
        est.mu,
        est.p0,
        est.mu_s,
        np.asarray(seed_degrees),
        np.asarray(nonseed_degrees),
        len(seed_degrees),
        1,
    )


class TestIntervals:
    def test_percentile_order_statistics(self):
        ci = nb.percentile_ci(np.arange(1, 101), 0.95, 50.0)
        assert (ci.lower, ci.upper) == (3.0, 98.0)

    def test_basic_reflection(self):
        ci = nb.basic_ci(np.arange(1, 101), 0.95, 50.0)
        assert (ci.lower, ci.upper) == (2.0, 97.0)

    def test_constant_replicates(self):
        reps = np.full(50, 7.0)
        for method in ("percentile", "basic"):
            ci = nb.bootstrap_ci(reps, 0.95, 7.0, method)
            assert (ci.lower, ci.upper) == (7.0, 7.0)

    def test_endpoints_are_sample_members(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            reps = rng.normal(size=rng.integers(5, 200))
            ci = nb.percentile_ci(reps, 0.9, 0.0)
            assert ci.lower in reps and ci.upper in reps

    def test_reflection_identity_exact(self):
        rng = np.random.default_rng(1)
        reps = rng.normal(size=137)
        point = 0.3
        p = nb.percentile_ci(reps, 0.95, point)
        b = nb.basic_ci(reps, 0.95, point)
        assert b.lower == 2 * point - p.upper
        assert b.upper == 2 * point - p.lower

    def test_level_validation(self):
        with pytest.raises(ParameterError):
            nb.percentile_ci([1, 2, 3], 0.0, 1.0)
        with pytest.raises(ParameterError):
            nb.percentile_ci([1, 2, 3], 1.0, 1.0)

    def test_unknown_method(self):
        with pytest.raises(ParameterError):
            nb.bootstrap_ci([1, 2], 0.95, 1.0, "studentized")


class TestBootDd:
    def test_single_zero_degree_seed(self):
        est = make_estimate([0], [])
        boot = nb.boot_dd(est, 20, np.random.default_rng(0))
        assert (boot.fkb[0] == 1.0).all()
        assert (boot.mub == 0.0).all()

    def test_degenerate_single_seed(self):
        est = make_estimate([2], [])
        boot = nb.boot_dd(est, 25, np.random.default_rng(1))
        assert (boot.mub == 2.0).all()

    def test_star_patch_constant_replicates(self, star4):
        # the only resample of {3} is {3} and of {1,1,1} is {1,1,1}, so
        # every replicate equals the enumerated value 1.5
        est = nb.lsmi_dd(nb.lsmi(star4, seeds=[0], n_wave=1))
        boot = nb.boot_dd(est, 200, np.random.default_rng(2))
        assert (boot.mub == 1.5).all()
        assert (boot.fkb[1] == 0.75).all() and (boot.fkb[3] == 0.25).all()

    def test_columns_normalize_and_mub_consistent(self):
        g = random_graph(40, 0.15, 8)
        est = nb.lsmi_dd(nb.lsmi(g, n_seed=6, n_wave=2, rng=np.random.default_rng(3)))
        boot = nb.boot_dd(est, 300, np.random.default_rng(4))
        assert np.all(np.abs(boot.fkb.sum(axis=0) - 1.0) < 1e-12)
        ks = np.arange(boot.fkb.shape[0], dtype=float)
        assert np.all(np.abs(boot.mub - ks @ boot.fkb) < 1e-12)
        assert boot.fkb.shape == (len(est.fk), 300)
        assert boot.n_replicates == 300

    def test_bit_reproducible(self):
        g = random_graph(30, 0.2, 9)
        est = nb.lsmi_dd(nb.lsmi(g, n_seed=5, n_wave=1, rng=np.random.default_rng(5)))
        a = nb.boot_dd(est, 100, np.random.default_rng(6))
        b = nb.boot_dd(est, 100, np.random.default_rng(6))
        assert np.array_equal(a.fkb, b.fkb) and np.array_equal(a.mub, b.mub)

    def test_inverse_degree_weighting_frequency(self):
        # non-seed multiset {1, 2}: a weighted draw picks the degree-1
        # entry with probability (1/1) / (1/1 + 1/2) = 2/3
        est = make_estimate([5], [1, 2])
        B = 100_000
        boot = nb.boot_dd(est, B, np.random.default_rng(7))
        draws_of_one = (3.0 * boot.fkb[1]).round()  # two draws per replicate
        total = draws_of_one.sum()
        n_draws = 2 * B
        p = 2 / 3
        sigma = math.sqrt(n_draws * p * (1 - p))
        assert abs(total - n_draws * p) < 3 * sigma

    def test_validation(self):
        est = make_estimate([1, 1], [])
        with pytest.raises(ParameterError):
            nb.boot_dd(est, 0)


class TestBootCi:
    def test_shapes_and_points(self, star4):
        est = nb.lsmi_dd(nb.lsmi(star4, seeds=[0], n_wave=1))
        boot = nb.boot_dd(est, 50, np.random.default_rng(1))
        cis = nb.boot_ci(boot, est, level=0.95, method="percentile")
        assert len(cis.fk) == len(est.fk)
        assert cis.mu.point == est.mu
        assert cis.mu.method == "percentile"

    def test_needs_two_replicates(self, star4):
        est = nb.lsmi_dd(nb.lsmi(star4, seeds=[0], n_wave=1))
        boot = nb.boot_dd(est, 1, np.random.default_rng(1))
        with pytest.raises(ParameterError):
            nb.boot_ci(boot, est)


class TestSelectBest:
    def test_closest_coverage_wins(self):
        rows = [
            {"n_seed": 10, "n_wave": 1, "coverage": 0.50, "width": 1.0},
            {"n_seed": 20, "n_wave": 2, "coverage": 0.90, "width": 0.5},
        ]
        assert select_best(rows, 0.95) == (20, 2)

    def test_tie_breaks_fewer_waves_then_fewer_seeds(self):
        rows = [
            {"n_seed": 20, "n_wave": 2, "coverage": 0.9, "width": 0.4},
            {"n_seed": 20, "n_wave": 1, "coverage": 0.9, "width": 0.6},
            {"n_seed": 10, "n_wave": 1, "coverage": 0.9, "width": 0.8},
        ]
        assert select_best(rows, 0.95) == (10, 1)

    def test_selection_ignores_scale(self):
        # containment proportions are scale-free, so rescaling widths (a
        # common rescale of statistics and endpoints) cannot move the choice
        rows = [
            {"n_seed": 5, "n_wave": 1, "coverage": 0.8, "width": 1.0},
            {"n_seed": 9, "n_wave": 2, "coverage": 1.0, "width": 2.0},
        ]
        scaled = [dict(r, width=100 * r["width"]) for r in rows]
        assert select_best(rows, 0.95) == select_best(scaled, 0.95)


class TestLsmiCv:
    def test_single_combination_grid(self):
        g = random_graph(60, 0.1, 11)
        cv = nb.lsmi_cv(g, [4], 1, B=40, rng=np.random.default_rng(12))
        assert cv.best_combination == (4, 1)
        assert len(cv.coverage_table) == 1

    def test_default_proxy_parameters(self):
        import inspect

        sig = inspect.signature(nb.lsmi_cv)
        assert sig.parameters["proxy_reps"].default == 19
        assert sig.parameters["proxy_size"].default == 30

    def test_output_schema(self):
        g = random_graph(80, 0.08, 13)
        cv = nb.lsmi_cv(g, [3, 6], 2, B=40, rng=np.random.default_rng(14))
        doc = cv.to_dict()
        assert set(doc) == {"bci", "estimate", "best_combination", "seeds", "coverage_table"}
        assert set(doc["bci"]) == {"lower", "upper", "level", "method"}
        assert set(doc["best_combination"]) == {"n_seed", "n_wave"}
        assert all(set(row) == {"n_seed", "n_wave", "coverage", "width"} for row in doc["coverage_table"])
        assert len(doc["seeds"]) == cv.best_combination[0]

    def test_bci_matches_stored_interval(self):
        g = random_graph(80, 0.08, 15)
        cv = nb.lsmi_cv(g, [3, 6], 2, B=40, rng=np.random.default_rng(16))
        assert cv.intervals[cv.best_combination] == cv.bci

    def test_reproducible(self):
        g = random_graph(70, 0.1, 17)
        a = nb.lsmi_cv(g, [3, 5], 2, B=30, rng=np.random.default_rng(18))
        b = nb.lsmi_cv(g, [3, 5], 2, B=30, rng=np.random.default_rng(18))
        assert a.to_dict() == b.to_dict()

    def test_small_pool_switches_to_replacement(self):
        # a path's patch pool is tiny; the default draw must auto-switch
        g = nb.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        cv = nb.lsmi_cv(g, [2], 1, B=20, proxy_reps=3, proxy_size=30, rng=np.random.default_rng(19))
        assert cv.best_combination == (2, 1)

    def test_forced_without_replacement_small_pool_rejected(self):
        g = nb.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(ParameterError):
            nb.lsmi_cv(g, [2], 1, B=20, proxy_reps=3, proxy_size=30, proxy_replace=False,
                       rng=np.random.default_rng(20))

    def test_repeats_average_coverage(self):
        g = random_graph(80, 0.08, 21)
        cv = nb.lsmi_cv(g, [4], 1, B=30, repeats=3, rng=np.random.default_rng(22))
        assert cv.best_combination == (4, 1)
        assert 0 <= cv.coverage_table[0]["coverage"] <= 1

    def test_validation(self, k3):
        with pytest.raises(ParameterError):
            nb.lsmi_cv(k3, [], 1)
        with pytest.raises(ParameterError):
            nb.lsmi_cv(k3, [2], 1, B=0)
        with pytest.raises(ParameterError):
            nb.lsmi_cv(k3, [2], 1, proxy_reps=0)
