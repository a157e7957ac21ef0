"""Monte Carlo coverage experiments for the two bootstrap methods.

Each replication generates a fresh synthetic graph, optionally removes a
fraction of its vertices, builds a confidence interval for the mean degree
with the selected method, and records whether the interval contains the
population mean of the degree law (not the realized graph mean).  Replication
r is a pure function of (master_seed, r), so reports are bit-identical for
any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .generate import configuration_model, polylog_pmf, sample_degree_sequence
from .graph import graph_stats, graph_to_matrix, remove_vertices
from .patchwork import lsmi_cv
from .rng import substream
from .vertexboot import bootstrap_statistic

METHODS = ("patchwork", "vertex")

CSV_COLUMNS = ("distribution", "n", "removal", "method", "coverage", "width", "width_se")


@dataclass(frozen=True)
class CoverageConfig:
    """One experiment cell: a degree law, a graph order, a method, a grid."""

    delta: float
    lam: float
    n: int
    method: str
    replications: int
    master_seed: int
    removal_fraction: float = 0.0
    n_seeds: tuple[int, ...] = (20, 30, 40, 50)
    n_wave: int = 5
    B: int = 500
    level: float = 0.95
    proxy_reps: int = 19
    proxy_size: int = 30

    def validate(self):
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.replications < 1:
            raise ParameterError("replications must be >= 1")
        if not 0 <= self.removal_fraction < 1:
            raise ParameterError("removal_fraction must be in [0, 1)")
        if self.n < 2:
            raise ParameterError("n must be >= 2")
        if self.B < 1:
            raise ParameterError("B must be >= 1")
        if not 0 < self.level < 1:
            raise ParameterError("level must be in (0, 1)")

    @property
    def distribution_label(self) -> str:
        return f"polylog(delta={self.delta},lambda={self.lam})"

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "lambda": self.lam,
            "n": self.n,
            "method": self.method,
            "replications": self.replications,
            "master_seed": self.master_seed,
            "removal_fraction": self.removal_fraction,
            "n_seeds": list(self.n_seeds),
            "n_wave": self.n_wave,
            "B": self.B,
            "level": self.level,
            "proxy_reps": self.proxy_reps,
            "proxy_size": self.proxy_size,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoverageConfig":
        known = {
            "delta": float,
            "lambda": float,
            "n": int,
            "method": str,
            "replications": int,
            "master_seed": int,
            "removal_fraction": float,
            "n_seeds": lambda v: tuple(int(x) for x in v),
            "n_wave": int,
            "B": int,
            "level": float,
            "proxy_reps": int,
            "proxy_size": int,
        }
        unknown = set(data) - set(known)
        if unknown:
            raise ParameterError(f"unknown coverage config keys: {sorted(unknown)}")
        kwargs = {}
        for key, conv in known.items():
            if key in data:
                kwargs["lam" if key == "lambda" else key] = conv(data[key])
        try:
            cfg = cls(**kwargs)
        except TypeError as exc:
            raise ParameterError(f"incomplete coverage config: {exc}") from None
        cfg.validate()
        return cfg


@dataclass(frozen=True)
class CoverageReport:
    """Aggregated outcome of one experiment cell."""

    config: CoverageConfig
    true_mu: float
    coverage: float
    mean_width: float
    width_se: float
    coverage_se: float
    records: tuple[dict, ...] = field(repr=False)

    @property
    def coverage_bracket(self) -> tuple[float, float]:
        return (self.coverage - 2 * self.coverage_se, self.coverage + 2 * self.coverage_se)

    def to_dict(self) -> dict:
        low, high = self.coverage_bracket
        return {
            "config": self.config.to_dict(),
            "distribution": self.config.distribution_label,
            "true_mu": self.true_mu,
            "coverage": self.coverage,
            "coverage_se": self.coverage_se,
            "coverage_bracket": [low, high],
            "mean_width": self.mean_width,
            "width_se": self.width_se,
            "records": list(self.records),
        }


def run_replication(cfg: CoverageConfig, r: int, true_mu: float) -> dict:
    """One Monte Carlo replication, deterministic in (master_seed, r)."""
    rng = substream(cfg.master_seed, r)
    dist = polylog_pmf(cfg.delta, cfg.lam)
    degrees = sample_degree_sequence(dist, cfg.n, rng)
    g = configuration_model(degrees, rng)
    generated_mean = 2.0 * g.m / g.n
    if cfg.removal_fraction > 0:
        g = remove_vertices(g, cfg.removal_fraction, rng).graph
    analyzed_mean = 2.0 * g.m / g.n

    if cfg.method == "patchwork":
        cv = lsmi_cv(
            g,
            n_seeds=cfg.n_seeds,
            n_wave=cfg.n_wave,
            B=cfg.B,
            level=cfg.level,
            proxy_reps=cfg.proxy_reps,
            proxy_size=cfg.proxy_size,
            rng=rng,
        )
        lower, upper, estimate = cv.bci.lower, cv.bci.upper, cv.estimate
    else:
        res = bootstrap_statistic(graph_to_matrix(g), cfg.B, "mean_degree", rng, cfg.level)
        lower, upper, estimate = res.ci.lower, res.ci.upper, res.observed

    return {
        "replication": r,
        "lower": lower,
        "upper": upper,
        "width": upper - lower,
        "contained": bool(lower <= true_mu <= upper),
        "estimate": estimate,
        "generated_mean": generated_mean,  # realized mean before removal, for erasure diagnosis
        "analyzed_mean": analyzed_mean,
    }


def aggregate(cfg: CoverageConfig, true_mu: float, records) -> CoverageReport:
    records = sorted(records, key=lambda rec: rec["replication"])
    m = len(records)
    contained = np.array([rec["contained"] for rec in records], dtype=float)
    widths = np.array([rec["width"] for rec in records], dtype=float)
    coverage = float(contained.mean())
    coverage_se = math.sqrt(coverage * (1.0 - coverage) / m)
    with np.errstate(invalid="ignore"):  # unbounded-interval stubs have infinite widths
        width_se = float(widths.std(ddof=1)) if m > 1 else 0.0
    return CoverageReport(
        config=cfg,
        true_mu=true_mu,
        coverage=coverage,
        mean_width=float(widths.mean()),
        width_se=width_se,
        coverage_se=coverage_se,
        records=tuple(records),
    )


def _worker(args) -> dict:
    cfg, r, true_mu = args
    return run_replication(cfg, r, true_mu)


def run_coverage(cfg: CoverageConfig, workers: int = 1) -> CoverageReport:
    """Run all replications of one cell, optionally across processes.

    Worker count changes only the wall time: every replication owns an rng
    substream keyed by (master_seed, r) and aggregation sorts by r.
    """
    cfg.validate()
    true_mu = polylog_pmf(cfg.delta, cfg.lam).mean()
    tasks = [(cfg, r, true_mu) for r in range(cfg.replications)]
    if workers <= 1 or cfg.replications == 1:
        records = [_worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_worker, tasks))
    return aggregate(cfg, true_mu, records)


def write_coverage_csv(reports, out) -> str:
    """Delimited per-cell summary; returns the CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        cfg = rep.config
        writer.writerow(
            [
                cfg.distribution_label,
                cfg.n,
                f"{cfg.removal_fraction:g}",
                cfg.method,
                f"{rep.coverage:.6f}",
                f"{rep.mean_width:.6f}",
                f"{rep.width_se:.6f}",
            ]
        )
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def write_coverage_json(reports, out) -> str:
    text = json.dumps({"cells": [rep.to_dict() for rep in reports]}, indent=2)
    if out is not None:
        out.write(text + "\n")
    return text


def load_configs(data) -> list[CoverageConfig]:
    """Parse a config JSON document: one cell object or {"cells": [...]}."""
    if isinstance(data, dict) and "cells" in data:
        cells = data["cells"]
    elif isinstance(data, dict):
        cells = [data]
    elif isinstance(data, list):
        cells = data
    else:
        raise ParameterError("coverage config must be an object or a list of objects")
    if not cells:
        raise ParameterError("coverage config has no cells")
    return [CoverageConfig.from_dict(cell) for cell in cells]
