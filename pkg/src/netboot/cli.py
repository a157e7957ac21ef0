"""Command-line front end: deterministic, scriptable, machine-readable output.

Exit codes: 0 success, 1 I/O or parse failure, 2 invalid parameters.  Errors
go to stderr, data to stdout or the requested output file.  Every stochastic
subcommand takes --rng-seed (default 1) and is bit-reproducible given it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .coverage import load_configs, run_coverage, write_coverage_csv, write_coverage_json
from .errors import ParameterError, ParseError
from .estimators import density_from_mu, lsmi_dd
from .generate import configuration_model, polylog_pmf, sample_degree_sequence
from .graph import gamma_fragility, graph_stats, load_adjacency_matrix, load_edge_list
from .lsmi import Patch, lsmi_union
from .patchwork import boot_ci, boot_dd, lsmi_cv
from .rng import as_generator
from .vertexboot import STATISTICS, bootstrap_statistic, compare_densities


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(obj, out_path):
    _emit(json.dumps(obj, indent=2), out_path)


def _load_graph(path):
    with open(path) as fh:
        result = load_edge_list(fh)
    if result.self_loops_dropped or result.duplicate_edges_dropped:
        print(
            f"note: dropped {result.self_loops_dropped} self-loops and "
            f"{result.duplicate_edges_dropped} duplicate edges from {path}",
            file=sys.stderr,
        )
    return result.graph


def _load_matrix(path, skip, directed):
    with open(path) as fh:
        result = load_adjacency_matrix(fh, skip=skip, directed=directed)
    if result.diagonal_dropped:
        print(f"note: forced {result.diagonal_dropped} diagonal entries to zero in {path}", file=sys.stderr)
    return result.matrix


def _load_patch(path) -> Patch:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
    try:
        return Patch.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: not a patch document ({exc})") from None


def cmd_generate(args) -> int:
    dist = polylog_pmf(args.delta, args.lam)
    rng = as_generator(args.rng_seed)
    degrees = sample_degree_sequence(dist, args.order, rng)
    g = configuration_model(degrees, rng)
    isolated = int((g.degrees() == 0).sum())
    if isolated:
        print(f"note: {isolated} isolated vertices are not representable in the edge list", file=sys.stderr)
    with open(args.out, "w") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
    _emit_json({"order": g.n, "size": g.m, "mean_degree": 2.0 * g.m / g.n}, None)
    return 0


def cmd_stats(args) -> int:
    g = _load_graph(args.graph)
    payload = graph_stats(g).to_dict()
    if args.gamma:
        payload["gamma"] = gamma_fragility(g).gamma
    _emit_json(payload, args.out)
    return 0


def cmd_estimate(args) -> int:
    est = lsmi_dd(_load_patch(args.patch))
    _emit_json(est.to_dict(), args.out)
    return 0


def cmd_bootstrap(args) -> int:
    est = lsmi_dd(_load_patch(args.patch))
    boot = boot_dd(est, args.B, as_generator(args.rng_seed))
    cis = boot_ci(boot, est, args.level, args.ci_method)
    payload = {
        "mu": {"estimate": est.mu, **cis.mu.to_dict()},
        "fk": [{"k": k, "estimate": float(est.fk[k]), **ci.to_dict()} for k, ci in enumerate(cis.fk)],
    }
    if args.plot:
        from . import plots

        plots.plot_bootstrap_mean(boot.mub, cis.mu, args.plot)
    _emit_json(payload, args.out)
    return 0


def cmd_patchwork(args) -> int:
    g = _load_graph(args.graph)
    rng = as_generator(args.rng_seed)
    if args.patch_out:
        nest = lsmi_union(g, args.n_seeds, args.n_wave, as_generator(args.rng_seed))
        with open(args.patch_out, "w") as fh:
            json.dump(nest.big_patch.to_dict(), fh, indent=2)
    cv = lsmi_cv(
        g,
        n_seeds=args.n_seeds,
        n_wave=args.n_wave,
        B=args.B,
        level=args.level,
        proxy_reps=args.proxy_reps,
        proxy_size=args.proxy_size,
        method=args.ci_method,
        rng=rng,
    )
    payload = cv.to_dict()
    if args.density:
        payload["density_bci"] = {
            "lower": density_from_mu(cv.bci.lower, g.n),
            "upper": density_from_mu(cv.bci.upper, g.n),
            "level": cv.bci.level,
            "method": cv.bci.method,
        }
        payload["density_estimate"] = density_from_mu(cv.estimate, g.n)
    if args.plot:
        from . import plots
        from .lsmi import patch_view

        # regrow the same big patch (same seed, same first rng consumer) and
        # bootstrap the selected view for the illustration
        nest = lsmi_union(g, args.n_seeds, args.n_wave, as_generator(args.rng_seed))
        est = lsmi_dd(patch_view(nest, *cv.best_combination))
        boot = boot_dd(est, args.B, as_generator(args.rng_seed))
        plots.plot_bootstrap_mean(boot.mub, cv.bci, args.plot)
    _emit_json(payload, args.out)
    return 0


def cmd_vertboot(args) -> int:
    a = _load_matrix(args.matrix, args.skip, args.directed)
    rng = as_generator(args.rng_seed)
    results = [bootstrap_statistic(a, args.B, stat, rng, args.level) for stat in args.stat]
    payload = []
    for res in results:
        entry = res.to_dict()
        if args.replicates_out:
            entry["replicates_path"] = args.replicates_out
        payload.append(entry)
    if args.replicates_out:
        with open(args.replicates_out, "w") as fh:
            fh.write(",".join(res.stat for res in results) + "\n")
            for row in zip(*(res.replicates for res in results)):
                fh.write(",".join(f"{x:.10g}" for x in row) + "\n")
    if args.plot:
        from . import plots

        first = results[0]
        plots.plot_bootstrap_mean(first.replicates, first.ci, args.plot)
    _emit_json(payload if len(payload) > 1 else payload[0], args.out)
    return 0


def cmd_compare(args) -> int:
    matrices = [_load_matrix(path, args.skip, args.directed) for path in args.matrix]
    rows = compare_densities(matrices, args.B, as_generator(args.rng_seed))
    if args.format == "json":
        payload = [
            {**row.to_dict(), "matrix_a": args.matrix[row.index_a], "matrix_b": args.matrix[row.index_b]}
            for row in rows
        ]
        _emit_json(payload, args.out)
    else:
        lines = ["matrix_a,matrix_b,density_a,density_b,z,p_value,degenerate_se"]
        for row in rows:
            lines.append(
                f"{args.matrix[row.index_a]},{args.matrix[row.index_b]},"
                f"{row.density_a:.8g},{row.density_b:.8g},{row.z:.8g},{row.p_value:.8g},{row.degenerate_se}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_coverage(args) -> int:
    with open(args.config) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.config}: invalid JSON: {exc}") from None
    configs = load_configs(data)
    workers = args.workers if args.workers is not None else int(os.environ.get("NETBOOT_WORKERS", "1"))
    reports = [run_coverage(cfg, workers=workers) for cfg in configs]
    csv_text = write_coverage_csv(reports, None)
    sys.stdout.write(csv_text)
    if args.out_prefix:
        with open(args.out_prefix + ".csv", "w") as fh:
            fh.write(csv_text)
        with open(args.out_prefix + ".json", "w") as fh:
            write_coverage_json(reports, fh)
        if not args.no_figures:
            from . import plots

            plots.plot_coverage_report(reports, args.out_prefix + ".png")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netboot",
        description="Bootstrap inference for networks: patchwork and vertex bootstrap.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic polylog-degree graph as an edge list")
    p.add_argument("--delta", type=float, required=True, help="power exponent of the degree law")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="exponential cutoff scale")
    p.add_argument("--order", type=int, required=True, help="number of vertices")
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--rng-seed", type=int, default=1)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("stats", help="whole-graph statistics from an edge list")
    p.add_argument("--graph", required=True, help="edge-list path")
    p.add_argument("--gamma", action="store_true", help="include the exponential-CCDF fragility fit")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("estimate", help="degree-distribution estimate from a patch JSON file")
    p.add_argument("--patch", required=True, help="patch JSON path")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("bootstrap", help="bootstrap a patch JSON file and report intervals")
    p.add_argument("--patch", required=True, help="patch JSON path")
    p.add_argument("--B", type=int, default=500, help="bootstrap replicates")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--ci-method", choices=("percentile", "basic"), default="percentile")
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--plot", help="render the bootstrap mean-degree distribution to this file")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bootstrap)

    p = sub.add_parser("patchwork", help="cross-validated patchwork bootstrap interval for the mean degree")
    p.add_argument("--graph", required=True, help="edge-list path")
    p.add_argument("--n-seeds", type=int, nargs="+", required=True, help="seed counts of the grid")
    p.add_argument("--n-wave", type=int, default=1, help="maximum wave depth of the grid")
    p.add_argument("--B", type=int, default=100)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--proxy-reps", type=int, default=19)
    p.add_argument("--proxy-size", type=int, default=30)
    p.add_argument("--ci-method", choices=("percentile", "basic"), default="percentile")
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--density", action="store_true", help="also report the interval rescaled to density")
    p.add_argument("--patch-out", help="write the big patch as JSON (consumable by estimate/bootstrap)")
    p.add_argument("--plot", help="render the selected combination's bootstrap distribution")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_patchwork)

    p = sub.add_parser("vertboot", help="vertex bootstrap of whole-network statistics")
    p.add_argument("--matrix", required=True, help="adjacency-matrix path (0/1 tokens, row-major)")
    p.add_argument("--skip", type=int, default=0, help="leading tokens to skip")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--B", type=int, default=500)
    p.add_argument("--stat", nargs="+", choices=STATISTICS, default=["density"])
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--replicates-out", help="write replicate statistic values as CSV")
    p.add_argument("--plot", help="render the first statistic's replicate distribution")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_vertboot)

    p = sub.add_parser("compare", help="pairwise two-sample density tests across networks")
    p.add_argument("--matrix", nargs="+", required=True, help="two or more adjacency-matrix paths")
    p.add_argument("--skip", type=int, default=0)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--B", type=int, default=500)
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("coverage", help="run Monte Carlo coverage cells from a JSON config")
    p.add_argument("--config", required=True, help="config JSON path (one cell or {'cells': [...]})")
    p.add_argument("--workers", type=int, default=None, help="parallel processes (env NETBOOT_WORKERS overrides default)")
    p.add_argument("--out-prefix", help="write <prefix>.csv, <prefix>.json and <prefix>.png")
    p.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    p.set_defaults(fn=cmd_coverage)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
