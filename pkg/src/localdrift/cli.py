"""Command line entry point: ``localdrift {gen-subgroups,run,report,trace}``."""
import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .bench import io
from .bench.config import ExperimentConfig
from .bench.experiment import RunSpec, run_experiment
from .bench.pipeline import report_dir, run_benchmark
from .exceptions import ConfigurationError
from .subgroup import generate_subgroup

GAP_BIN_WIDTH = 0.0025
GAP_BINS = 40


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default, help="master seed")
    parser.add_argument("--config", default=default, help="YAML experiment config")
    parser.add_argument("--out", default=default, help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(prog="localdrift", description=__doc__)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-subgroups", help="sample random subgroups for target sizes")
    _global_flags(p, suppress=True)
    p.add_argument("--target", type=float, action="append", required=True,
                   help="target size; repeat for several")
    p.add_argument("--n", type=int, default=200, help="subgroups per target")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)

    p = sub.add_parser("run", help="run the full benchmark")
    _global_flags(p, suppress=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("report", help="recompute metrics.csv for a results directory")
    _global_flags(p, suppress=True)

    p = sub.add_parser("trace", help="one run with per-batch accuracies")
    _global_flags(p, suppress=True)
    p.add_argument("--size", type=float, default=0.02)
    p.add_argument("--run-id", type=int, default=0)
    p.add_argument("--negative", action="store_true", help="trace a run without drift")
    return parser


def load_config(args):
    cfg = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def cmd_gen_subgroups(args):
    cfg = load_config(args)
    tolerance = cfg.subgroup_tolerance if args.tolerance is None else args.tolerance
    max_iter = cfg.subgroup_max_iter if args.max_iter is None else args.max_iter
    if args.n < 1:
        raise ConfigurationError("--n must be at least 1")
    out = Path(args.out or "subgroups")
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(cfg.seed)
    edges = np.arange(GAP_BINS + 1) * GAP_BIN_WIDTH
    with open(out / "subgroups.csv", "w", newline="") as fh, \
            open(out / "gap_histogram.csv", "w", newline="") as hf:
        rows = csv.writer(fh, lineterminator="\n")
        hist = csv.writer(hf, lineterminator="\n")
        rows.writerow(["index", "target", "computed_size", "gap", "iterations",
                       "within_tolerance", "subgroup"])
        hist.writerow(["target", "bin_low", "bin_high", "count"])
        for target in args.target:
            gaps = []
            for i in range(args.n):
                g = generate_subgroup(target, tolerance, max_iter, rng)
                gap = abs(g.computed_size - target)
                gaps.append(gap)
                rows.writerow([i, repr(target), f"{g.computed_size:.6f}", f"{gap:.6f}",
                               g.n_iter, int(gap <= tolerance), str(g)])
            counts, _ = np.histogram(np.minimum(gaps, edges[-1] - 1e-12), bins=edges)
            for lo, hi, c in zip(edges[:-1], edges[1:], counts):
                hist.writerow([repr(target), f"{lo:.4f}", f"{hi:.4f}", int(c)])
            hit = np.mean(np.asarray(gaps) <= tolerance)
            print(f"target {target:g}: {hit:.1%} within tolerance {tolerance:g}")
    return 0


def cmd_run(args):
    cfg = load_config(args)
    if args.jobs is not None:
        cfg = replace(cfg, jobs=args.jobs)
    out = args.out or "results"

    def progress(done, total):
        if not args.quiet:
            print(f"\r{done}/{total} runs", end="" if done < total else "\n",
                  file=sys.stderr, flush=True)

    _, report = run_benchmark(cfg, out, progress)
    _print_report(report)
    return 0


def cmd_report(args):
    report = report_dir(args.out or "results")
    _print_report(report)
    return 0


def cmd_trace(args):
    cfg = load_config(args)
    out = Path(args.out or "results")
    out.mkdir(parents=True, exist_ok=True)
    spec = RunSpec(args.run_id, args.size, not args.negative)
    result = run_experiment(spec, cfg)
    path = out / f"trace_{args.run_id}.csv"
    io.write_trace(path, result)
    s = result.summary()
    print(f"concepts {result.concept_i} -> {result.concept_j}, subgroup {result.subgroup} "
          f"(size {result.subgroup.computed_size:.4f})")
    print(f"overall accuracy {s['pre_overall']:.3f} -> {s['post_overall']:.3f}; "
          f"subgroup accuracy {s['pre_subgroup']:.3f} -> {s['post_subgroup']:.3f}")
    print(f"wrote {path}")
    return 0


def _print_report(report):
    print(f"{'detector':8} {'size':>7} {'acc':>6} {'f1':>6} {'fpr':>6} {'fnr':>6} {'thr':>4}")
    for m in report.rows:
        print(f"{m.detector:8} {m.size:7.4f} {m.accuracy:6.3f} {m.f1:6.3f} "
              f"{m.fpr:6.3f} {m.fnr:6.3f} {m.threshold:4d}")


COMMANDS = {
    "gen-subgroups": cmd_gen_subgroups,
    "run": cmd_run,
    "report": cmd_report,
    "trace": cmd_trace,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigurationError as exc:
        print(f"localdrift: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
