"""Command-line entry point: ``eulgen simulate`` and ``eulgen verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _grid_sizes(text: str) -> list:
    try:
        sizes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid sizes must be comma-separated integers, got {text!r}")
    if not sizes or any(n < 8 or n % 2 for n in sizes):
        raise argparse.ArgumentTypeError("grid sizes must be even integers >= 8")
    return sizes


def _seed(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned integer, got {text!r}")
    if not 0 <= val < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return val


def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    parser = _Parser(prog="eulgen", description="Structure-preserving Eulerian thermo-visco-elastoplasticity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p_sim = sub.add_parser("simulate", help="integrate a configured problem")
    p_sim.add_argument("--config", required=True, help="JSON configuration file")
    p_sim.add_argument("--out", required=True, help="output directory (created if missing)")
    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, choices=SUITES)
    p_ver.add_argument("--grid", required=True, type=_grid_sizes, help="comma-separated grid sizes, e.g. 16,32,64")
    p_ver.add_argument("--seed", type=_seed, default=0)
    p_ver.add_argument("--report", help="write a JSON report to this file")
    return parser


def _simulate(args) -> int:
    from .io import OutputError
    from .sim import ConfigError, SimConfig, SimulationError, advisory_dt, initial_state, run

    try:
        cfg = SimConfig.from_file(args.config)
        q0 = initial_state(cfg)
    except ConfigError as exc:
        print(f"eulgen: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    bound = advisory_dt(q0, cfg.model)
    print(f"eulgen: advisory dt bound {bound:.3g} (configured dt {cfg.dt:.3g})", file=sys.stderr)
    try:
        res = run(cfg, args.out, q0)
    except SimulationError as exc:
        print(f"eulgen: simulation aborted: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OutputError as exc:
        print(f"eulgen: output error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    last = res.rows[-1]
    print(f"steps={res.steps} t={last['t']:.6g} E_drift_rel={last['E_drift_rel']:.3e} "
          f"S_total={last['S_total']:.9g} snapshots={len(res.snapshots)}")
    return EXIT_OK


def _verify(args) -> int:
    from .verify import run_suite

    seed = args.seed % (2 ** 32)
    start = time.time()
    results = run_suite(args.suite, args.grid, seed)
    for r in results:
        print(r.line())
    passed = all(r.passed for r in results)
    elapsed = time.time() - start
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed in {elapsed:.1f}s")
    if args.report:
        report = {"suite": args.suite, "grid": args.grid, "seed": args.seed, "passed": passed,
                  "checks": [{"name": r.name, "passed": r.passed, "value": r.value, "detail": r.detail}
                             for r in results]}
        try:
            with open(args.report, "w") as fh:
                json.dump(report, fh, indent=2)
        except OSError as exc:
            print(f"eulgen: cannot write report {args.report}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_RUNTIME
    return EXIT_OK if passed else EXIT_RUNTIME


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        return _simulate(args)
    return _verify(args)


if __name__ == "__main__":
    sys.exit(main())
