"""Command line entry point: ``circumnav simulate --config scenario.json ...``.

Exit status is 0 when every run completes and passes all monitor verdicts,
1 when some verdict fails, 2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from .config import ConfigError, RdotSource, ScenarioConfig, load_config
from .harness import run_batch
from .outputs import write_report_json, write_trace_csv

log = logging.getLogger("circumnav")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circumnav", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a batch of closed-loop simulations")
    sim.add_argument("--config", type=Path, help="flat JSON scenario file (defaults: reference scenario)")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--runs", type=int)
    sim.add_argument("--out-dir", type=Path, default=Path("out"))
    sim.add_argument("--controller", choices=["smooth", "sign"])
    sim.add_argument("--compensate-rd", action="store_true", default=None)
    sim.add_argument("--dt", type=float)
    sim.add_argument("--duration", type=float)
    sim.add_argument("--rdot", metavar="truth|filter:TAU",
                     help="range-rate source for the controller")
    sim.add_argument("--no-traces", action="store_true",
                     help="skip the per-run CSV traces, write report.json only")
    sim.add_argument("-v", "--verbose", action="store_true")
    return parser


def _resolve_config(args) -> ScenarioConfig:
    base = load_config(args.config) if args.config else ScenarioConfig()
    return base.override(
        seed=args.seed,
        runs=args.runs,
        law=args.controller,
        compensate_rd=args.compensate_rd,
        dt=args.dt,
        duration=args.duration,
        rdot_source=RdotSource.parse(args.rdot) if args.rdot else None,
    )


def simulate(args) -> int:
    try:
        config = _resolve_config(args)
    except (ConfigError, OSError) as exc:
        print(f"circumnav: {exc}", file=sys.stderr)
        return 2

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    def save(idx, trace):
        if not args.no_traces:
            write_trace_csv(trace, out_dir / f"run_{idx}.csv")

    with warnings.catch_warnings():
        warnings.simplefilter("always")
        entries = run_batch(config, on_trace=save)
    reports = [e.report for e in entries]
    doc = write_report_json(reports, out_dir / "report.json", config.resolved())

    for r in doc["runs"]:
        failed = [name for name, ok in r["theorem_verdicts"].items() if not ok]
        status = "PASS" if r["passed"] else "FAIL " + ",".join(failed)
        print(f"run {r['run_index']:3d}  steady_r={r['steady_radius_mean']}  "
              f"rotation={r['rotation']}  {status}")
    print(f"{doc['n_runs']} runs, {doc['n_failed']} failed, "
          f"all passed: {doc['all_passed']}  -> {out_dir / 'report.json'}")
    return 0 if doc["all_passed"] else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "simulate":
        return simulate(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
