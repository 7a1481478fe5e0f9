"""Command-line driver: `verify run|sweep|selftest|export-schema`."""
from __future__ import annotations

import argparse
import json
import sys
import tempfile
from pathlib import Path

from .errors import ConfigError, DivergedRunError
from .jobs import export_schemas, load_job_config, run_job


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=None, help="override the config seed")
    sub.add_argument("--out", default=None, help="output directory for reports")
    sub.add_argument("--quiet", action="store_true", help="suppress status lines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Estimate the probability that a property of a neural "
                    "network is violated under an input distribution.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="execute the job declared in a config file")
    run.add_argument("config", help="path to the job config JSON")
    _add_common(run)

    sweep = subs.add_parser("sweep", help="execute a sweep job config")
    sweep.add_argument("config", help="path to a sweep job config JSON")
    _add_common(sweep)

    selftest = subs.add_parser(
        "selftest", help="run the splitting estimator against all analytic oracles"
    )
    _add_common(selftest)

    subs.add_parser("export-schema", help="print the config and weight-file JSON schemas")
    return parser


def _cmd_run(args) -> int:
    return run_job(args.config, seed=args.seed, out_dir=args.out, quiet=args.quiet)


def _cmd_sweep(args) -> int:
    job = load_job_config(args.config, seed=args.seed, out_dir=args.out)
    if job.kind != "sweep":
        raise ConfigError(f"'verify sweep' needs a sweep job, config declares {job.kind!r}")
    return run_job(args.config, seed=args.seed, out_dir=args.out, quiet=args.quiet)


def _cmd_selftest(args) -> int:
    doc = {"format_version": 1, "job": "oracle-selftest", "seed": 0}
    with tempfile.TemporaryDirectory() as tmp:
        config_path = Path(tmp) / "selftest.json"
        config_path.write_text(json.dumps(doc), encoding="utf-8")
        out = args.out if args.out is not None else "selftest.out"
        return run_job(config_path, seed=args.seed, out_dir=out, quiet=args.quiet)


def _cmd_export_schema(args) -> int:
    print(json.dumps(export_schemas(), indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "sweep": _cmd_sweep,
        "selftest": _cmd_selftest,
        "export-schema": _cmd_export_schema,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DivergedRunError as exc:
        print(f"error: run diverged: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
