"""Command line entry point: ``guidedphoton run|validate|list-scenarios``.

Exit status: 0 success, 1 an embedded assertion failed, 2 configuration
error, 3 numerical or domain error raised by the library.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import scenarios
from .errors import ConfigError

EXIT_OK, EXIT_ASSERTION, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guidedphoton", description="Run guided-photon scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write its table")
    run.add_argument("config", type=Path)
    run.add_argument("--out", type=Path, default=None, help=f"output directory (default ${scenarios.OUTPUT_DIR_ENV} or ./out)")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")

    validate = sub.add_parser("validate", help="check a config without running it")
    validate.add_argument("config", type=Path)

    sub.add_parser("list-scenarios", help="print the scenario kinds and their keys")
    return parser


def _load(path: Path, seed=None) -> scenarios.ScenarioConfig:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return scenarios.parse_config(text, seed=seed)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "list-scenarios":
        for kind, schema in scenarios.SCHEMAS.items():
            required = [k for k, v in schema.items() if v is None and k not in scenarios.DERIVED and k != "kind"]
            optional = [k for k in schema if k not in required and k != "kind"]
            print(f"{kind}: required={required} optional={optional}")
        return EXIT_OK

    try:
        config = _load(args.config, getattr(args, "seed", None))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "validate":
        print(f"{args.config}: ok ({config.kind})")
        return EXIT_OK

    try:
        result = scenarios.run(config)
    except scenarios.ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    out = args.out or Path(os.environ.get(scenarios.OUTPUT_DIR_ENV, "out"))
    try:
        paths = scenarios.emit(result, out, args.format)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    for verdict in result.verdicts:
        mark = "PASS" if verdict.passed else "FAIL"
        print(f"[{mark}] {verdict.name}: {verdict.detail}")
    print(f"wrote {', '.join(str(p) for p in paths)} in {result.wall_time:.2f}s", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
