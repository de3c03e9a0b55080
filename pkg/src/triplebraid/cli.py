"""Command-line front end.

    triplebraid <scenario|preset> [--config PATH] [--out PATH] [--format csv|json] [--tol EPS]

Exit codes: 0 success, 2 configuration error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np
import yaml

from .config import SCENARIOS, ConfigError, ParseError, config_from_mapping
from .output import OutputError, render_csv, render_json, write_output
from .scenarios import PRESETS, run_scenario

log = logging.getLogger("triplebraid")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triplebraid", description="Braiding in a three-fold degenerate subspace")
    p.add_argument("name", choices=sorted(SCENARIOS) + sorted(PRESETS), help="scenario or preset name")
    p.add_argument("--config", type=Path, help="YAML scenario configuration")
    p.add_argument("--out", type=Path, help="output file (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--tol", type=float, default=None, help="population tie tolerance for K")
    return p


def _load(args) -> dict:
    data: dict = {}
    if args.name in PRESETS:
        data.update(PRESETS[args.name])
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {args.config}: {exc}") from exc
        try:
            loaded = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ParseError(getattr(exc, "problem", None) or str(exc), mark.line + 1 if mark else None) from exc
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ParseError("top level of the configuration must be a mapping")
            data.update(loaded)
    if args.name in SCENARIOS:
        data["scenario"] = args.name
    if args.tol is not None:
        data["tol"] = args.tol
    return data


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_mapping(_load(args))
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    fmt = args.format or cfg.output_format
    out = args.out or (Path(cfg.output_path) if cfg.output_path else None)
    try:
        table = run_scenario(cfg)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.error("computation failed in %s: %s", cfg.scenario, exc)
        return EXIT_COMPUTE
    try:
        if out is None:
            sys.stdout.write(render_csv(table) if fmt == "csv" else render_json(table))
        else:
            write_output(table, fmt, out)
    except OutputError as exc:
        log.error("%s", exc)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
