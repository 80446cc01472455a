"""Command-line entry point.

    rotframe run --config scenario.json [--out-dir results/]
    rotframe validate --config scenario.json
    rotframe presets

Exit codes: 0 success, 1 runtime failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .config import ConfigError, parse_config
from .models import ca40_preset, ms_coupling
from .runner import provenance, run_scenario

EXIT_OK, EXIT_RUNTIME, EXIT_CONFIG = 0, 1, 2


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("", f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def _cmd_run(args) -> int:
    cfg = _load(args.config)
    try:
        paths = run_scenario(cfg, args.out_dir)
    except Exception as exc:  # any failure past validation is a runtime error
        print(f"error: {cfg.scenario} failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for p in paths:
        print(p)
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = _load(args.config)
    print(json.dumps(provenance(cfg), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_presets(args) -> int:
    p = ca40_preset()
    J = ms_coupling(p)
    two_pi = 2 * math.pi
    out = {
        "ca40": {
            "nu": p.nu, "gamma": p.gamma, "eta": p.eta, "Omega": p.Omega,
            "delta": p.delta, "omega_s": p.omega_s, "J": J,
            "nu_over_2pi_Hz": p.nu / two_pi, "gamma_over_2pi_Hz": p.gamma / two_pi,
            "J_over_2pi_Hz": J / two_pi, "nu_over_J": p.nu / J,
        }
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotframe",
        description="Golden-rule rates and spontaneous-emission dynamics for spin models in rotating frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario and write CSV/JSON results")
    run.add_argument("--config", required=True)
    run.add_argument("--out-dir", default=".")
    run.set_defaults(func=_cmd_run)
    val = sub.add_parser("validate", help="check a config and print the resolved settings")
    val.add_argument("--config", required=True)
    val.set_defaults(func=_cmd_validate)
    pre = sub.add_parser("presets", help="print the Ca-40 constants as JSON")
    pre.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
