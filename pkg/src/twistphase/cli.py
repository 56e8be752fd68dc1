"""``twistphase`` command-line interface.

Subcommands: ``sweep``, ``figure``, ``trace``, ``conformance``. Values come
from built-in defaults, then ``--config FILE`` (flat JSON), then flags; later
sources win.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical-domain
error.
"""
from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, TwistPhaseError
from .scenario import (
    FIGURES,
    ScenarioConfig,
    conformance_dataset,
    figure_dataset,
    load_config,
    run_scenario,
    trace_dataset,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DOMAIN = 4


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="flat JSON config; flags override its keys")
    p.add_argument("--eta", type=float, help="birefringence strength (rad per unit thickness)")
    p.add_argument("--k", type=float, help="twist rate (rad per unit thickness)")
    p.add_argument("--phi", type=float, help="birefringence azimuth (rad)")
    p.add_argument("--theta", type=float, help="twist / incidence angle (rad)")
    p.add_argument("--input", help="eigen | lcp | rcp | linear:ANGLE | custom:RE1,IM1,RE2,IM2")
    p.add_argument("--twist-mode", dest="twist_mode", choices=["none", "thickness_independent", "thickness_dependent"])
    p.add_argument(
        "--sweep",
        action="append",
        metavar="NAME:START:STOP:COUNT",
        help="sweep axis over eta, k, phi or theta; repeat for a grid (replaces config sweeps)",
    )
    p.add_argument("--out", metavar="PATH", help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistphase",
        description="Phases of polarized light in homogeneous and twisted birefringent media.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate a phase over a parameter grid")
    _add_scenario_args(p)
    p.add_argument("--phase", choices=["dynamical", "net", "geometric"])
    p.add_argument("--mode", choices=["bilinear", "paper", "both"])

    p = sub.add_parser("figure", help="emit the data grid behind a phase figure")
    p.add_argument("--id", dest="fig_id", required=True, choices=sorted(FIGURES))
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("trace", help="propagate a state and emit the Jones/Stokes trace")
    _add_scenario_args(p)
    p.add_argument("--z", type=float, help="propagation length")
    p.add_argument("--step", type=float, help="RK4 step")

    p = sub.add_parser("conformance", help="compare printed closed forms with the bilinear definitions")
    _add_scenario_args(p)
    return parser


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    cfg = ScenarioConfig()
    if getattr(args, "config", None):
        cfg = ScenarioConfig.from_mapping(load_config(args.config), cfg)
    overrides = {}
    for key in ("eta", "k", "phi", "theta", "input", "twist_mode", "phase", "mode", "z", "step", "out"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    if getattr(args, "sweep", None):
        overrides["sweep"] = args.sweep
    return ScenarioConfig.from_mapping(overrides, cfg)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on malformed flags
    try:
        if args.command == "figure":
            _emit(figure_dataset(args.fig_id), args.out)
            return EXIT_OK
        cfg = _resolve_config(args)
        if args.command == "sweep":
            text = run_scenario(cfg)
        elif args.command == "trace":
            text = trace_dataset(cfg)
        else:
            text = conformance_dataset(cfg)
        _emit(text, cfg.out)
    except ConfigError as exc:
        print(f"twistphase: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"twistphase: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TwistPhaseError as exc:
        print(f"twistphase: numerical-domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
