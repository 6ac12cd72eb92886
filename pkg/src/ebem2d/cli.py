"""Command-line front end.

Subcommands:

- ``solve``: run one configured experiment (config file or named preset)
  and write its CSV artifacts.
- ``ladder``: same, plus a fitted convergence rate over the ladder.
- ``exponents``: sweep the corner singular exponent over opening angles
  and write the angle/exponent curve.
- ``presets list``: show the available named studies.

Exit codes: 0 on success, 2 on configuration errors, 3 when a numerical
accuracy check fails (non-monotone energy ladder or marching residual
above the requested tolerance).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .experiments import (
    ConfigError,
    PRESETS,
    parse_config,
    rate_table,
    run_experiment,
    tip_exponent,
    write_config,
)
from .singular_analysis import write_exponent_curve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="experiment config file")
    p.add_argument("--preset", metavar="NAME", help="named study (see presets list)")
    p.add_argument("--out", metavar="DIR", default=".", help="output directory")
    p.add_argument("--tol", metavar="X", type=float, default=1e-10,
                   help="accuracy tolerance for the final residual check")
    p.add_argument("--threads", metavar="N", type=int, default=None,
                   help="assembly threads (default: all cores)")


def _load_config(args):
    if (args.config is None) == (args.preset is None):
        raise ConfigError("give exactly one of --config or --preset")
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; "
                              "see `presets list`")
        return PRESETS[args.preset]()
    return parse_config(args.config)


def _set_threads(n):
    if n is not None:
        import numba

        numba.set_num_threads(max(1, n))


def _run(args, fit_rate: bool) -> int:
    config = _load_config(args)
    _set_threads(args.threads)
    report = run_experiment(config, out_dir=args.out)
    for lvl, dof, dt, ene, err in report.rows:
        line = f"level {lvl}: dof={dof} dt={dt:.6g} energy={ene:.6e}"
        if err == err:
            line += f" sq_error={err:.3e}"
        print(line)
    if fit_rate and len(report.rows) >= 3 and report.benchmark is not None:
        slope = rate_table(report)
        print(f"fitted rate: squared error ~ DOF^{slope:.3f}")
    if config.sweep_corner is not None and report.solutions:
        space, grid, solution = report.solutions[-1]
        for t in config.sweep_times:
            s = tip_exponent(space, solution, config.sweep_corner, t)
            print(f"near-corner exponent at t={t:g}: {s:.4f}")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if any("not monotone" in w for w in report.warnings):
        return EXIT_ACCURACY
    if report.benchmark is not None:
        # Galerkin energies approach the benchmark from below; a level that
        # overshoots it signals an accuracy failure, not a better answer.
        worst = min(r[4] for r in report.rows)
        if worst < -args.tol:
            print(f"error: energy exceeds benchmark by {-worst:.3e}",
                  file=sys.stderr)
            return EXIT_ACCURACY
    return EXIT_OK


def _cmd_exponents(args) -> int:
    omegas = np.linspace(args.min_angle, args.max_angle, args.count)
    path = os.path.join(args.out, "exponents.csv")
    os.makedirs(args.out, exist_ok=True)
    write_exponent_curve(path, omegas, args.kolosov)
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_presets(args) -> int:
    if args.action != "list":
        raise ConfigError(f"unknown presets action {args.action!r}")
    for name in sorted(PRESETS):
        print(name)
    return EXIT_OK


def _cmd_dump(args) -> int:
    config = _load_config(args)
    write_config(config, args.path)
    print(f"wrote {args.path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ebem2d", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one experiment config")
    _add_common(p)
    p.set_defaults(func=lambda a: _run(a, fit_rate=False))

    p = sub.add_parser("ladder", help="run a convergence study with rate fit")
    _add_common(p)
    p.set_defaults(func=lambda a: _run(a, fit_rate=True))

    p = sub.add_parser("exponents", help="corner singular exponent vs angle")
    p.add_argument("--out", metavar="DIR", default=".")
    p.add_argument("--min-angle", type=float, default=0.05)
    p.add_argument("--max-angle", type=float, default=2 * np.pi - 0.05)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--kolosov", type=float, default=5.0 / 3.0)
    p.set_defaults(func=_cmd_exponents)

    p = sub.add_parser("presets", help="inspect named studies")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=_cmd_presets)

    p = sub.add_parser("dump-config", help="write a preset as a config file")
    _add_common(p)
    p.add_argument("path", help="destination config file")
    p.set_defaults(func=_cmd_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
