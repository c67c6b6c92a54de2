"""Command line driver: `esdg run <config>` and `esdg converge <config>`."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import parse_config
from .errors import AdmissibilityError, ConfigError, ConvergenceError
from .runner import convergence, run


def _load_config(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)


def _apply_overrides(config, args):
    if args.flux is not None:
        config = replace(config, flux=args.flux)
    if args.no_limiter:
        config = replace(config, tvb_limiter=False, bounds_limiter=False)
    if args.out is not None:
        config = replace(config, out=args.out)
    return config.validate()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="esdg",
        description="Entropy-stable DG solver for special relativistic hydrodynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured problem and write output files")
    p_run.add_argument("config", help="path to a key=value config file")

    p_conv = sub.add_parser("converge", help="error table against the exact solution")
    p_conv.add_argument("config", help="path to a key=value config file")
    p_conv.add_argument(
        "--resolutions", required=True,
        help="comma-separated cell counts, e.g. 32,64,128",
    )

    for p in (p_run, p_conv):
        p.add_argument("--flux", choices=("lf", "ec"), default=None, help="interface flux override")
        p.add_argument("--no-limiter", action="store_true", help="disable both limiters")
        p.add_argument("--out", default=None, help="output directory override")

    args = parser.parse_args(argv)
    try:
        config = _apply_overrides(_load_config(args.config), args)
        if args.command == "run":
            written = run(config)
            print(f"wrote {written['solution']}")
            return 0
        resolutions = [int(v) for v in args.resolutions.split(",") if v.strip()]
        report = convergence(config, resolutions)
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        lines = ["# cells l1_error l1_order linf_error linf_order"]
        for i, n in enumerate(report.resolutions):
            o1 = f"{report.l1_orders[i-1]:.2f}" if i else "..."
            oi = f"{report.linf_orders[i-1]:.2f}" if i else "..."
            lines.append(f"{n} {report.l1[i]:.6e} {o1} {report.linf[i]:.6e} {oi}")
        table = "\n".join(lines) + "\n"
        (out / "errors.dat").write_text(table)
        print(table, end="")
        return 0
    except (ConfigError, AdmissibilityError, ConvergenceError, ValueError) as exc:
        print(f"esdg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
