"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 internal consistency failure
(including any failed ``verify`` check).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import bounds, report, resolution, schubert, verify

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2

_SCENARIOS = {s.value: s for s in bounds.Scenario}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; that code is reserved for consistency failures.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _profile_arg(text: str) -> bounds.MultiDegreeProfile:
    try:
        n, degs = text.split(":", 1)
        return bounds.MultiDegreeProfile(int(n), bounds.parse_degrees(degs))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N:D1,D2,... ({exc})") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="torsion-order",
        description="Certified divisibility bounds for torsion orders of complete intersections.",
    )
    parser.add_argument("--config", help="key=value file supplying defaults for the subcommand flags")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="certificate for one multi-degree profile")
    b.add_argument("--n", type=int, required=True, help="dimension of the complete intersection")
    b.add_argument("--degrees", required=True, help="comma-separated degrees d_1,...,d_r")
    b.add_argument("--scenario", choices=sorted(_SCENARIOS), default="generic")
    b.add_argument("--format", choices=report.FORMATS, default="md")

    t = sub.add_parser("table", help="certificates for a family of profiles")
    t.add_argument("--family", choices=("hypersurface", "custom"), default="hypersurface")
    t.add_argument("--n-from", type=int, default=3)
    t.add_argument("--n-to", type=int, default=8)
    t.add_argument("--degree-rule", default="n-plus-1", help="n-plus-1 or fixed:<d>")
    t.add_argument("--profile", type=_profile_arg, action="append", default=[],
                   help="N:D1,D2,... (custom family, repeatable)")
    t.add_argument("--scenario", choices=sorted(_SCENARIOS), default="very-general")
    t.add_argument("--format", choices=report.FORMATS, default="md")
    t.add_argument("--jobs", type=int, default=1)

    f = sub.add_parser("fano-lines", help="degree of the Fano variety of lines on a cubic n-fold")
    f.add_argument("--n", type=int, required=True)

    r = sub.add_parser("resolution", help="blow-up schedule for a p^m-cyclic cover singularity")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--format", choices=("json", "md"), default="md")

    v = sub.add_parser("verify", help="run every oracle-versus-implementation check")
    v.add_argument("--max-d", type=int, default=6)
    v.add_argument("--max-r", type=int, default=3)
    v.add_argument("--max-m", type=int, default=4)
    v.add_argument("--check", action="append", choices=sorted(verify.CHECKS), default=None)
    return parser


def read_config(path: str) -> list[tuple[str, str]]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    items = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        items.append((key.lstrip("-"), value))
    return items


def _extract_config(argv: list[str]) -> tuple[list[str], str | None]:
    out, path = [], None
    it = iter(range(len(argv)))
    for i in it:
        arg = argv[i]
        if arg == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            path = argv[i + 1]
            next(it, None)
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
        else:
            out.append(arg)
    return out, path


def _apply_config(argv: list[str], path: str) -> list[str]:
    """Splice config flags in right after the subcommand so later CLI flags win."""
    extra = []
    for key, value in read_config(path):
        extra += [f"--{key}", value]
    commands = {"bounds", "table", "fano-lines", "resolution", "verify"}
    for i, arg in enumerate(argv):
        if arg in commands:
            return argv[: i + 1] + extra + argv[i + 1:]
    return argv + extra


def _cmd_bounds(args) -> int:
    prof = bounds.MultiDegreeProfile(args.n, bounds.parse_degrees(args.degrees))
    cert = bounds.certificate(prof, _SCENARIOS[args.scenario])
    print(report.render_certificate(cert, args.format))
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.family == "hypersurface":
        profiles = report.hypersurface_family(args.n_from, args.n_to, args.degree_rule)
    else:
        profiles = args.profile
    print(report.emit_table(profiles, _SCENARIOS[args.scenario], args.format, jobs=max(1, args.jobs)))
    return EXIT_OK


def _cmd_fano(args) -> int:
    print(schubert.fano_lines_degree(args.n))
    return EXIT_OK


def _cmd_resolution(args) -> int:
    plan = resolution.resolution_plan(args.p, args.m, args.dim)
    if not resolution.verify_plan(plan):
        print("generated plan failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    print(report.render_plan(plan, args.format))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = verify.VerifyConfig(max_d=args.max_d, max_r=args.max_r, max_m=args.max_m)
    result = verify.verify_suite(cfg, only=args.check)
    print("\n".join(result.lines()))
    return EXIT_OK if result.passed else EXIT_INTERNAL


_COMMANDS = {
    "bounds": _cmd_bounds,
    "table": _cmd_table,
    "fano-lines": _cmd_fano,
    "resolution": _cmd_resolution,
    "verify": _cmd_verify,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv, config = _extract_config(argv)
        if config is not None:
            argv = _apply_config(argv, config)
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except bounds.InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
