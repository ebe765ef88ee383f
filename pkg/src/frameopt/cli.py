"""Command-line front end over JSON inputs.

Subcommands: nu | complete | feasible | dual | check-dual | potential.
Frame inputs are JSON files ({"d", "n", "vectors"}) or '-' for stdin;
spectra are inline comma-separated reals or a file path.  Output is JSON
with a fixed field order and numbers printed to 12 significant digits, so
identical inputs produce byte-identical stdout.

Exit codes: 0 success, 2 malformed input, 3 bad trace target,
4 infeasible completion (result still printed), 5 rank precondition
violated, 6 frame not spanning / singular operator.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .completion import CompletionProblem, complete, completion_to_json, plan
from .duals import DualProblem, dual_to_json, optimal_dual
from .errors import (
    BadM,
    BadTrace,
    FrameOptError,
    NotSpanning,
    RankDeficient,
    SingularFrameOperator,
)
from .frames import Frame, duality_residual, frame_from_json, potential
from .majorization import PotentialKind

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BAD_TRACE = 3
EXIT_INFEASIBLE = 4
EXIT_RANK = 5
EXIT_NOT_SPANNING = 6


class _ParseFailure(Exception):
    pass


def _read_source(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    try:
        with open(arg, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _ParseFailure(f"cannot read {arg!r}: {exc}") from exc


def _parse_reals(text: str) -> list[float]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise _ParseFailure("empty number list")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise _ParseFailure(f"bad number list: {exc}") from exc


def _load_spectrum(arg: str) -> list[float]:
    try:
        return _parse_reals(arg)
    except _ParseFailure:
        pass
    text = _read_source(arg).strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise _ParseFailure(f"bad JSON list: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(x, (int, float)) for x in data):
            raise _ParseFailure("spectrum file must hold a list of numbers")
        return [float(x) for x in data]
    return _parse_reals(text)


def _load_frame(arg: str) -> Frame:
    text = _read_source(arg)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ParseFailure(f"bad frame JSON: {exc}") from exc
    try:
        return frame_from_json(obj)
    except ValueError as exc:
        raise _ParseFailure(str(exc)) from exc


def _fmt_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    value = float(x)
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    out = format(value, ".12g")
    return out


def _emit(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        return _fmt_number(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _print(obj) -> None:
    sys.stdout.write(_emit(obj) + "\n")


def _cmd_nu(args) -> int:
    lam = _load_spectrum(args.lam)
    from .spectra import nu as nu_fn

    breakdown = nu_fn(lam, args.m, args.t, args.tol)
    _print(
        {
            "r": breakdown.r,
            "c": breakdown.c,
            "s_star": breakdown.s_star,
            "s_star_star": breakdown.s_star_star,
            "nu": [float(x) for x in breakdown.nu.values],
            "regime": breakdown.regime.value,
        }
    )
    return EXIT_OK


def _cmd_complete(args, stop_after_plan: bool) -> int:
    frame = _load_frame(args.frame)
    beta = _parse_reals(args.beta)
    problem = CompletionProblem(frame, beta)
    if stop_after_plan:
        the_plan = plan(problem, args.tol)
        from .completion import _bounds_dict

        _print(
            {
                "feasible": the_plan.feasible,
                "nu": [float(x) for x in the_plan.nu.values],
                "unique_B": the_plan.unique_B,
                "r_hat": the_plan.r_hat,
                "c_hat": the_plan.c_hat,
                "mu_hat": [float(x) for x in the_plan.mu_hat],
                "lower_bounds": _bounds_dict(the_plan.nu),
            }
        )
        return EXIT_OK if the_plan.feasible else EXIT_INFEASIBLE
    result = complete(problem, args.tol)
    _print(completion_to_json(result))
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _cmd_dual(args) -> int:
    frame = _load_frame(args.frame)
    result = optimal_dual(DualProblem(frame, args.t), args.tol)
    _print(dual_to_json(result))
    return EXIT_OK


def _cmd_check_dual(args) -> int:
    frame = _load_frame(args.frame)
    other = _load_frame(args.dual)
    residual = duality_residual(frame, other)
    _print({"is_dual": bool(residual <= args.tol), "residual": residual})
    return EXIT_OK


def _cmd_potential(args) -> int:
    frame = _load_frame(args.frame)
    kind = PotentialKind.from_name(args.kind)
    value = potential(frame, kind)
    sys.stdout.write(_fmt_number(value) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frameopt",
        description="Optimal frame completions and trace-constrained optimal duals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_nu = sub.add_parser("nu", help="minimal reachable spectrum at a trace target")
    p_nu.add_argument("--lambda", dest="lam", required=True, metavar="SPECTRUM",
                      help="base spectrum: inline comma list, file path, or -")
    p_nu.add_argument("--m", type=int, required=True, help="rank bound parameter (< d)")
    p_nu.add_argument("--t", type=float, required=True, help="trace target (>= tr lambda)")
    p_nu.add_argument("--tol", type=float, default=1e-9)

    for name, help_text in (
        ("complete", "optimal completion with prescribed squared norms"),
        ("feasible", "feasibility analysis only (stops after the plan)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--frame", required=True, help="initial frame JSON (path or -)")
        p.add_argument("--beta", required=True,
                       help="prescribed squared norms, comma-separated")
        p.add_argument("--tol", type=float, default=1e-9)

    p_dual = sub.add_parser("dual", help="optimal dual with operator trace >= t")
    p_dual.add_argument("--frame", required=True, help="frame JSON (path or -)")
    p_dual.add_argument("--t", type=float, required=True, help="trace lower bound")
    p_dual.add_argument("--tol", type=float, default=1e-9)

    p_check = sub.add_parser("check-dual", help="test whether two frames are dual")
    p_check.add_argument("--frame", required=True)
    p_check.add_argument("--dual", required=True)
    p_check.add_argument("--tol", type=float, default=1e-9)

    p_pot = sub.add_parser("potential", help="convex potential of a frame")
    p_pot.add_argument("--frame", required=True)
    p_pot.add_argument("--kind", required=True, choices=["fp", "mse", "xlogx"])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "nu":
            return _cmd_nu(args)
        if args.command == "complete":
            return _cmd_complete(args, stop_after_plan=False)
        if args.command == "feasible":
            return _cmd_complete(args, stop_after_plan=True)
        if args.command == "dual":
            return _cmd_dual(args)
        if args.command == "check-dual":
            return _cmd_check_dual(args)
        if args.command == "potential":
            return _cmd_potential(args)
        parser.error(f"unknown command {args.command!r}")
    except _ParseFailure as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BadTrace, BadM) as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_BAD_TRACE
    except RankDeficient as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_RANK
    except (NotSpanning, SingularFrameOperator) as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_NOT_SPANNING
    except FrameOptError as exc:
        print(f"frameopt: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
