"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage/parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .arith import parse_index_vector, parse_rational
from .configspace import (
    DEFAULT_MAX_CONFIGS,
    ConfigError,
    ConfigParams,
    Configuration,
    count,
    enumerate_configurations,
    read_jsonl,
    signed_sum,
)
from .identity import (
    ENUMERATIVE,
    IdentityInstance,
    VerifyReport,
    check_reduction_to_binomial,
    check_reduction_to_delannoy,
    multinomial_lhs,
    multinomial_rhs,
    verify_random,
    verify_symbolic,
)
from .involution import audit, fixed_point_count, fixed_point_sum, fixed_points
from .multipoly import X, Y, canonical_string

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _csv_rationals(text: str):
    return tuple(parse_rational(part) for part in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="involutive-identity",
        description="Verify the multinomial summation identity symbolically and through its "
        "sign-reversing involution on weighted words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", required=True, help="comma-separated nonnegative integers")
    common.add_argument("--alpha", type=int)
    common.add_argument("--beta", type=int)
    common.add_argument("--max-configs", type=int, default=DEFAULT_MAX_CONFIGS)
    common.add_argument(
        "--allow-zero-alpha", action="store_true", help="accept alpha = 0 in combinatorial commands"
    )

    xy = argparse.ArgumentParser(add_help=False)
    xy.add_argument("--symbolic-ab", action="store_true", help="keep alpha and beta symbolic")
    xy.add_argument("--symbolic-xy", action="store_true", help="keep x and y symbolic (default)")
    xy.add_argument("--x", type=_csv_rationals, help="comma-separated rationals x1..xm")
    xy.add_argument("--y", type=_csv_rationals, help="comma-separated rationals y1..ym")

    def fmt(p, default):
        p.add_argument("--format", choices=("text", "json", "jsonl"), default=default)

    p = sub.add_parser("verify", parents=[common, xy], help="check the identity")
    p.add_argument("--mode", choices=("symbolic", "random", "enumerate"), default="symbolic")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", dest="value_range", type=int, default=1000)
    fmt(p, "json")

    p = sub.add_parser("enumerate", parents=[common], help="stream configurations")
    p.add_argument("--k", help="restrict to one k vector")
    p.add_argument("--input", help="validate and re-emit configurations from a JSONL file ('-' = stdin)")
    fmt(p, "jsonl")

    p = sub.add_parser("count", parents=[common], help="closed-form number of configurations")
    p.add_argument("--k", help="restrict to one k vector")
    fmt(p, "text")

    p = sub.add_parser("audit", parents=[common], help="audit the involution exhaustively")
    fmt(p, "json")

    p = sub.add_parser("fixed-points", parents=[common], help="fixed points and their weight sum")
    fmt(p, "json")

    p = sub.add_parser("reduce", help="check the one-variable and Delannoy specializations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    fmt(p, "json")
    return parser


def _n(args) -> tuple[int, ...]:
    try:
        n = parse_index_vector(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not n or any(v < 0 for v in n):
        raise UsageError(f"--n must be nonempty and nonnegative, got {args.n!r}")
    return n


def _instance(args) -> IdentityInstance:
    if args.symbolic_ab and (args.alpha is not None or args.beta is not None):
        raise UsageError("--symbolic-ab conflicts with --alpha/--beta")
    if args.symbolic_xy and (args.x is not None or args.y is not None):
        raise UsageError("--symbolic-xy conflicts with --x/--y")
    return IdentityInstance(_n(args), alpha=args.alpha, beta=args.beta, x=args.x, y=args.y)


def _params(args) -> ConfigParams:
    if args.alpha is None or args.beta is None:
        raise UsageError("combinatorial commands need integer --alpha and --beta")
    return ConfigParams(_n(args), args.alpha, args.beta, args.allow_zero_alpha)


def _emit(obj, out: TextIO, compact: bool = False) -> None:
    if compact:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        out.write(json.dumps(obj, indent=2) + "\n")


def _emit_text(pairs, out: TextIO) -> None:
    for key, value in pairs:
        if isinstance(value, bool):
            value = "true" if value else "false"
        out.write(f"{key}: {value}\n")


def _config_text(c: Configuration) -> str:
    cells = []
    for pos, (letter, mark) in enumerate(zip(c.letters, c.marks), start=1):
        cell = letter if mark == "1" else f"{letter}:{mark}"
        cells.append(f"({cell})" if pos in c.circled else cell)
    return " ".join(cells)


def _report(report: VerifyReport, args, out: TextIO) -> int:
    if args.format == "text":
        _emit_text(report.to_json().items(), out)
    else:
        _emit(report.to_json(), out, compact=args.format == "jsonl")
    return EXIT_OK if report.equal else EXIT_FAILED


def _verify(args, out: TextIO) -> int:
    inst = _instance(args)
    if args.mode == "symbolic":
        return _report(verify_symbolic(inst), args, out)
    if args.mode == "random":
        if args.trials < 1 or args.value_range < 0:
            raise UsageError("--trials must be >= 1 and --range >= 0")
        return _report(verify_random(inst, args.trials, args.seed, args.value_range), args, out)

    params = _params(args)
    assignment = {}
    if inst.x is not None:
        assignment.update({X(i): v for i, v in enumerate(inst.x, start=1)})
    if inst.y is not None:
        assignment.update({Y(i): v for i, v in enumerate(inst.y, start=1)})
    signed = signed_sum(params, max_configs=args.max_configs).substitute(assignment)
    fixed = fixed_point_sum(params, max_configs=args.max_configs).substitute(assignment)
    equal = signed == multinomial_lhs(inst) and fixed == multinomial_rhs(inst)
    return _report(VerifyReport(equal=equal, mode=ENUMERATIVE, difference=signed - fixed), args, out)


def _enumerate(args, out: TextIO) -> int:
    if args.input is not None:
        handle = sys.stdin if args.input == "-" else open(args.input)
        with handle:
            configs = list(read_jsonl(handle, args.allow_zero_alpha))
    else:
        k = parse_index_vector(args.k) if args.k else None
        configs = enumerate_configurations(_params(args), k, args.max_configs)
    if args.format == "json":
        _emit([c.to_json() for c in configs], out)
        return EXIT_OK
    for c in configs:
        if args.format == "jsonl":
            _emit(c.to_json(), out, compact=True)
        else:
            out.write(_config_text(c) + "\n")
    return EXIT_OK


def _count(args, out: TextIO) -> int:
    params = _params(args)
    k = parse_index_vector(args.k) if args.k else None
    total = count(params, k)
    if args.format == "text":
        out.write(f"{total}\n")
    else:
        obj = {"instance": params.to_json(), "k": None if k is None else list(k), "count": str(total)}
        _emit(obj, out, compact=args.format == "jsonl")
    return EXIT_OK


def _audit(args, out: TextIO) -> int:
    report = audit(_params(args), args.max_configs)
    obj = report.to_json()
    if args.format == "text":
        _emit_text(
            [("instance", json.dumps(obj["instance"]))]
            + [(f"check {name}", "pass" if ok else "FAIL") for name, ok in obj["checks"].items()]
            + [(name, value) for name, value in obj["totals"].items()]
            + [(name, value) for name, value in obj["sums"].items()]
            + [("counterexample", json.dumps(obj["counterexample"]))],
            out,
        )
    else:
        _emit(obj, out, compact=args.format == "jsonl")
    return EXIT_OK if report.passed else EXIT_FAILED


def _fixed_points(args, out: TextIO) -> int:
    params = _params(args)
    if args.format == "jsonl":
        for c in fixed_points(params, args.max_configs):
            _emit(c.to_json(), out, compact=True)
        return EXIT_OK
    found = sum(1 for _ in fixed_points(params, args.max_configs))
    closed = fixed_point_count(params)
    total = fixed_point_sum(params, args.max_configs)
    rhs = multinomial_rhs(IdentityInstance(params.n, alpha=params.alpha, beta=params.beta))
    equal = total == rhs and found == closed
    obj = {
        "instance": params.to_json(),
        "fixed_points": found,
        "closed_form_count": str(closed),
        "fixed_sum": canonical_string(total),
        "rhs": canonical_string(rhs),
        "equal": equal,
    }
    if args.format == "text":
        _emit_text(obj.items(), out)
    else:
        _emit(obj, out)
    return EXIT_OK if equal else EXIT_FAILED


def _reduce(args, out: TextIO) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    to_binomial = check_reduction_to_binomial(args.n, alpha=args.alpha, beta=args.beta)
    to_delannoy = check_reduction_to_delannoy(args.n)
    obj = {"n": args.n, "to_binomial": to_binomial.to_json(), "to_delannoy": to_delannoy.to_json()}
    if args.format == "text":
        _emit_text(
            [("to_binomial", to_binomial.equal), ("to_delannoy", to_delannoy.equal)], out
        )
    else:
        _emit(obj, out, compact=args.format == "jsonl")
    return EXIT_OK if to_binomial.equal and to_delannoy.equal else EXIT_FAILED


COMMANDS = {
    "verify": _verify,
    "enumerate": _enumerate,
    "count": _count,
    "audit": _audit,
    "fixed-points": _fixed_points,
    "reduce": _reduce,
}


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
