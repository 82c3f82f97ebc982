"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 bad input data, 3 iteration
budget exceeded.  All field elements are printed as decimal integers in
the curve's element encoding.
"""

from __future__ import annotations

import argparse
import sys

from .code import build_code, encode, load_system
from .decoder import list_decode
from .errors import BudgetExceeded, DataError, ZeroInversion
from .harness import LINE_HEADER, TrialConfig, format_table, iteration_bound, run_trials


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--curve", required=True, help="curve file path or bundled name")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta", type=int, help="designed distance for the improved construction")
    group.add_argument("--gamma", type=str, help="explicit comma-separated support orders")


def _parse_gamma(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad gamma list {text!r}") from exc


def _build(args):
    system = load_system(args.curve)
    code = build_code(system, delta=args.delta, gamma=_parse_gamma(args.gamma))
    return system, code


def _read_message(path: str, code) -> dict[int, int]:
    msg: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            s_str, v_str = ln.split()
            msg[int(s_str)] = int(v_str)
    return msg


def _read_word(path: str) -> tuple[int, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        return tuple(int(tok) for tok in fh.read().split())


def cmd_info(args) -> int:
    system = load_system(args.curve)
    sg = system.sg
    print(f"curve {system.curve.name}")
    print(f"field GF({system.field.q})  (p={system.field.p}, m={system.field.m})")
    print(f"weights {' '.join(map(str, system.curve.weights))}")
    print(f"genus {sg.genus}")
    print(f"points {system.n}")
    print(f"generators {' '.join(map(str, sg.generators()))}")
    print(f"gaps {' '.join(map(str, sg.gaps))}")
    print(f"kept {' '.join(map(str, system.hhat))}")
    print("nu " + " ".join(f"{s}:{sg.nu(s)}" for s in system.hhat))
    return 0


def cmd_build_code(args) -> int:
    _, code = _build(args)
    print(f"gamma {' '.join(map(str, code.gamma))}")
    print(f"dim {code.dim}")
    print(f"dag {code.dag}")
    return 0


def cmd_encode(args) -> int:
    _, code = _build(args)
    msg = _read_message(args.message, code)
    word = encode(code, msg)
    print(" ".join(map(str, word)))
    return 0


def cmd_decode(args) -> int:
    system, code = _build(args)
    word = _read_word(args.word)
    result = list_decode(system, code, word, args.tau, args.criterion)
    print(f"found {len(result.entries)}")
    for msg, cw, dist in result.entries:
        pairs = " ".join(f"{s}:{v}" for s, v in sorted(msg.items()))
        print(f"distance {dist} message {pairs} codeword {' '.join(map(str, cw))}")
    print(f"iterations {result.iterations}")
    print(f"ops {result.counter.total()}")
    return 0


def cmd_simulate(args) -> int:
    cfg = TrialConfig(
        curve=args.curve,
        tau=args.tau,
        criterion=args.criterion,
        delta=args.delta,
        gamma=_parse_gamma(args.gamma),
        trials=args.trials,
        error_mode=args.mode,
        rng_seed=args.seed,
    )
    stats = run_trials(cfg)
    if args.format == "table":
        print(format_table([stats]))
    else:
        print(LINE_HEADER)
        print(stats.line())
    return 0


def cmd_bounds(args) -> int:
    _, code = _build(args)
    print(f"bound criterion 1/2: {iteration_bound(code, args.tau, 2)}")
    print(f"bound criterion 3: {iteration_bound(code, args.tau, 3)}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agcodes",
        description="One-point AG codes: build, encode, list-decode, simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="semigroup and precomputation summary")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("build-code", help="code support, dimension, designed distance")
    _add_code_flags(p)
    p.set_defaults(func=cmd_build_code)

    p = sub.add_parser("encode", help="encode a message file")
    _add_code_flags(p)
    p.add_argument("--message", required=True, help="file of 's value' pairs")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="list-decode a received word file")
    _add_code_flags(p)
    p.add_argument("--word", required=True, help="file of whitespace-separated elements")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--criterion", type=int, choices=(1, 2, 3), default=2)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo decoding trials")
    _add_code_flags(p)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--criterion", type=int, choices=(1, 2, 3), default=2)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("R", "N"), default="R")
    p.add_argument("--format", choices=("table", "lines"), default="table")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="iteration upper bounds for both criteria families")
    _add_code_flags(p)
    p.add_argument("--tau", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DataError, ZeroInversion, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
