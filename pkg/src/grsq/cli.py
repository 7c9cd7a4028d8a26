"""Command-line front end.

Exit status: 0 success, 1 runtime-trend check failed, 2 parse or
configuration error, 3 decode failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import BoundInputs, bound_table
from .codec import DecodeFailure, ErrorPattern, corrupt, decode, encode
from .construction import (AlphaChoice, GeneratorKind, Preset,
                           choose_alphas, dump_code, load_code, make_code)
from .exact import bitwidth_vector, format_rat, rat
from .experiments import ExperimentConfig, random_error, run_stats, runtime_trend, stats_csv

EXIT_OK = 0
EXIT_TREND = 1
EXIT_CONFIG = 2
EXIT_DECODE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# symbol files
# --------------------------------------------------------------------------

def parse_symbols(text: str) -> tuple:
    """One rational per line; commas also separate.  Blank lines and
    '#' comments are ignored."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.split(","):
            tok = tok.strip()
            if tok:
                out.append(rat(tok))
    return tuple(out)


def format_symbols(v: Sequence) -> str:
    return "".join(format_rat(x) + "\n" for x in v)


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _rat_list(text: str) -> list:
    return [rat(t.strip()) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None
    if not vals:
        raise UsageError("empty integer list")
    return vals


def _load_code(path: Optional[str]):
    if path is None:
        raise UsageError("--code is required")
    return load_code(_read(path))


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_mkcode(args) -> int:
    if args.n is None or args.k is None:
        raise UsageError("mkcode needs --n and --k")
    custom = _rat_list(args.custom_alphas) if args.custom_alphas else None
    if (custom is not None) != (args.alphas == AlphaChoice.CUSTOM.value):
        raise UsageError("--custom-alphas goes together with --alphas custom")
    alphas = choose_alphas(args.alphas, args.n, custom)
    v = _rat_list(args.v) if args.v else None
    vp = _rat_list(args.v_prime) if args.v_prime else None
    code = make_code(args.n, args.k, alphas, args.preset, v=v, v_prime=vp)
    _write(args.out, dump_code(code))
    return EXIT_OK


def cmd_encode(args) -> int:
    code = _load_code(args.code)
    u = parse_symbols(_read(args.inp))
    _write(args.out, format_symbols(encode(code, args.gen, u)))
    return EXIT_OK


def cmd_corrupt(args) -> int:
    code = _load_code(args.code)
    c = parse_symbols(_read(args.inp))
    if len(c) != code.n:
        raise UsageError(f"word has {len(c)} symbols, code length is {code.n}")
    if args.error_file:
        e = ErrorPattern.from_vector(parse_symbols(_read(args.error_file)))
        e.to_vector(code.n)
    else:
        tau = code.radius if args.tau is None else args.tau
        if not 0 <= tau <= code.n:
            raise UsageError(f"--tau must lie in 0..{code.n}")
        e = random_error(code.n, tau, args.error_bits, random.Random(args.seed))
    _write(args.out, format_symbols(corrupt(c, e)))
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _load_code(args.code)
    r = parse_symbols(_read(args.inp))
    try:
        out = decode(code, r, method=args.method)
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return EXIT_DECODE
    _write(args.out, format_symbols(out.codeword))
    err_path = args.error_out or (f"{args.out}.err" if args.out not in (None, "-") else None)
    if err_path:
        Path(err_path).write_text(format_symbols(out.error))
    report = out.report.to_csv()
    if args.report:
        Path(args.report).write_text(report)
    else:
        sys.stderr.write(report)
    return EXIT_OK


def _config(args, **extra) -> ExperimentConfig:
    return ExperimentConfig(
        trials=args.trials, n_values=tuple(_int_list(args.n_list)),
        k=None if args.rate_third else args.k,
        info_bits=args.info_bits, error_bits=args.error_bits, tau=args.tau,
        alpha_choice=args.alphas, preset=args.preset, genkind=args.gen,
        seed=args.seed, **extra)


def cmd_stats(args) -> int:
    cfg = _config(args, decode=args.decode, timing=args.timing)
    _write(args.out, stats_csv(run_stats(cfg)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.code:
        code = _load_code(args.code)
        tau = code.radius if args.tau is None else args.tau
        b = BoundInputs.from_code(code, tau=tau, lambda_u=args.info_bits, lambda_e=args.error_bits)
    else:
        if args.n is None or args.k is None:
            raise UsageError("bounds needs --code or both --n and --k")
        if args.lambda_alpha is None:
            alphas = choose_alphas(args.alphas, args.n)
            args.lambda_alpha = bitwidth_vector(alphas)
        tau = (args.n - args.k) // 2 if args.tau is None else args.tau
        b = BoundInputs(args.n, args.k, tau=tau, lambda_alpha=args.lambda_alpha,
                        lambda_v=args.lambda_v, lambda_v_prime=args.lambda_v_prime,
                        lambda_u=args.info_bits, lambda_e=args.error_bits)
    lines = ["row,column,value\n"]
    lines += [f'"{row}","{col}",{val}\n' for row, col, val in bound_table(b)]
    _write(args.out, "".join(lines))
    return EXIT_OK


def cmd_runtime_trend(args) -> int:
    res = runtime_trend(_config(args), slope_limit=args.slope_limit)
    _write(args.out, res.to_csv())
    return EXIT_OK if res.ok else EXIT_TREND


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_code_choice(p, with_n=True):
    if with_n:
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
    p.add_argument("--alphas", choices=[c.value for c in AlphaChoice], default="min")
    p.add_argument("--preset", choices=[c.value for c in Preset], default="vprime1")


def _add_experiment(p, trials, n_list):
    _add_code_choice(p, with_n=False)
    p.add_argument("--gen", choices=[c.value for c in GeneratorKind], default="vandermonde")
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--n-list", default=n_list)
    rate = p.add_mutually_exclusive_group()
    rate.add_argument("--k", type=int)
    rate.add_argument("--rate-third", action="store_true", help="k = floor(n/3) (default)")
    p.add_argument("--info-bits", type=int, default=100)
    p.add_argument("--error-bits", type=int, default=32)
    p.add_argument("--tau", type=int, help="error weight (default: decoding radius)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grsq", description="Exact GRS codec over the rationals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mkcode", help="write a code document")
    _add_code_choice(p)
    p.add_argument("--custom-alphas", help="comma-separated locators for --alphas custom")
    p.add_argument("--v", help="comma-separated v for --preset custom")
    p.add_argument("--v-prime", help="comma-separated v' for --preset custom")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mkcode)

    p = sub.add_parser("encode", help="encode an information word")
    p.add_argument("--code", required=True)
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.add_argument("--gen", choices=[c.value for c in GeneratorKind], default="vandermonde")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="add a random or explicit error")
    p.add_argument("--code", required=True)
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau", type=int, help="error weight (default: decoding radius)")
    p.add_argument("--error-bits", type=int, default=32)
    p.add_argument("--error-file", help="explicit error vector, one symbol per line")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="decode a received word")
    p.add_argument("--code", required=True)
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.add_argument("--error-out", help="error vector file (default: OUT.err)")
    p.add_argument("--report", help="growth report CSV (default: stderr)")
    p.add_argument("--method", choices=["fraction_free", "classical"], default="fraction_free")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("stats", help="codeword bit-width statistics as CSV")
    _add_experiment(p, trials=100, n_list="30,60,90,120")
    p.add_argument("--decode", action="store_true", help="also corrupt and decode each word")
    p.add_argument("--timing", action="store_true", help="record decode wall time")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bounds", help="evaluate every tabulated bit-width bound")
    _add_code_choice(p)
    p.add_argument("--code")
    p.add_argument("--tau", type=int)
    p.add_argument("--lambda-alpha", type=int)
    p.add_argument("--lambda-v", type=int, default=0)
    p.add_argument("--lambda-v-prime", type=int, default=0)
    p.add_argument("--info-bits", type=int, default=100)
    p.add_argument("--error-bits", type=int, default=32)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("runtime-trend", help="decode time versus n, with log-log slope check")
    _add_experiment(p, trials=1, n_list="32,64,128,256")
    p.add_argument("--slope-limit", type=float, default=9.0)
    p.set_defaults(func=cmd_runtime_trend, preset="v1")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, OSError) as exc:
        # CodeConstructionError and malformed rationals are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
