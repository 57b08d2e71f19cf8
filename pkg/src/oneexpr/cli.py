"""Command-line front end: one subcommand per capability.

Data goes to stdout, diagnostics to stderr, and output is assembled
before anything is printed so error paths never emit partial results.
Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 I/O
failure.

Expensive tables are cached between invocations when a cache directory
is given (``--cache-dir`` or the ONEEXPR_CACHE_DIR environment
variable); a cached table of any size seeds the build for a bigger one.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .books import (
    BadMagicError,
    BookSpec,
    CorruptRecordError,
    VersionMismatchError,
    load_table,
    save_table,
    write_book,
)
from .counting import CountTable, build_count_table
from .formula import (
    OPSETS,
    ParseError,
    eval_postfix_with_depth,
    evaluate,
    from_infix,
    from_postfix,
    min_memory_postfix,
    to_infix,
    to_postfix,
)
from .growth import estimate_growth
from .sampling import sample_many
from .shortest import ShortestTable, build_shortest_table

CACHE_ENV = "ONEEXPR_CACHE_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2
    # for invalid input data and reports usage problems as 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _span(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not match:
        raise argparse.ArgumentTypeError("expected LO..HI")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo < 1 or lo > hi:
        raise argparse.ArgumentTypeError("need 1 <= LO <= HI")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="oneexpr",
        description="Count, sample, and minimize arithmetic formulas whose only input is 1.",
        epilog=f"Cache directory: --cache-dir or ${CACHE_ENV}; --no-cache disables.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--ops",
        choices=sorted(OPSETS),
        default="ame",
        help="operation alphabet: a=+, am=+*, ame=+*^, ae=+^ (default: ame)",
    )
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--cache-dir", help="directory for cached tables")
    common.add_argument("--no-cache", action="store_true", help="ignore any cache")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("count", parents=[common], help="representation counts per n")
    p.add_argument("--upto", type=_positive, required=True, metavar="N")
    p.add_argument("--per-root", action="store_true", help="also split counts by root operation")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("sample", parents=[common], help="uniform random formulas for a value")
    p.add_argument("--value", type=_positive, required=True, metavar="N")
    p.add_argument("--draws", type=_positive, default=1, metavar="K")
    p.add_argument("--seed", type=_seed, default=0, metavar="S")
    p.add_argument("--format", choices=("postfix", "infix"), default="postfix")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("shortest", parents=[common], help="minimal formulas and lengths")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--value", type=_positive, metavar="N")
    which.add_argument("--range", type=_span, metavar="LO..HI", dest="span")
    p.add_argument("--minmemory", action="store_true",
                   help="emit in minimal-stack-depth order and report the depth")
    p.add_argument("--format", choices=("postfix", "infix"), default="postfix")
    p.set_defaults(handler=_cmd_shortest)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula given as text")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--postfix", metavar="S")
    which.add_argument("--infix", metavar="S")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("validate", parents=[common], help="check postfix text")
    p.add_argument("--postfix", required=True, metavar="S")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("asymptotics", parents=[common],
                       help="growth-constant estimates for the counting sequence")
    p.add_argument("--upto", type=_positive, required=True, metavar="N")
    p.add_argument("--window", type=_positive, default=20, metavar="W")
    p.add_argument("--plot", metavar="PATH",
                   help="also render the convergence figure to this file")
    p.set_defaults(handler=_cmd_asymptotics)

    p = sub.add_parser("book", parents=[common], help="write a book of minimal formulas")
    p.add_argument("--count-upto", type=_positive, required=True, metavar="K1")
    p.add_argument("--shortest-upto", type=_positive, required=True, metavar="K2")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_book)
    return parser


def _warn(message: str) -> None:
    print(f"oneexpr: warning: {message}", file=sys.stderr)


def _cache_dir(args) -> str | None:
    if args.no_cache:
        return None
    return args.cache_dir or os.environ.get(CACHE_ENV) or None


def _best_cached(directory: str, kind: str, ops_name: str):
    """Largest loadable cached table of the given kind and alphabet."""
    pattern = re.compile(rf"^{kind}-{ops_name}-(\d+)\.tbl$")
    try:
        entries = os.listdir(directory)
    except OSError:
        return None
    sized = sorted(
        ((int(m.group(1)), name) for name in entries if (m := pattern.match(name))),
        reverse=True,
    )
    for _, name in sized:
        path = os.path.join(directory, name)
        try:
            return load_table(path)
        except (OSError, BadMagicError, VersionMismatchError, CorruptRecordError) as exc:
            _warn(f"ignoring cache file {path}: {exc}")
    return None


def _table(kind: str, ops_name: str, n: int, args):
    builder = build_count_table if kind == "counts" else build_shortest_table
    klass = CountTable if kind == "counts" else ShortestTable
    ops = OPSETS[ops_name]
    directory = _cache_dir(args)
    base = None
    if directory is not None:
        base = _best_cached(directory, kind, ops_name)
        if base is not None and not isinstance(base, klass):
            base = None
    table = builder(ops, n, base=base)
    if directory is not None and (base is None or base.n_max < n):
        path = os.path.join(directory, f"{kind}-{ops_name}-{n}.tbl")
        try:
            os.makedirs(directory, exist_ok=True)
            save_table(table, path)
        except OSError as exc:
            _warn(f"could not write cache file {path}: {exc}")
    return table


def _emit(args, plain_lines: list[str], document: dict) -> int:
    if args.json:
        print(json.dumps(document, indent=2))
    elif plain_lines:
        print("\n".join(plain_lines))
    return EXIT_OK


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _cmd_count(args) -> int:
    table = _table("counts", args.ops, args.upto, args)
    lines = []
    rows = []
    for n in range(1, args.upto + 1):
        if args.per_root:
            lines.append(
                f"{n}\t{table.add_rooted[n]}\t{table.mul_rooted[n]}"
                f"\t{table.pow_rooted[n]}\t{table.total[n]}"
            )
            rows.append(
                {
                    "n": n,
                    "add": str(table.add_rooted[n]),
                    "mul": str(table.mul_rooted[n]),
                    "pow": str(table.pow_rooted[n]),
                    "total": str(table.total[n]),
                }
            )
        else:
            lines.append(f"{n}\t{table.total[n]}")
            rows.append({"n": n, "total": str(table.total[n])})
    return _emit(args, lines, {
        "command": "count",
        "ops": args.ops,
        "upto": args.upto,
        "per_root": args.per_root,
        "rows": rows,
    })


def _cmd_sample(args) -> int:
    table = _table("counts", args.ops, args.value, args)
    render = to_postfix if args.format == "postfix" else to_infix
    texts = [render(f) for f in sample_many(table, args.value, args.draws, args.seed)]
    return _emit(args, texts, {
        "command": "sample",
        "ops": args.ops,
        "value": args.value,
        "draws": args.draws,
        "seed": args.seed,
        "notation": args.format,
        "formulas": texts,
    })


def _cmd_shortest(args) -> int:
    lo, hi = (args.value, args.value) if args.value is not None else args.span
    if args.minmemory and args.format == "infix":
        _warn("--minmemory orders postfix tokens; --format infix does not apply")
        return EXIT_USAGE
    table = _table("shortest", args.ops, hi, args)
    lines = []
    rows = []
    for n in range(lo, hi + 1):
        witness = table.formula(n)
        tokens = table.length(n)
        if args.minmemory:
            text, depth = min_memory_postfix(witness)
            lines.append(f"{n}\t{text}\t{tokens}\t{depth}")
            rows.append({"n": n, "formula": text, "tokens": tokens, "depth": depth})
        else:
            text = to_postfix(witness) if args.format == "postfix" else to_infix(witness)
            lines.append(f"{n}\t{text}\t{tokens}")
            rows.append({"n": n, "formula": text, "tokens": tokens})
    return _emit(args, lines, {
        "command": "shortest",
        "ops": args.ops,
        "from": lo,
        "to": hi,
        "minmemory": args.minmemory,
        "notation": args.format,
        "rows": rows,
    })


def _cmd_eval(args) -> int:
    if args.postfix is not None:
        notation, text = "postfix", args.postfix
        value, depth = eval_postfix_with_depth(text)
    else:
        notation, text = "infix", args.infix
        tree = from_infix(text)
        value = evaluate(tree)
        depth = eval_postfix_with_depth(to_postfix(tree))[1]
    return _emit(args, [f"{value}\t{depth}"], {
        "command": "eval",
        "notation": notation,
        "input": text,
        "value": str(value),
        "depth": depth,
    })


def _cmd_validate(args) -> int:
    try:
        from_postfix(args.postfix)
    except ParseError as exc:
        if args.json:
            print(json.dumps({
                "command": "validate",
                "input": args.postfix,
                "valid": False,
                "error": exc.code,
            }, indent=2))
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return _emit(args, [], {
        "command": "validate",
        "input": args.postfix,
        "valid": True,
    })


def _cmd_asymptotics(args) -> int:
    table = _table("counts", args.ops, args.upto, args)
    est = estimate_growth(table.totals(), window=args.window)
    lines = [f"{n}\t{_fmt(mu)}\t{_fmt(g)}" for n, mu, g in est.tail()]
    lines.append(f"mu_hat\t{_fmt(est.mu_hat)}")
    lines.append(f"g_hat\t{_fmt(est.g_hat)}")
    document = {
        "command": "asymptotics",
        "ops": args.ops,
        "upto": args.upto,
        "window": est.window,
        "tail": [{"n": n, "mu": mu, "g": g} for n, mu, g in est.tail()],
        "mu_hat": est.mu_hat,
        "g_hat": est.g_hat,
    }
    if args.plot:
        from .plots import save_growth_figure

        save_growth_figure(est, args.plot, title=f"count growth, ops={args.ops}")
        document["plot"] = args.plot
    return _emit(args, lines, document)


def _cmd_book(args) -> int:
    spec = BookSpec(OPSETS[args.ops], args.count_upto, args.shortest_upto, args.out)
    counts = _table("counts", args.ops, args.count_upto, args)
    shortest = _table("shortest", args.ops, args.shortest_upto, args)
    summary = write_book(spec, counts=counts, shortest=shortest)
    return _emit(args, [f"{summary.path}\t{summary.content_lines}"], {
        "command": "book",
        "ops": args.ops,
        "count_upto": args.count_upto,
        "shortest_upto": args.shortest_upto,
        "path": summary.path,
        "content_lines": summary.content_lines,
    })


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, LookupError) as exc:
        print(f"oneexpr: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"oneexpr: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
