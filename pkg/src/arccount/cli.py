"""Command-line entry point: ``arccount {enumerate,reduce,count,verify}``.

Exit codes: 0 success, 1 verification mismatch, 2 resource or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .enumerate import MAX_POINTS, ResourceLimit, SpaceCatalog, enumerate_planar_spaces, write_catalog
from .field import NotPrimePower, UnsupportedOrder
from .geometry import pgl_order
from .realize import UnsupportedMethod, count_arcs

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

METHODS = ("naive", "frame", "formula")
DEFAULT_CACHE = ".arccount-cache"


class UsageError(ValueError):
    pass


def _q_list(text: str) -> list[int]:
    try:
        qs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q list {text!r}") from None
    if not qs:
        raise argparse.ArgumentTypeError("empty q list")
    return qs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", type=int, required=True, help="number of points n")
    common.add_argument("--k", type=int, default=4, help="projective dimension plus one (only 4)")
    common.add_argument("--cache", type=Path, default=None, help="catalog cache directory")
    common.add_argument("--out", type=Path, default=None, help="output file")
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-q work")

    parser = argparse.ArgumentParser(prog="arccount", description="Count arcs in P^3(F_q).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="planar spaces up to isomorphism")
    p.add_argument("--hyperfigurations", action="store_true", help="write only hyperfigurations")

    sub.add_parser("reduce", parents=[common], help="symbolic arc count as formula JSON")

    for name, text in (("count", "arc counts at each q"), ("verify", "formula against brute force")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--q", type=_q_list, required=True, help="comma-separated field orders")
        p.add_argument("--method", choices=METHODS, default="naive" if name == "verify" else "frame")
    return parser


def _check(args) -> None:
    if args.k != 4:
        raise UsageError(f"only k=4 is supported, got k={args.k}")
    if args.points < 0:
        raise UsageError("--points must be nonnegative")
    if args.points > MAX_POINTS:
        raise ResourceLimit(f"n={args.points} exceeds the enumeration ceiling {MAX_POINTS}")
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.cache is not None:
        os.environ["ARCCOUNT_CACHE"] = str(args.cache)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


# -- commands ---------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    cat = enumerate_planar_spaces(args.points)
    print(f"n={cat.n} classes={len(cat)} hyperfigurations={len(cat.hyperfigurations)}")
    chosen = SpaceCatalog(cat.n, cat.hyperfigurations) if args.hyperfigurations else cat
    if args.out is not None:
        _emit("".join(e.encoding + "\n" for e in chosen), args.out)
        path = args.out
    else:
        directory = Path(os.environ.get("ARCCOUNT_CACHE") or DEFAULT_CACHE)
        if args.hyperfigurations:
            directory = directory / "hyperfigurations"
        path = write_catalog(chosen, directory)
    print(f"wrote {len(chosen)} entries to {path}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .reduction import formula_text

    _emit(formula_text(args.points), args.out)
    return EXIT_OK


def _effective_method(n: int, method: str) -> str:
    # the frame needs five points
    return "naive" if method == "frame" and n < 5 else method


def _arc_count(n: int, q: int, method: str) -> int:
    if method == "formula":
        from .reduction import arc_count_formula

        return arc_count_formula(n)(q)
    return count_arcs(n, q, _effective_method(n, method))


def _per_q(fn, qs: list[int], threads: int) -> list:
    if threads == 1:
        return [fn(q) for q in qs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, qs))


def cmd_count(args) -> int:
    n = args.points
    method = _effective_method(n, args.method)

    def one(q):
        t0 = time.perf_counter()
        c = _arc_count(n, q, method)
        return q, c, int((time.perf_counter() - t0) * 1000)

    rows = []
    for q, c, ms in _per_q(one, args.q, args.threads):
        if method == "frame":
            pgl = pgl_order(4, q)
            print(f"n={n} q={q} method=frame count={c} = {c // pgl} x |PGL_4(F_{q})| = {c // pgl} x {pgl}")
        else:
            print(f"n={n} q={q} method={method} count={c}")
        rows.append(json.dumps({"n": str(n), "q": str(q), "count": str(c), "method": method,
                                "elapsed_ms": str(ms)}, sort_keys=True))
    if args.out is not None:
        _emit("".join(r + "\n" for r in rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .reduction import arc_count_formula

    n = args.points
    formula = arc_count_formula(n)
    method = "naive" if args.method == "formula" else _effective_method(n, args.method)

    def one(q):
        return q, formula(q), _arc_count(n, q, method)

    failed = False
    lines = []
    for q, want, got in _per_q(one, args.q, args.threads):
        ok = want == got
        failed |= not ok
        lines.append(f"n={n} q={q} formula={want} {method}={got} {'PASS' if ok else 'FAIL'}")
    lines.append("PASS" if not failed else "FAIL")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        _emit(text, args.out)
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "reduce": cmd_reduce, "count": cmd_count, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _check(args)
        return COMMANDS[args.command](args)
    except ResourceLimit as exc:
        print(f"ResourceLimit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnsupportedMethod, UnsupportedOrder, NotPrimePower) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
