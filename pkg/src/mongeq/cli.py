"""Command-line front end.

Exit codes: 0 success, 1 verification or fuzz failure, 2 usage error
(including malformed matrix files, reported with their line number).
"""
from __future__ import annotations

import argparse
import bisect
import csv
import math
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from . import subcolumn, submatrix
from .duality import MongePredecessor, UniverseReduction
from .matrix import (GENERATOR_KINDS, CountingOracle, ExplicitMatrix, MatrixFormatError,
                     MatrixOracle, PartialShape, brute_max, format_matrix, generate_monge,
                     lines_oracle, parse_matrix, random_partial_shape, random_staircase,
                     verify_monge)
from .partial import PartialIndex
from .smawk import breakpoints, column_maxima, partial_column_maxima
from .staircase import StaircaseIndex

CSV_HEADER = ["n", "kind", "build_ns", "words", "q_p50_ns", "q_p99_ns", "probes_mean"]

# rectangle indexes: kind -> (builder(oracle, shape), needs a shape)
RECT_KINDS: Dict[str, Callable] = {
    "submatrix-basic": lambda o, s: submatrix.build_basic(o),
    "submatrix-linear": lambda o, s: submatrix.build_linear(o),
    "staircase-large": lambda o, s: StaircaseIndex(o, s, variant="large"),
    "staircase-linear": lambda o, s: StaircaseIndex(o, s, variant="linear"),
    "partial-large": lambda o, s: PartialIndex(o, s, variant="large"),
    "partial-linear": lambda o, s: PartialIndex(o, s, variant="linear"),
}
COLUMN_KINDS: Dict[str, Callable] = {
    "subcolumn-basic": subcolumn.build_basic,
    "subcolumn-two-level": subcolumn.build_two_level,
}
ALL_KINDS = sorted(RECT_KINDS) + sorted(COLUMN_KINDS)


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_matrix(_read_text(path))
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _default_kind(shape: Optional[PartialShape]) -> str:
    return "submatrix-linear" if shape is None else "partial-large"


def _build(kind: str, oracle: MatrixOracle, shape: Optional[PartialShape]):
    if kind in COLUMN_KINDS:
        if shape is not None:
            raise UsageError(f"{kind} needs a fully defined matrix")
        return COLUMN_KINDS[kind](oracle)
    if kind not in RECT_KINDS:
        raise UsageError(f"unknown index kind {kind!r}")
    if kind.startswith("submatrix") and shape is not None:
        raise UsageError(f"{kind} needs a fully defined matrix; use a partial-* kind")
    if not kind.startswith("submatrix"):
        shape = shape or PartialShape.full(oracle.rows, oracle.cols)
        if kind.startswith("staircase") and not (shape.is_full() or shape.staircase_orientation()):
            raise UsageError("matrix is not a staircase; use a partial-* kind")
    return RECT_KINDS[kind](oracle, shape)


def _fmt(hit) -> str:
    return "none" if hit is None else f"{hit[0]} {hit[1]} {hit[2]}"


def _ints(text: str, count: int, where: str) -> List[int]:
    parts = text.split()
    if len(parts) != count:
        raise UsageError(f"{where}: expected {count} integers")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"{where}: expected {count} integers") from None


def _rect_query(index, kind, args, oracle):
    if kind in COLUMN_KINDS:
        j, i0, i1 = args
        if not (1 <= j <= oracle.cols and 1 <= i0 <= i1 <= oracle.rows):
            raise UsageError(f"column query {j} [{i0},{i1}] out of range")
        r, v = index.query(j, i0, i1)
        return r, j, v
    i0, i1, j0, j1 = args
    if not (1 <= i0 <= i1 <= oracle.rows and 1 <= j0 <= j1 <= oracle.cols):
        raise UsageError(f"rectangle [{i0},{i1}]x[{j0},{j1}] out of range")
    return index.query(i0, i1, j0, j1)


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    m, n = args.rows, args.cols
    if m < 1 or n < 1:
        raise UsageError("--rows and --cols must be positive")
    oracle = generate_monge(args.seed, m, n, args.kind)
    rng = random.Random(args.seed ^ 0x5EED)
    shape = None
    if args.shape == "staircase":
        shape = random_staircase(rng, m, n, rng.choice(
            ("top-left", "bottom-left", "top-right", "bottom-right")))
    elif args.shape == "partial":
        shape = random_partial_shape(rng, m, n)
    text = format_matrix(oracle, shape)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    oracle, shape = _load(args.matrix)
    ok, where = verify_monge(oracle, args.convention, shape)
    if ok:
        print("OK")
        return 0
    print(f"NOT MONGE at rows {where[0]},{where[0] + 1} cols {where[1]},{where[1] + 1}")
    return 1


def cmd_maxima(args) -> int:
    oracle, shape = _load(args.matrix)
    if shape is None:
        rows = column_maxima(oracle)
        print("r:", " ".join(map(str, rows)))
        print("breakpoints:", " ".join(f"{b.col}:{b.row}" for b in breakpoints(oracle)))
    else:
        rows = partial_column_maxima(oracle, shape)
        print("r:", " ".join("*" if r is None else str(r) for r in rows))
    return 0


def cmd_build(args) -> int:
    oracle, shape = _load(args.matrix)
    kind = args.index or _default_kind(shape)
    start = time.perf_counter_ns()
    index = _build(kind, oracle, shape)
    elapsed = time.perf_counter_ns() - start
    print(f"kind={kind} rows={oracle.rows} cols={oracle.cols} words={index.words()} build_ns={elapsed}")
    return 0


def cmd_query(args) -> int:
    oracle, shape = _load(args.matrix)
    kind = args.index or ("subcolumn-two-level" if args.col is not None else _default_kind(shape))
    column = kind in COLUMN_KINDS
    index = _build(kind, oracle, shape)
    if args.rect is not None:
        if column:
            raise UsageError("--rect needs a rectangle index kind")
        print(_fmt(_rect_query(index, kind, args.rect, oracle)))
    elif args.col is not None:
        if not column:
            raise UsageError("--col needs a subcolumn index kind")
        if args.rows is None:
            raise UsageError("--col needs --rows i0 i1")
        print(_fmt(_rect_query(index, kind, [args.col, *args.rows], oracle)))
    elif args.batch is not None:
        width = 3 if column else 4
        for k, line in enumerate(_read_text(args.batch).splitlines(), 1):
            if line.strip():
                print(_fmt(_rect_query(index, kind, _ints(line, width, f"batch line {k}"), oracle)))
    else:
        raise UsageError("one of --rect, --col or --batch is required")
    return 0


def _fuzz_instance(kind: str, rng: random.Random, n: int):
    m, w = rng.randint(1, n), rng.randint(1, n)
    oracle = generate_monge(rng.getrandbits(64), m, w, rng.choice(GENERATOR_KINDS))
    shape = None
    if kind.startswith("staircase"):
        shape = random_staircase(rng, m, w, rng.choice(
            ("top-left", "bottom-left", "top-right", "bottom-right")))
    elif kind.startswith("partial"):
        shape = random_partial_shape(rng, m, w)
    if shape is not None:
        # undefined cells must never be read
        oracle = ExplicitMatrix([[v if shape.defined(i, j) else None
                                  for j, v in enumerate(row, 1)]
                                 for i, row in enumerate(oracle.data, 1)])
    return oracle, shape


def _check_answer(oracle, shape, rect, got) -> bool:
    want = brute_max(oracle, *rect, shape=shape)
    if want is None or got is None:
        return want is None and got is None
    i, j, v = got
    i0, i1, j0, j1 = rect
    inside = i0 <= i <= i1 and j0 <= j <= j1 and (shape is None or shape.defined(i, j))
    return inside and v == want[2] and oracle.entry(i, j) == v


def _smawk_probes(oracle) -> int:
    counted = CountingOracle(oracle)
    column_maxima(counted)
    return counted.probes


def cmd_fuzz(args) -> int:
    kind = args.index
    if kind not in ALL_KINDS:
        raise UsageError(f"unknown index kind {kind!r}")
    if args.n < 1 or args.cases < 1:
        raise UsageError("--n and --cases must be positive")
    rng = random.Random(args.seed)
    per = max(1, args.per_instance)
    done = 0
    while done < args.cases:
        oracle, shape = _fuzz_instance(kind, rng, args.n)
        m, w = oracle.rows, oracle.cols
        if shape is None:
            probes = _smawk_probes(oracle)
            if probes > 8 * (m + w):
                sys.stdout.write(format_matrix(oracle))
                print(f"FAIL smawk probes {probes} > 8(m+n) = {8 * (m + w)}")
                return 1
        index = _build(kind, oracle, shape)
        for _ in range(min(per, args.cases - done)):
            i0, i1 = sorted(rng.randint(1, m) for _ in range(2))
            j0, j1 = sorted(rng.randint(1, w) for _ in range(2))
            if kind in COLUMN_KINDS:
                j1 = j0
                r, v = index.query(j0, i0, i1)
                got = (r, j0, v)
            else:
                got = index.query(i0, i1, j0, j1)
            done += 1
            if not _check_answer(oracle, shape, (i0, i1, j0, j1), got):
                sys.stdout.write(format_matrix(oracle, shape))
                query = f"--col {j0} --rows {i0} {i1}" if kind in COLUMN_KINDS else \
                    f"--rect {i0} {i1} {j0} {j1}"
                print(f"FAIL {kind} query {query}: got {_fmt(got)}, "
                      f"expected {_fmt(brute_max(oracle, i0, i1, j0, j1, shape))}")
                return 1
    print(f"OK {done}/{args.cases}")
    return 0


def bench_one(n: int, kind: str, queries: int, seed: int) -> List:
    """One CSV row: build an ``n x n`` lines oracle index and time random queries."""
    oracle = CountingOracle(lines_oracle(seed, n, n))
    t0 = time.perf_counter_ns()
    index = _build(kind, oracle, None)
    build_ns = time.perf_counter_ns() - t0
    rng = random.Random(seed + n)
    column = kind in COLUMN_KINDS

    def draw():
        i0, i1 = sorted(rng.randint(1, n) for _ in range(2))
        if column:
            return rng.randint(1, n), i0, i1
        j0, j1 = sorted(rng.randint(1, n) for _ in range(2))
        return i0, i1, j0, j1

    q = index.query
    for _ in range(min(1000, queries)):  # warm-up
        q(*draw())
    batch = [draw() for _ in range(queries)]
    oracle.probes = 0
    times = []
    clock = time.perf_counter_ns
    for rect in batch:
        t = clock()
        q(*rect)
        times.append(clock() - t)
    times.sort()
    p50 = times[len(times) // 2]
    p99 = times[min(len(times) - 1, math.ceil(0.99 * len(times)) - 1)]
    return [n, kind, build_ns, index.words(), p50, p99, round(oracle.probes / len(batch), 3)]


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def cmd_bench(args) -> int:
    sizes = _int_list(args.sizes)
    kinds = [k for k in args.kinds.split(",") if k]
    for k in kinds:
        if k not in ALL_KINDS or k.startswith(("staircase", "partial")):
            raise UsageError(f"bench supports full-matrix kinds only, not {k!r}")
    if not sizes or min(sizes) < 1 or args.queries < 1:
        raise UsageError("--sizes and --queries must be positive")
    jobs = [(n, k) for n in sizes for k in kinds]
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            rows = list(pool.map(bench_one, [n for n, _ in jobs], [k for _, k in jobs],
                                 [args.queries] * len(jobs), [args.seed] * len(jobs)))
    else:
        rows = [bench_one(n, k, args.queries, args.seed) for n, k in jobs]
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    finally:
        if args.output:
            out.close()
    return 0


def _smallest_side(elements: Sequence[int], power: int) -> int:
    """Least ``n >= max(2, |S|)`` with every element below ``n**power``."""
    n = max(2, len(elements))
    top = max(elements, default=0)
    while n ** power <= top:
        n += 1
    return n


def cmd_pred(args) -> int:
    text = _read_text(args.set)
    elements = []
    for k, line in enumerate(text.splitlines(), 1):
        if line.strip():
            elements.append(_ints(line, 1, f"{args.set} line {k}")[0])
    elements = sorted(set(elements))
    if elements and elements[0] < 0 or args.x < 0:
        raise UsageError("keys and x must be non-negative")
    if args.via == "direct":
        p = bisect.bisect_right(elements, args.x)
        ans = elements[p - 1] if p else None
    elif args.via == "monge":
        n = _smallest_side(elements + [args.x], 2)
        ans = MongePredecessor(elements, n).pred(args.x)
    else:
        n = _smallest_side(elements + [args.x], 4)
        ans = UniverseReduction(elements, n, 4, engine="monge").pred(args.x)
    print("none" if ans is None else ans)
    return 0


# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mongeq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a Monge matrix")
    g.add_argument("--kind", choices=GENERATOR_KINDS, default="lines")
    g.add_argument("--shape", choices=("full", "staircase", "partial"), default="full")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="verify the Monge property")
    c.add_argument("matrix")
    c.add_argument("--convention", choices=("max", "min"), default="max")
    c.set_defaults(func=cmd_check)

    x = sub.add_parser("maxima", help="print column maxima rows and breakpoints")
    x.add_argument("matrix")
    x.set_defaults(func=cmd_maxima)

    b = sub.add_parser("build", help="build an index and report its size")
    b.add_argument("matrix")
    b.add_argument("--index", choices=ALL_KINDS)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer maximum queries")
    q.add_argument("matrix")
    q.add_argument("--index", choices=ALL_KINDS)
    q.add_argument("--rect", type=int, nargs=4, metavar=("I0", "I1", "J0", "J1"))
    q.add_argument("--col", type=int)
    q.add_argument("--rows", type=int, nargs=2, metavar=("I0", "I1"))
    q.add_argument("--batch", help="file with one query per line ('-' for stdin)")
    q.set_defaults(func=cmd_query)

    f = sub.add_parser("fuzz", help="compare an index against brute force")
    f.add_argument("--index", required=True, choices=ALL_KINDS)
    f.add_argument("--n", type=int, default=64)
    f.add_argument("--cases", type=int, default=200)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--per-instance", type=int, default=20, help="queries per random matrix")
    f.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("bench", help="build/query timings as CSV")
    s.add_argument("--sizes", default="1024,4096")
    s.add_argument("--kinds", default="submatrix-linear")
    s.add_argument("--queries", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)

    r = sub.add_parser("pred", help="predecessor search")
    r.add_argument("--set", required=True, help="one integer per line")
    r.add_argument("--x", type=int, required=True)
    r.add_argument("--via", choices=("monge", "direct", "reduced"), default="monge")
    r.set_defaults(func=cmd_pred)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
