"""Command line: ``hgstream gen|color|verify|bench``.

Exit status 0 on success, 2 on bad flags or parameters, 3 when a colorer
declares failure or ``verify`` finds a monochromatic edge.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import nullcontext

from . import bench
from .certified import certified_stream_color
from .core import BLUE, RED, Coloring, ParameterDomainError, color_name, validate_coloring
from .local_lemma import local_intersection_threshold, local_stream_color
from .recolor import stream_color
from .sparse_vertex import k_balanced_stream_color
from .stream_io import (EdgeStreamHeader, StreamFormatError, dump_stream, gen_bounded_intersection,
                        gen_erdos, gen_uniform_random, parse_stream, read_stream)
from .tape import RandomTape

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILURE = 3


class UsageError(Exception):
    pass


def _open_out(path):
    if path is None or path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="ascii")


def cmd_gen(args) -> int:
    if args.kind == "erdos":
        if args.t is None:
            raise UsageError("--kind erdos needs --t")
        edges, big_n, q = gen_erdos(args.n, args.t, args.seed)
        header = EdgeStreamHeader(args.n, big_n, q)
    else:
        if args.v is None or args.q is None:
            raise UsageError(f"--kind {args.kind} needs --v and --q")
        if args.kind == "local":
            limit = args.max_intersections
            if limit is None:
                limit = math.floor(local_intersection_threshold(args.n, args.epsilon))
            edges = gen_bounded_intersection(args.v, args.n, limit, args.q, args.seed)
        else:
            edges = gen_uniform_random(args.v, args.n, args.q, args.seed)
        header = EdgeStreamHeader(args.n, args.v, len(edges))
    with _open_out(args.out) as fp:
        dump_stream(fp, header, edges)
    return EXIT_OK


def write_coloring(fp, coloring: Coloring, k: int = 2) -> None:
    for u in sorted(coloring):
        c = coloring[u]
        fp.write(f"{u} {color_name(c) if k == 2 else c}\n")


def read_coloring(path) -> Coloring:
    names = {"red": RED, "blue": BLUE}
    out: Coloring = {}
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise StreamFormatError(f"expected 'vertex color', got {line.strip()!r}", lineno)
            u, c = parts
            out[int(u)] = names[c.lower()] if c.lower() in names else int(c)
    return out


def cmd_color(args) -> int:
    tape = RandomTape(args.seed)
    a = args.algorithm
    k = 2
    if a == "local":
        out = local_stream_color(args.input, args.seed, args.max_passes)
    else:
        with open(args.input, "rb") as fh:
            header, edges = parse_stream(fh)
            if a == "delayed":
                coloring, stats = stream_color(edges, tape, args.p, header.n)
                with _open_out(args.out) as fp:
                    write_coloring(fp, coloring)
                print(f"flips={stats.flips} vertices={stats.discovered} "
                      f"unfixable={stats.unfixable}", file=sys.stderr)
                return EXIT_OK
            if a == "certified":
                out = certified_stream_color(edges, tape, args.p, args.cap, header.n)
            else:
                v = args.v if args.v is not None else header.v
                if v is None:
                    raise UsageError(f"{a} needs the universe size: --v or a v= header field")
                k = 2 if a == "balanced" else args.k
                out = k_balanced_stream_color(edges, v, header.n, k, args.seed)
    if not out.ok:
        where = "" if out.failure.position is None else f" at edge {out.failure.position}"
        print(f"failure: {out.failure.reason}{where}", file=sys.stderr)
        return EXIT_FAILURE
    with _open_out(args.out) as fp:
        write_coloring(fp, out.coloring, k)
    return EXIT_OK


def cmd_verify(args) -> int:
    _, edges = read_stream(args.input)
    coloring = read_coloring(args.coloring)
    try:
        bad = validate_coloring(edges, coloring)
    except KeyError as exc:
        print(f"invalid: vertex {exc.args[0]} has no color", file=sys.stderr)
        return EXIT_FAILURE
    if bad:
        print(f"invalid monochromatic={len(bad)}")
        return EXIT_FAILURE
    print("valid")
    return EXIT_OK


def cmd_bench(args) -> int:
    attempts = args.attempts
    if args.delta is not None:
        attempts = bench.attempts_for_delta(args.delta)
    cfg = bench.BenchConfig(
        algorithm=args.algorithm, trials=args.trials, seed=args.seed, kind=args.kind,
        n=args.n, v=args.v, q=args.q, t=args.t, k=args.k, p=args.p, cap=args.cap,
        epsilon=args.epsilon, max_intersections=args.max_intersections,
        max_passes=args.max_passes, attempts=attempts, input=args.input, timing=args.timing)
    records = bench.run_bench(cfg, workers=args.workers)
    sys.stdout.write(bench.to_csv(records, timing=args.timing))
    return EXIT_OK


def _instance_flags(p: argparse.ArgumentParser, n_required: bool) -> None:
    p.add_argument("--kind", choices=bench.KINDS, default="uniform")
    p.add_argument("--n", type=int, required=n_required, help="uniformity")
    p.add_argument("--v", type=int, help="number of vertices")
    p.add_argument("--q", type=int, help="number of edges")
    p.add_argument("--t", type=float, help="vertex-count parameter, N = floor(n^2/t)")
    p.add_argument("--epsilon", type=float, default=0.02)
    p.add_argument("--max-intersections", type=int)


def _algo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algorithm", choices=bench.ALGORITHMS, required=True)
    p.add_argument("--p", type=float, help="recolor-bit probability")
    p.add_argument("--cap", type=float, help="residual size cap (certified)")
    p.add_argument("--k", type=int, default=3, help="colors (kbalanced)")
    p.add_argument("--max-passes", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgstream", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random HGS1 instance")
    _instance_flags(g, n_required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="color an HGS1 stream")
    _algo_flags(c)
    c.add_argument("--input", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--v", type=int, help="universe size (balanced colorers)")
    c.add_argument("--out", help="coloring output path (default stdout)")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring against a stream")
    v.add_argument("--input", required=True)
    v.add_argument("--coloring", required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="Monte Carlo trials as CSV on stdout")
    _algo_flags(b)
    _instance_flags(b, n_required=False)
    b.add_argument("--input", help="fixed HGS1 instance instead of generated ones")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--attempts", type=int, default=1, help="repetitions per trial until success")
    b.add_argument("--delta", type=float, help="target failure probability; sets --attempts")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--timing", action="store_true", help="add a wall_ms column (breaks byte determinism)")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterDomainError, StreamFormatError) as exc:
        print(f"hgstream {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hgstream {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
