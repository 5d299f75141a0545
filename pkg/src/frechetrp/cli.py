"""Command-line interface.

Subcommands: dist, matrix, embed, distort, median, gen, bench. Global flags
``--threads`` (default: FRECHET_THREADS or the machine's cores) and
``--tolerance`` (default: 1e-9 relative to the per-pair upper bound) may
appear after any subcommand. Exit codes: 0 success, 1 validation/usage
error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import embedding, generators, median
from .curves import Curve, CurveSet
from .exceptions import FrechetRPError, ParseError, ValidationError
from .frechet import DistanceQuery, decide_frechet, default_workers, distance_matrix, frechet_distance
from .io import read_curve_csv, read_curveset_dir, write_curve_csv, write_curveset_dir

_MATRIX_FMT = "%.17g"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(message)


def _query(args) -> DistanceQuery:
    return DistanceQuery(tolerance=args.tolerance, workers=args.threads)


def _maybe_transpose(curve, args):
    if getattr(args, "transpose", False):
        return Curve(curve.vertices.T)
    return curve


def _read_curve(path, args) -> Curve:
    return _maybe_transpose(read_curve_csv(path), args)


def _read_dir(path, args) -> CurveSet:
    curves = read_curveset_dir(path)
    if getattr(args, "transpose", False):
        return CurveSet([_maybe_transpose(c, args) for c in curves],
                        labels=curves.labels)
    return curves


def _target_dim(curves: CurveSet, epsilon: float, constant: float) -> int:
    m = max(len(c) for c in curves)
    return embedding.target_dimension(len(curves), m, epsilon, constant)


def cmd_dist(args) -> int:
    a = _read_curve(args.a, args)
    b = _read_curve(args.b, args)
    if args.epsilon is not None:
        print("true" if decide_frechet(a, b, args.epsilon) else "false")
    else:
        print(f"{frechet_distance(a, b, _query(args)):.12g}")
    return 0


def cmd_matrix(args) -> int:
    curves = _read_dir(args.dir, args)
    mat = distance_matrix(curves, _query(args))
    np.savetxt(args.out, mat, fmt=_MATRIX_FMT, delimiter=",")
    return 0


def cmd_embed(args) -> int:
    curves = _read_dir(args.dir, args)
    d_prime = _target_dim(curves, args.epsilon, args.constant)
    if args.kind == "gaussian":
        proj = embedding.gaussian_projection(curves.dim, d_prime, args.seed)
    else:
        proj = embedding.pca_projection(curves, min(d_prime, curves.dim))
    out = embedding.embed_curveset(curves, proj)
    write_curveset_dir(out, args.out)
    return 0


def cmd_distort(args) -> int:
    curves = _read_dir(args.dir, args)
    eps_list = [float(x) for x in args.epsilon_list.split(",") if x]
    if not eps_list:
        raise ValidationError("--epsilon-list is empty")
    query = _query(args)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["original", "embedded", "lower", "upper",
                         "rel_error", "alpha", "epsilon", "seed"])
        for eps in eps_list:
            d_prime = _target_dim(curves, eps, args.constant)
            for k in range(args.seeds):
                seed = args.seed + k
                proj = embedding.gaussian_projection(curves.dim, d_prime, seed)
                for rec in embedding.measure_distortion(curves, proj, eps, query):
                    writer.writerow([
                        f"{rec.original:.12g}", f"{rec.embedded:.12g}",
                        f"{rec.lower_bound:.12g}", f"{rec.upper_bound:.12g}",
                        f"{rec.relative_error:.12g}", f"{rec.alpha_pair:.12g}",
                        f"{eps:g}", seed,
                    ])
    return 0


def cmd_median(args) -> int:
    curves = _read_dir(args.dir, args)
    mode = median.WORST_CASE if args.mode == "worst" else median.BEYOND_WORST_CASE
    params = median.MedianParams(epsilon=args.epsilon, delta=args.delta,
                                 mode=mode, gamma=args.gamma, seed=args.seed)
    query = _query(args)
    result = median.sampled_median(curves, params, query)
    header = ["center_label", "cost", "witness_cost", "l_s", "l_w"]
    row = [curves.label_of(result.center_index), f"{result.cost:.12g}",
           f"{result.witness_cost:.12g}", result.l_s, result.l_w]
    if args.exhaustive:
        opt = median.exhaustive_median(curves, query)
        deviation = (result.cost - opt.cost) / opt.cost if opt.cost > 0 else 0.0
        header += ["opt_cost", "deviation"]
        row += [f"{opt.cost:.12g}", f"{deviation:.12g}"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerow(row)
    return 0


def cmd_gen(args) -> int:
    if args.family == "simplex":
        curves = generators.simplex_curves(args.n, args.m, args.dim,
                                           scale=args.scale, seed=args.seed)
        write_curveset_dir(curves, args.out)
    elif args.family == "additive":
        p, q = generators.additive_error_pair(args.alpha, args.dim)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_curve_csv(p, out / "p.csv")
        write_curve_csv(q, out / "q.csv")
    elif args.family == "eqgadget":
        write_curve_csv(generators.equality_gadget(args.bits), args.out)
    elif args.family == "disjgadget":
        write_curve_csv(generators.disjointness_gadget(args.bits, args.side), args.out)
    elif args.family == "mediantest":
        planted = generators.median_test_set(args.n, args.gamma, args.epsilon,
                                             args.dim, seed=args.seed,
                                             complexity=args.complexity)
        write_curveset_dir(planted.curves, args.out)
        print(f"center_index,{planted.center_index}")
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown family {args.family!r}")
    return 0


def _bench_config(curves, query, reps):
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        distance_matrix(curves, query)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def cmd_bench(args) -> int:
    if args.dir:
        curves = _read_dir(args.dir, args)
    else:
        curves = generators.simplex_curves(args.n, args.m, args.dim,
                                           scale=args.scale, seed=args.gen_seed)
    threads_list = [int(x) for x in args.threads_list.split(",") if x]
    eps_list = [float(x) for x in args.epsilon_list.split(",") if x]
    n = len(curves)
    m = max(len(c) for c in curves)
    d = curves.dim
    projected = []
    for eps in eps_list:
        d_prime = _target_dim(curves, eps, args.constant)
        proj = embedding.gaussian_projection(d, d_prime, args.seed)
        projected.append((d_prime, embedding.embed_curveset(curves, proj)))

    rows = []
    for threads in threads_list:
        query = DistanceQuery(tolerance=args.tolerance, workers=threads)
        wall = _bench_config(curves, query, args.reps)
        rows.append(["distance_matrix", n, m, d, "", threads,
                     f"{wall:.6f}", args.reps])
        for d_prime, emb in projected:
            wall = _bench_config(emb, query, args.reps)
            rows.append(["distance_matrix_rp", n, m, d, d_prime, threads,
                         f"{wall:.6f}", args.reps])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["operation", "n", "m", "d", "d_prime", "threads",
                         "wall_time_seconds", "repetitions"])
        writer.writerows(rows)
    return 0


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=default_workers(),
                        help="worker threads (default: FRECHET_THREADS or machine cores)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="absolute bisection tolerance (default: 1e-9 x upper bound)")

    reader = _Parser(add_help=False)
    reader.add_argument("--transpose", action="store_true",
                        help="treat CSV rows as dimensions instead of vertices")

    parser = _Parser(prog="frechetrp",
                     description="Fréchet distances, vertex projections and 1-median sampling "
                                 "for polygonal curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common, reader], help="distance or decision for two curves")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--epsilon", type=float, default=None,
                   help="decide d_F <= epsilon instead of computing the distance")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("matrix", parents=[common, reader], help="pairwise distance matrix of a directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("embed", parents=[common, reader], help="project curves to the target dimension")
    p.add_argument("--dir", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=["gaussian", "pca"], default="gaussian")
    p.add_argument("--constant", type=float, default=2.0,
                   help="constant of the target-dimension formula")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("distort", parents=[common, reader],
                       help="distortion records over epsilons and seeds")
    p.add_argument("--dir", required=True)
    p.add_argument("--epsilon-list", required=True)
    p.add_argument("--seeds", type=int, required=True, help="number of fresh seeds per epsilon")
    p.add_argument("--seed", type=int, default=0, help="first seed value")
    p.add_argument("--constant", type=float, default=2.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_distort)

    p = sub.add_parser("median", parents=[common, reader], help="sampled discrete 1-median")
    p.add_argument("--dir", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--mode", choices=["worst", "bwc"], default="worst")
    p.add_argument("--gamma", type=float, default=0.375)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true",
                   help="also run the exhaustive search and report the deviation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_median)

    p = sub.add_parser("gen", parents=[common], help="generate a synthetic instance family")
    p.add_argument("--family", required=True,
                   choices=["simplex", "additive", "eqgadget", "disjgadget", "mediantest"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=4.0)
    p.add_argument("--bits", default="1")
    p.add_argument("--side", choices=["alice", "bob"], default="alice")
    p.add_argument("--gamma", type=float, default=0.375)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--complexity", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common, reader],
                       help="time the distance matrix sequential/parallel x original/projected")
    p.add_argument("--dir", default=None, help="curve directory (default: generate simplex curves)")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int, default=500)
    p.add_argument("--dim", type=int, default=2000)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--gen-seed", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="projection seed")
    p.add_argument("--threads-list", default=f"1,{default_workers()}")
    p.add_argument("--epsilon-list", default="0.5")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--constant", type=float, default=2.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FrechetRPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
