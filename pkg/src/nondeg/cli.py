"""Command-line front end.

    nondeg --input sys.txt --algorithm naive
    nondeg --input sys.txt --algorithm sgbtree --seed 1 --stats run.stats
    nondeg generate --family pseudo --params 4 --seed 7
    nondeg verify a.out b.out

Exit codes: 0 success, 1 ``verify`` found different ideals, 2 input error,
3 unsupported configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import ExitStack

from . import __version__
from .ideal import EMPTY, IdealBasis, codimension, ideals_equal_up_to_radical, interreduce
from .locus import LocusInputError, nondeg_naive, nondeg_sgbtree
from .monomial import ExponentOverflowError
from .signature import buchberger_sig, sgb
from .sysfile import ParseError, format_system, read_system
from .systems import FAMILIES, SystemSpec, generate

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3

ALGORITHMS = ("naive", "sgbtree", "sgb", "buchberger")
COMMANDS = ("run", "generate", "verify")


class Unsupported(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nondeg",
        description="Gröbner bases of the nondegenerate locus of a polynomial system over Z/p.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run an algorithm on a system file (default command)")
    run.add_argument("--input", "-i", required=True, help="system file")
    run.add_argument("--algorithm", "-a", choices=ALGORITHMS, default="sgbtree")
    run.add_argument("--mode", choices=("random", "deterministic"), default="random",
                     help="cleaning variant for sgbtree")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--order", choices=("drl", "lex"), default="drl")
    run.add_argument("--stats", metavar="FILE", help="write op counts and timings")
    run.add_argument("--trace", metavar="FILE", help="JSON-lines log of processed S-pairs")
    run.add_argument("--output", "-o", metavar="FILE", help="write the report here instead of stdout")

    gen = sub.add_parser("generate", help="write a benchmark system")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--params", required=True, nargs="+", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--prime", type=int, default=65521)
    gen.add_argument("--output", "-o", metavar="FILE")

    ver = sub.add_parser("verify", help="check two reports describe the same ideal up to radical")
    ver.add_argument("reports", nargs=2, metavar="REPORT")
    return parser


# ---------------------------------------------------------------------------


def _run_algorithm(name, polys, mode, seed, trace):
    """Returns ``(basis polys, iteration records, extra report lines)``."""
    if name == "naive":
        r = nondeg_naive(polys)
        return r.basis.basis, r.iterations
    if name == "sgbtree":
        r = nondeg_sgbtree(polys, mode=mode, seed=seed, trace=trace)
        return r.basis.basis, r.iterations
    if any(not f.monos for f in polys):
        raise LocusInputError("zero input polynomial")
    engine = sgb if name == "sgb" else buchberger_sig
    r = engine(polys, trace=trace)
    return interreduce(r.basis), [r.stats]


def _count(ring, fn):
    ring.counter.reset()
    t0 = time.perf_counter()
    out = fn()
    return out, ring.counter.snapshot(), time.perf_counter() - t0


def cmd_run(args) -> int:
    sysf = read_system(args.input, args.order)
    ring, polys = sysf.ring, sysf.polys
    if not polys:
        raise LocusInputError("the system has no polynomials")
    if args.algorithm in ("naive", "sgbtree") and len(polys) > ring.nvars:
        raise Unsupported(
            f"{len(polys)} equations in {ring.nvars} variables: locus algorithms need c <= n"
        )
    if args.algorithm == "sgbtree" and args.mode == "deterministic" and args.order != "drl":
        raise Unsupported("the deterministic variant needs --order drl")

    with ExitStack() as stack:
        trace = stack.enter_context(open(args.trace, "w")) if args.trace else None
        (basis, iters), ops, secs = _count(
            ring, lambda: _run_algorithm(args.algorithm, polys, args.mode, args.seed, trace)
        )

    ideal = IdealBasis(ring, basis, True)
    codim = codimension(ideal)
    mode = args.mode if args.algorithm == "sgbtree" else "-"
    seed = args.seed if args.algorithm == "sgbtree" and args.mode == "random" else "-"
    comments = [
        f"algorithm: {args.algorithm}",
        f"mode: {mode}",
        f"seed: {seed}",
        f"order: {args.order}",
        f"input: {args.input}",
        f"mul_count: {ops['mul_count']}",
        f"addsub_count: {ops['addsub_count']}",
        f"inv_count: {ops['inv_count']}",
        f"total_ops: {ops['total']}",
        f"generators: {len(basis)}",
        f"codimension: {'empty' if codim is EMPTY else codim}",
    ]
    report = format_system(ring, basis, comments)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report)

    if args.stats:
        summary = {
            "algorithm": args.algorithm,
            "mode": mode,
            "seed": seed,
            "wall_time": round(secs, 6),
            "mul_count": ops["mul_count"],
            "addsub_count": ops["addsub_count"],
            "inv_count": ops["inv_count"],
            "total_ops": ops["total"],
            "generators": len(basis),
            "iterations": iters,
        }
        if args.algorithm in ("sgb", "sgbtree"):
            other = "sgb" if args.algorithm == "sgbtree" else "sgbtree"
            _, other_ops, _ = _count(
                ring, lambda: _run_algorithm(other, polys, args.mode, args.seed, None)
            )
            tree_ops = ops["total"] if args.algorithm == "sgbtree" else other_ops["total"]
            flat_ops = other_ops["total"] if args.algorithm == "sgbtree" else ops["total"]
            summary["sgb_total_ops"] = flat_ops
            summary["sgbtree_total_ops"] = tree_ops
            summary["ratio"] = round(tree_ops / flat_ops, 6) if flat_ops else None
        else:
            summary["ratio"] = None
        write_stats(args.stats, summary)
    return EXIT_OK


def write_stats(path: str, summary: dict) -> None:
    lines = []
    for key, value in summary.items():
        if key == "iterations":
            lines.append(f"iterations {len(value)}")
            for i, rec in enumerate(value, start=1):
                for k, v in rec.items():
                    lines.append(f"iter.{i}.{k} {v}")
            continue
        lines.append(f"{key} {'-' if value is None else value}")
    lines.append("summary " + json.dumps(summary, sort_keys=True))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_stats(path: str) -> dict:
    """Parse a stats file back into its summary block."""
    with open(path) as fh:
        for line in fh:
            if line.startswith("summary "):
                return json.loads(line[len("summary "):])
    raise ValueError("no summary line")


def cmd_generate(args) -> int:
    spec = SystemSpec(args.family, tuple(args.params), args.seed, args.prime)
    try:
        ring, polys = generate(spec)
    except ValueError as exc:
        raise LocusInputError(str(exc)) from exc
    comments = [f"family: {spec.label()}"]
    if args.family != "cyclic":
        comments.append(f"seed: {args.seed}")
    text = format_system(ring, polys, comments)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    a = read_system(args.reports[0])
    b = read_system(args.reports[1])
    if a.ring.p != b.ring.p or a.ring.variables != b.ring.variables:
        print("different rings", file=sys.stderr)
        return EXIT_DIFFERENT
    I = IdealBasis(a.ring, a.polys)
    J = IdealBasis(a.ring, [a.ring.convert(f) for f in b.polys])
    if ideals_equal_up_to_radical(I, J):
        print("equal up to radical")
        return EXIT_OK
    print("different")
    return EXIT_DIFFERENT


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in COMMANDS and argv[0] not in ("-h", "--help", "--version"):
        argv.insert(0, "run")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT
    handler = {"run": cmd_run, "generate": cmd_generate, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except ParseError as exc:
        print(f"nondeg: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LocusInputError, ExponentOverflowError) as exc:
        print(f"nondeg: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"nondeg: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Unsupported as exc:
        print(f"nondeg: unsupported configuration: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
