"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 10 --system pseudo:4

Part one times each kernel on synthetic inputs with both implementations in
the same process.  Part two runs one locus computation end to end in two
subprocesses, one with ``NONDEG_PURE_PYTHON=1``, and checks that both report
the same op counts.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

from nondeg import _pykernels as PY
from nondeg.monomial import guard_mask, pack
from nondeg.rng import SplitMix64

try:
    from nondeg import _kernels as CY
except ImportError:
    CY = None

P = 65521


def sparse(rng: SplitMix64, nterms: int, span: int, scale: int):
    keys = sorted({rng.below(span) * scale for _ in range(nterms)}, reverse=True)
    return keys, [1 + rng.below(P - 1) for _ in keys]


def kernel_cases(scale: int):
    rng = SplitMix64(1)
    am, ac = sparse(rng, 3000, 20000, scale)
    bm, bc = sparse(rng, 3000, 20000, scale)
    sm, sc = sparse(rng, 60, 400, scale)
    tm, tc = sparse(rng, 60, 400, scale)
    g = guard_mask(6)
    # every row has a positive second exponent, so no row divides the query: a full scan
    rows = [tuple(1 + rng.below(3) if i == 1 else rng.below(4) for i in range(6)) for _ in range(400)]
    query = (3, 0, 3, 3, 3, 3)

    def index_scan(mod):
        di = mod.DivisorIndex(6, g)
        for r in rows:
            di.add(r, pack(r))
        return lambda: di.first(query, pack(query), 0)

    return {
        "axpy 3000+3000": lambda m: (lambda: m.axpy(am, ac, 0, bm, bc, 0, 7 * scale, 12345, P)),
        "mul_term 3000": lambda m: (lambda: m.mul_term(am, ac, 7 * scale, 12345, P)),
        "mul 60x60": lambda m: (lambda: m.mul(sm, sc, tm, tc, P)),
        "divisor scan 400": index_scan,
    }


def bench_kernels(repeat: int, number: int) -> list[dict]:
    rows = []
    for label, scale in (("narrow", 1), ("wide", 1 << 100)):
        for name, make in kernel_cases(scale).items():
            row = {"case": f"{name} ({label})"}
            for tag, mod in (("python", PY), ("cython", CY)):
                if mod is None:
                    row[tag] = None
                    continue
                fn = make(mod)
                best = min(timeit.repeat(fn, repeat=repeat, number=number)) / number
                row[tag] = best
            rows.append(row)
    return rows


def bench_end_to_end(system: str) -> dict:
    family, _, params = system.partition(":")
    code = (
        "import json, time\n"
        "from nondeg import kernels\n"
        "from nondeg.systems import SystemSpec, generate\n"
        "from nondeg.locus import nondeg_sgbtree\n"
        f"ring, F = generate(SystemSpec({family!r}, ({params},), 1))\n"
        "t = time.perf_counter()\n"
        "r = nondeg_sgbtree(F, seed=1)\n"
        "print(json.dumps({'backend': kernels.BACKEND, 'seconds': time.perf_counter() - t,"
        " 'ops': r.ops['total'], 'gens': len(r.basis.basis)}))\n"
    )
    out = {}
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("NONDEG_PURE_PYTHON", None)
        if pure:
            env["NONDEG_PURE_PYTHON"] = "1"
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        rec = json.loads(res.stdout)
        out[rec["backend"]] = rec
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=20)
    parser.add_argument("--system", default="pseudo:4", help="FAMILY:PARAMS for the end-to-end run")
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    if CY is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'case':<28} {'python us':>12} {'cython us':>12} {'speedup':>8}")
    for row in bench_kernels(args.repeat, args.number):
        py, cy = row["python"], row["cython"]
        cy_s = f"{cy * 1e6:12.1f}" if cy else f"{'-':>12}"
        sp = f"{py / cy:8.2f}" if cy else f"{'-':>8}"
        print(f"{row['case']:<28} {py * 1e6:12.1f} {cy_s} {sp}")

    if not args.skip_end_to_end:
        res = bench_end_to_end(args.system)
        print()
        print(f"end to end: sgbtree on {args.system}, seed 1")
        for backend, rec in sorted(res.items()):
            print(f"  {backend:<7} {rec['seconds']:8.2f} s  ops {rec['ops']}  generators {rec['gens']}")
        if len(res) == 2:
            a, b = res["python"], res["cython"]
            if a["ops"] != b["ops"] or a["gens"] != b["gens"]:
                print("  MISMATCH between backends")
                return 1
            print(f"  speedup {a['seconds'] / b['seconds']:.2f}x, identical op counts")
    return 0


if __name__ == "__main__":
    sys.exit(main())
