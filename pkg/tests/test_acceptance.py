"""Acceptance criteria 1-8.

Each test prints one line ``criterion N: PASS|FAIL  <title>  (<detail>)`` to
the terminal, whether its checks pass or not.  Run alone with

    pytest -v tests/test_acceptance.py
"""

import random
import time
from contextlib import contextmanager
from math import comb

import pytest

from conftest import P, random_poly, random_system
from nondeg import PolyRing
from nondeg.cli import main as cli_main
from nondeg.cli import read_stats
from nondeg.ideal import (
    EMPTY,
    codimension,
    groebner_basis,
    ideal,
    ideals_equal_up_to_radical,
    interreduce,
    intersect,
    is_groebner,
    quotient,
    quotient_ideal,
    saturate,
    saturate_by_ideal,
)
from nondeg.locus import nondeg_naive, nondeg_sgbtree
from nondeg.sgbtree import SgbTree
from nondeg.signature import buchberger_sig, sgb
from nondeg.sysfile import format_system, parse_system, read_system
from nondeg.systems import SystemSpec, generate


class Record:
    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def note(self, text: str) -> None:
        self.notes.append(text)


@contextmanager
def criterion(capsys, number: int, title: str, limit: float | None = None):
    rec = Record()
    t0 = time.perf_counter()
    error = None
    try:
        yield rec
    except Exception as exc:  # reported, then re-raised below
        error = exc
        rec.failures.append(f"{type(exc).__name__}: {exc}")
    secs = time.perf_counter() - t0
    if limit is not None and secs >= limit:
        rec.failures.append(f"runtime {secs:.1f}s exceeds {limit:g}s")
    ok = not rec.failures
    detail = "; ".join(rec.notes + [f"{secs:.2f}s"] + rec.failures[:5])
    if len(rec.failures) > 5:
        detail += f"; ... {len(rec.failures) - 5} more failures"
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    if error is not None:
        raise error
    assert ok, rec.failures


def gb(I):
    return groebner_basis(I.basis, I.ring)


# -- shared suite: 50 seeded random systems plus (xy, xz) and (x, x) ---------

R3 = PolyRing(["x", "y", "z"], P)
x, y, z = R3.gens()


def shared_suite():
    out = [random_system(seed) for seed in range(50)]
    out.append((R3, [x * y, x * z]))
    out.append((R3, [x, x]))
    return out


def minimal_lms(ring, basis):
    lms = {g.monos[0] for g in basis if g.monos}
    return {m for m in lms if not any(o != m and ring.mono_divides(o, m) for o in lms)}


# ---------------------------------------------------------------------------


def test_criterion_1_xy_xz_example(capsys):
    with criterion(capsys, 1, "(xy, xz) example: intermediate <y, xz>, final <y, z>, codim 2", 1.0) as rec:
        r = nondeg_naive([x * y, x * z])
        rec.check(r.intermediates[1].equals(ideal(R3, [y, x * z])), "pre-cleaning intermediate is not <y, xz>")
        rec.check(ideals_equal_up_to_radical(r.basis, ideal(R3, [y, z])), "final ideal differs from <y, z>")
        rec.check(codimension(r.basis) == 2, "codimension is not 2")
        rec.note("final " + ", ".join(R3.format(g) for g in r.basis.basis))


def test_criterion_2_oracle_quotients(capsys):
    with criterion(capsys, 2, "sgb quotients equal oracle quotients exactly on the shared suite", 60.0) as rec:
        count = 0
        for k, (ring, F) in enumerate(shared_suite()):
            res = sgb(F)
            Fm = [f.monic() for f in F]
            for i in range(1, len(F) + 1):
                prev = ideal(ring, Fm[: i - 1])
                got = groebner_basis(prev.gens + res.syzygies[i], ring)
                want = gb(quotient(prev, F[i - 1]))
                rec.check(got == want, f"system {k} index {i}")
                count += 1
        rec.note(f"{count} quotients on 52 systems")


LOCUS_CASES = [
    ("cyclic", (4,)),
    ("cyclic", (5,)),
    ("pseudo", (3,)),
    ("pseudo", (4,)),
    ("pseudo", (5,)),
    ("sos", (2, 3)),
    ("sos", (2, 4)),
    ("sing", (3,)),
    ("sing", (4,)),
]


def test_criterion_3_cross_algorithm(capsys):
    with criterion(capsys, 3, "naive = sgbtree (both modes) up to radical, codim c", 600.0) as rec:
        runs = 0
        for fam, params in LOCUS_CASES:
            for seed in (1, 2):
                ring, F = generate(SystemSpec(fam, params, seed))
                tag = f"{fam}{params} seed {seed}"
                naive = nondeg_naive(F).basis
                rand = nondeg_sgbtree(F, seed=seed).basis
                det = nondeg_sgbtree(F, mode="deterministic").basis
                rec.check(ideals_equal_up_to_radical(naive, rand), f"{tag}: naive != random")
                rec.check(ideals_equal_up_to_radical(naive, det), f"{tag}: naive != deterministic")
                for name, B in (("naive", naive), ("random", rand), ("deterministic", det)):
                    cd = codimension(B)
                    rec.check(cd is EMPTY or cd == len(F), f"{tag}: {name} codimension {cd} != {len(F)}")
                runs += 1
        rec.note(f"{runs} instances")


def test_criterion_4_pruning_soundness(capsys):
    with criterion(capsys, 4, "pruning soundness on the shared suite; Koszul on (x, y, z)") as rec:
        saved = 0
        for k, (ring, F) in enumerate(shared_suite()):
            a, b = sgb(F), buchberger_sig(F)
            rec.check(a.stats["reductions"] <= b.stats["reductions"], f"system {k}: more reductions")
            rec.check(minimal_lms(ring, a.basis) == minimal_lms(ring, b.basis), f"system {k}: lm sets differ")
            saved += b.stats["reductions"] - a.stats["reductions"]
        reg = sgb([x, y, z])
        rec.check(reg.stats["zero_reductions"] == 0, "zero reductions on (x, y, z)")
        rec.note(f"{saved} reductions pruned in total")


def test_criterion_5_tree_conformance(capsys):
    with criterion(capsys, 5, "two-node sGB trees match the flat engine; get_syzygy properties") as rec:
        trees = 0
        for k, (ring, F) in enumerate(shared_suite()):
            for i in range(len(F)):
                for j in range(len(F)):
                    if i == j:
                        continue
                    T = SgbTree(ring)
                    root = T.insert_node(F[i])
                    nu = T.insert_node(F[j], ("child", root))
                    outs = []
                    for _ in range(1000):
                        g = T.get_syzygy(nu)
                        if not g.monos:
                            break
                        outs.append(g)
                    else:
                        rec.check(False, f"system {k} ({i},{j}): no 0 after 1000 calls")
                    D = max((ring.mono_degree(g.monos[0]) for g in outs), default=0)
                    rec.check(len(outs) <= comb(D + ring.nvars, ring.nvars), f"system {k}: cap exceeded")
                    prev = ideal(ring, [F[i].monic()]).basis
                    lms = [g.monos[0] for g in outs]
                    for a, la in enumerate(lms):
                        rec.check(
                            not any(ring.mono_divides(p.monos[0], la) for p in prev),
                            f"system {k} ({i},{j}): output in lm(I_<nu)",
                        )
                        rec.check(
                            all(not ring.mono_divides(lb, la) for b, lb in enumerate(lms) if b != a),
                            f"system {k} ({i},{j}): divisible outputs",
                        )
                    flat = interreduce(sgb([F[i], F[j]]).basis)
                    rec.check(interreduce(T.basis(nu)) == flat, f"system {k} ({i},{j}): basis differs")
                    trees += 1
        rec.note(f"{trees} trees")


def test_criterion_6_colon_identities(capsys):
    R = R3

    def rand_ideal(rnd):
        return ideal(R, [random_poly(R, rnd, 3, 2) for _ in range(rnd.randint(1, 2))])

    with criterion(capsys, 6, "colon, saturation and intersection identities up to radical, 30 each", 300.0) as rec:
        for seed in range(30):
            rnd = random.Random(1000 + seed)
            J = rand_ideal(rnd)
            f = random_poly(R, rnd, 2, 2)
            H = saturate(J, f)
            rhs = intersect(H + f, quotient_ideal(J, H))
            rec.check(ideals_equal_up_to_radical(J + f, rhs), f"splitting by saturation, seed {seed}")
        for seed in range(30):
            rnd = random.Random(2000 + seed)
            A, B = rand_ideal(rnd), rand_ideal(rnd)
            f = random_poly(R, rnd, 2, 2)
            rec.check(
                ideals_equal_up_to_radical(intersect(A, B) + f, intersect(A + f, B + f)),
                f"sum distributes over intersection, seed {seed}",
            )
            rec.check(
                ideals_equal_up_to_radical(intersect(A, B), intersect(saturate_by_ideal(A, B), B)),
                f"intersection with a saturation, seed {seed}",
            )
            g = A.basis[0] * random_poly(R, rnd, 2, 1)
            rec.check(
                ideals_equal_up_to_radical(saturate_by_ideal(A, B), saturate_by_ideal(A, B + g)),
                f"saturation ignores members of A, seed {seed}",
            )
        for seed in range(30):
            rnd = random.Random(3000 + seed)
            A = rand_ideal(rnd)
            gs = [random_poly(R, rnd, 2, 2) for _ in range(rnd.randint(1, 3))]
            chain = None
            for i, g in enumerate(gs):
                q = quotient(A + gs[:i], g)
                chain = q if chain is None else intersect(chain, q)
            rec.check(
                ideals_equal_up_to_radical(quotient_ideal(A, ideal(R, gs)), chain), f"quotient as a chain of quotients, seed {seed}"
            )


def test_criterion_7_instrumentation(capsys, tmp_path):
    with criterion(capsys, 7, "--stats op counts on Cyclic(4): deterministic, ratio populated") as rec:
        src = tmp_path / "cyclic4.sys"
        assert cli_main(["generate", "--family", "cyclic", "--params", "4", "-o", str(src)]) == 0
        ring, F = generate(SystemSpec("cyclic", (4,)))
        for algorithm in ("sgb", "sgbtree"):
            summaries = []
            for rep in range(2):
                stats = tmp_path / f"{algorithm}{rep}.stats"
                code = cli_main(["-i", str(src), "-a", algorithm, "--seed", "5", "--stats", str(stats), "-o",
                                 str(tmp_path / "out.sys")])
                rec.check(code == 0, f"{algorithm}: exit {code}")
                summaries.append(read_stats(str(stats)))
            a, b = summaries
            keys = ("mul_count", "addsub_count", "inv_count", "total_ops", "sgb_total_ops", "sgbtree_total_ops")
            rec.check(all(a[k] == b[k] for k in keys), f"{algorithm}: counts differ between runs")
            rec.check(a["ratio"] is not None and a["ratio"] > 0, f"{algorithm}: ratio not populated")
            rec.check(a["total_ops"] > 0, f"{algorithm}: no ops counted")
            # stats totals equal the in-process counter
            ring.counter.reset()
            if algorithm == "sgb":
                interreduce(sgb(F).basis)
            else:
                nondeg_sgbtree(F, seed=5)
            rec.check(ring.counter.snapshot()["total"] == a["total_ops"], f"{algorithm}: in-process mismatch")
            rec.note(f"{algorithm} total {a['total_ops']} ratio {a['ratio']}")


def test_criterion_8_cli_contract(capsys, tmp_path):
    import os

    fixtures = os.path.join(os.path.dirname(__file__), "fixtures")
    with criterion(capsys, 8, "CLI golden files, round trip and exit codes") as rec:
        for argv, name in (
            (["--family", "cyclic", "--params", "3"], "cyclic3.sys"),
            (["--family", "pseudo", "--params", "3", "--seed", "1"], "pseudo3_seed1.sys"),
        ):
            out = tmp_path / name
            rec.check(cli_main(["generate", *argv, "-o", str(out)]) == 0, f"generate {name} failed")
            with open(os.path.join(fixtures, name), "rb") as fh:
                rec.check(out.read_bytes() == fh.read(), f"{name} not byte-identical")
        # print-then-parse round trip of every algorithm's report
        for algorithm in ("naive", "sgbtree", "sgb", "buchberger"):
            out = tmp_path / f"{algorithm}.out"
            rec.check(cli_main(["-i", os.path.join(fixtures, "cyclic3.sys"), "-a", algorithm, "-o", str(out)]) == 0,
                      f"{algorithm} run failed")
            rep = read_system(str(out))
            rec.check(format_system(rep.ring, rep.polys, rep.comments) == out.read_text(), f"{algorithm} round trip")
            rec.check(is_groebner(rep.polys), f"{algorithm} report is not a Gröbner basis")
        parsed = parse_system("p 7\nvars x,y\nx^2 + 3*y\nx - x\n")
        a, b = parsed.ring.gens()
        rec.check(parsed.polys == [a * a + 3 * b, parsed.ring.zero()], "parse example")
        # exit codes
        bad = tmp_path / "bad.sys"
        bad.write_text("p 4\nvars x\nx\n")
        over = tmp_path / "over.sys"
        over.write_text("p 7\nvars x\nx\nx + 1\n")
        cases = [
            (["-i", str(bad)], 2),
            (["-i", str(tmp_path / "missing.sys")], 2),
            (["-i", str(over), "-a", "naive"], 3),
            (["-i", str(over), "-a", "sgbtree"], 3),
            (["-i", os.path.join(fixtures, "xyxz.sys"), "-a", "naive"], 0),
        ]
        for argv, want in cases:
            got = cli_main(argv)
            rec.check(got == want, f"{argv[-1]}: exit {got}, expected {want}")
        capsys.readouterr()
        # the two-seed verify flow
        ra, rb = tmp_path / "a.out", tmp_path / "b.out"
        src = os.path.join(fixtures, "pseudo3_seed1.sys")
        cli_main(["-i", src, "--seed", "1", "-o", str(ra)])
        cli_main(["-i", src, "--seed", "2", "-o", str(rb)])
        rec.check(cli_main(["verify", str(ra), str(rb)]) == 0, "verify of two seeds failed")
        capsys.readouterr()


if __name__ == "__main__":
    raise SystemExit(pytest.main(["-v", __file__]))
