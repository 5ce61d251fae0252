import os

import pytest

from nondeg.cli import main, read_stats
from nondeg.ideal import interreduce
from nondeg.locus import nondeg_naive, nondeg_sgbtree
from nondeg.signature import buchberger_sig, sgb
from nondeg.sysfile import format_system, read_system

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    return os.path.join(FIX, name)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# -- generate ---------------------------------------------------------------


def test_generate_cyclic3_byte_identical(tmp_path, capsys):
    out = tmp_path / "c3.sys"
    assert main(["generate", "--family", "cyclic", "--params", "3", "-o", str(out)]) == 0
    with open(fixture("cyclic3.sys"), "rb") as fh:
        assert out.read_bytes() == fh.read()
    code, text, _ = run(["generate", "--family", "cyclic", "--params", "3"], capsys)
    with open(fixture("cyclic3.sys")) as fh:
        assert code == 0 and text == fh.read()


def test_generate_pseudo3_byte_identical(tmp_path):
    out = tmp_path / "p3.sys"
    assert main(["generate", "--family", "pseudo", "--params", "3", "--seed", "1", "-o", str(out)]) == 0
    with open(fixture("pseudo3_seed1.sys"), "rb") as fh:
        assert out.read_bytes() == fh.read()


def test_generate_errors(capsys):
    code, _, err = run(["generate", "--family", "sos", "--params", "3"], capsys)
    assert code == 2 and "input error" in err
    with pytest.raises(SystemExit):
        main(["generate", "--family", "steiner", "--params", "3"])


# -- run --------------------------------------------------------------------


def test_naive_on_xyxz(capsys):
    code, out, _ = run(["--input", fixture("xyxz.sys"), "--algorithm", "naive"], capsys)
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert body == ["p 65521", "vars x, y, z", "z", "y"]
    assert "# codimension: 2" in out


def expected_basis(algorithm, polys):
    if algorithm == "naive":
        return nondeg_naive(polys).basis.basis
    if algorithm == "sgbtree":
        return nondeg_sgbtree(polys).basis.basis
    engine = sgb if algorithm == "sgb" else buchberger_sig
    return interreduce(engine(polys).basis)


@pytest.mark.parametrize("algorithm", ["naive", "sgbtree", "sgb", "buchberger"])
def test_report_round_trips(algorithm, tmp_path):
    out = tmp_path / "r.sys"
    assert main(["-i", fixture("cyclic3.sys"), "-a", algorithm, "-o", str(out)]) == 0
    rep = read_system(str(out))
    meta = rep.meta()
    assert meta["algorithm"] == algorithm
    assert int(meta["generators"]) == len(rep.polys)
    src = read_system(fixture("cyclic3.sys"))
    want = expected_basis(algorithm, src.polys)
    assert [rep.ring.format(f) for f in rep.polys] == [src.ring.format(f) for f in want]
    # printing the parsed report again reproduces it byte for byte
    assert format_system(rep.ring, rep.polys, rep.comments) == out.read_text()


def test_verify_two_seeds(tmp_path, capsys):
    a, b = tmp_path / "a.sys", tmp_path / "b.sys"
    src = fixture("pseudo3_seed1.sys")
    assert main(["-i", src, "-a", "sgbtree", "--seed", "1", "-o", str(a)]) == 0
    assert main(["-i", src, "-a", "sgbtree", "--seed", "2", "-o", str(b)]) == 0
    code, out, _ = run(["verify", str(a), str(b)], capsys)
    assert code == 0 and "equal up to radical" in out
    c = tmp_path / "c.sys"
    assert main(["-i", fixture("xyxz.sys"), "-a", "sgb", "-o", str(c)]) == 0
    d = tmp_path / "d.sys"
    assert main(["-i", fixture("xyxz.sys"), "-a", "naive", "-o", str(d)]) == 0
    code, out, _ = run(["verify", str(c), str(d)], capsys)
    assert code == 1 and "different" in out


def test_stats_and_trace(tmp_path, capsys):
    stats, trace = tmp_path / "s.txt", tmp_path / "t.jsonl"
    argv = ["-i", fixture("cyclic3.sys"), "-a", "sgbtree", "--seed", "3", "--stats", str(stats), "--trace", str(trace)]
    assert main(argv) == 0
    report = capsys.readouterr().out
    summary = read_stats(str(stats))
    assert summary["ratio"] is not None
    assert summary["sgbtree_total_ops"] == summary["total_ops"]
    assert f"# total_ops: {summary['total_ops']}" in report
    lines = stats.read_text().splitlines()
    assert f"total_ops {summary['total_ops']}" in lines
    assert trace.read_text().strip()


def test_deterministic_and_lex_modes(tmp_path, capsys):
    code, out, _ = run(["-i", fixture("xyxz.sys"), "-a", "sgbtree", "--mode", "deterministic"], capsys)
    assert code == 0 and "# mode: deterministic" in out
    code, out, _ = run(["-i", fixture("xyxz.sys"), "-a", "naive", "--order", "lex"], capsys)
    assert code == 0 and "# order: lex" in out


# -- exit codes -------------------------------------------------------------


def test_exit_code_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.sys"
    bad.write_text("p 4\nvars x\nx\n")
    code, _, err = run(["-i", str(bad)], capsys)
    assert code == 2 and "line 1, column 3" in err
    code, _, _ = run(["-i", str(tmp_path / "missing.sys")], capsys)
    assert code == 2
    zero = tmp_path / "zero.sys"
    zero.write_text("p 7\nvars x, y\nx - x\n")
    for algorithm in ("naive", "sgb"):
        code, _, _ = run(["-i", str(zero), "-a", algorithm], capsys)
        assert code == 2
    empty = tmp_path / "empty.sys"
    empty.write_text("p 7\nvars x\n")
    assert run(["-i", str(empty)], capsys)[0] == 2


def test_exit_code_unsupported(tmp_path, capsys):
    over = tmp_path / "over.sys"
    over.write_text("p 7\nvars x\nx\nx + 1\n")
    for algorithm in ("naive", "sgbtree"):
        assert run(["-i", str(over), "-a", algorithm], capsys)[0] == 3
    assert run(["-i", str(over), "-a", "sgb"], capsys)[0] == 0
    code = run(["-i", fixture("xyxz.sys"), "--mode", "deterministic", "--order", "lex"], capsys)[0]
    assert code == 3


def test_no_command_prints_help(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().out
