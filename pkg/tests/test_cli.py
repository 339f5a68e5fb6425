import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smithmult.cli import main
from smithmult.errors import ParseError
from smithmult.fixtures import A4, A7, B7, L4, L4_LIN, S7, U7, V7
from smithmult.kernel import IntMat
from smithmult.matio import format_matrix, parse_matrix, read_matrix, write_matrix


@pytest.fixture
def a7_file(tmp_path):
    p = tmp_path / "a7.txt"
    write_matrix(p, A7)
    return p


def run(capsys, *argv):
    code = main([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- matrix files ------------------------------------------------------------


@given(st.lists(st.lists(st.integers(-10**50, 10**50), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_format_parse_round_trip(rows):
    a = IntMat(rows)
    assert parse_matrix(format_matrix(a)) == a


def test_parse_comments_and_errors():
    assert parse_matrix("# c\n2 2\n1 0\n\n0 1\n") == IntMat.identity(2)
    for bad in ["", "2\n1 2", "2 2\n1 2\n3", "1 2\n1 x", "2 2\n1 2", "0 3\n"]:
        with pytest.raises(ParseError):
            parse_matrix(bad)


# -- commands ----------------------------------------------------------------


def test_smith(capsys, a7_file):
    code, out, _ = run(capsys, "smith", a7_file)
    assert code == 0 and out.split() == [str(s) for s in S7]
    code, out, _ = run(capsys, "smith", a7_file, "--classical", "--format", "json")
    assert json.loads(out)["S"] == [str(s) for s in S7]


def test_replay_writes_stored_multipliers(capsys, a7_file, tmp_path):
    prefix = tmp_path / "out"
    code, out, _ = run(capsys, "multipliers", a7_file, "--replay-fixture", "s5", "--out", prefix)
    assert code == 0, out
    assert "attempts: 1" in out
    assert (tmp_path / "out.V").read_text() == format_matrix(V7)
    assert (tmp_path / "out.U").read_text() == format_matrix(U7)
    assert read_matrix(tmp_path / "out.S") == S7.matrix()


def test_replay_needs_the_example(capsys, tmp_path):
    p = tmp_path / "a4.txt"
    write_matrix(p, A4)
    assert run(capsys, "multipliers", p, "--replay-fixture", "s5")[0] == 2
    assert run(capsys, "multipliers", p, "--replay-fixture", "nope")[0] == 2


def test_multipliers_seed_determinism(capsys, tmp_path, monkeypatch):
    p = tmp_path / "a4.txt"
    write_matrix(p, A4)
    run(capsys, "multipliers", p, "--seed", "9", "--out", tmp_path / "x")
    monkeypatch.setenv("SNF_SEED", "9")
    code, out, _ = run(capsys, "multipliers", p, "--out", tmp_path / "y")
    assert code == 0 and "seed: 9" in out
    for k in "SVU":
        assert (tmp_path / f"x.{k}").read_text() == (tmp_path / f"y.{k}").read_text()
    code, _, _ = run(capsys, "verify", p, tmp_path / "x.S", tmp_path / "x.U", tmp_path / "x.V")
    assert code == 0


def test_verify(capsys, a7_file, tmp_path):
    for name, m in [("S", S7.matrix()), ("U", U7), ("V", V7)]:
        write_matrix(tmp_path / name, m)
    code, out, _ = run(capsys, "verify", a7_file, *(tmp_path / k for k in "SUV"))
    assert code == 0 and "FAILED" not in out
    rows = V7.tolist()
    rows[3][3] += 1
    write_matrix(tmp_path / "V", IntMat(rows))
    code, out, _ = run(capsys, "verify", a7_file, *(tmp_path / k for k in "SUV"))
    assert code == 1 and "AV = US: FAILED" in out


def test_input_errors(capsys, tmp_path):
    missing = tmp_path / "none.txt"
    assert run(capsys, "smith", missing)[0] == 2
    rect = tmp_path / "rect.txt"
    rect.write_text("2 3\n1 2 3\n4 5 6\n")
    assert run(capsys, "smith", rect)[0] == 2
    sing = tmp_path / "sing.txt"
    sing.write_text("2 2\n1 2\n2 4\n")
    code, _, err = run(capsys, "multipliers", sing)
    assert code == 3 and "singular" in err
    p = tmp_path / "a4.txt"
    write_matrix(p, A4)
    assert run(capsys, "multipliers", p, "--lambda", "5")[0] == 2
    assert run(capsys, "multipliers", p, "--jobs", "0")[0] == 2


def test_solve(capsys, tmp_path):
    p, b = tmp_path / "a4.txt", tmp_path / "b.txt"
    write_matrix(p, A4)
    b.write_text("4 1\n25\n94\n12\n-2\n")
    code, out, _ = run(capsys, "solve", p, b, "--frac", "--seed", "2")
    assert code == 0
    assert out.split() == ["s=29088", "11011", "20716", "8682", "17424"]
    code, out, _ = run(capsys, "solve", p, b, "--mod", "2", "--seed", "2", "--format", "json")
    data = json.loads(out)
    mod = int(data["modulus"])
    y = [int(r[0]) for r in data["solution"]]
    # A y = b modulo X^d
    assert all((sum(a * x for a, x in zip(row, y)) - t) % mod == 0
               for row, t in zip(A4.rows, (25, 94, 12, -2)))


def test_linearize_and_opa(capsys, tmp_path):
    p = tmp_path / "l4.txt"
    write_matrix(p, L4)
    code, out, _ = run(capsys, "linearize", p)
    assert code == 0
    head, body = out.split("\n", 1)
    assert head == "d=14 e=0 0 1 2"
    assert parse_matrix(body) == L4_LIN
    code, out, _ = run(capsys, "linearize", p, "--mode", "permut", "--format", "json")
    assert json.loads(out)["mode"] == "permutation"
    q = tmp_path / "a4.txt"
    write_matrix(q, A4)
    code, out, _ = run(capsys, "opa", q, "--seed", "4", "--format", "json")
    assert code == 0 and json.loads(out)["s"] == "29088"


def test_hermite_trivial(capsys, tmp_path):
    p = tmp_path / "d.txt"
    p.write_text("2 2\n2 0\n0 2\n")
    code, out, _ = run(capsys, "hermite-trivial", p)
    assert code == 1 and out.strip() == "NotTrivial"
    write_matrix(p, B7)
    code, out, _ = run(capsys, "hermite-trivial", p)
    assert code == 0 and out.splitlines()[0] == "h1=830295"
