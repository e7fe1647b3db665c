from __future__ import annotations

import io
import subprocess
import sys

import pytest

from deltaslide.cli import run

EX3 = "ground: 1 2 3\nfeasible: -\nfeasible: 1 2\nfeasible: 1 3\nfeasible: 2 3\nfeasible: 1 2 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate(files):
    assert call("validate", "--set-system", files("ex3.ss", EX3)) == (0, "delta-matroid: yes\nbinary: no\n", "")
    bad = files("bad.ss", "ground: 1 2 3\nfeasible: -\nfeasible: 1 2\nfeasible: 2 3\nfeasible: 1 2 3\n")
    assert call("validate", "--set-system", bad)[1] == "delta-matroid: no\nbinary: no\n"


def test_slide(files):
    code, out, _ = call("slide", "--set-system", files("ex3.ss", EX3), "--over", "1", "2")
    assert code == 0
    assert out == "ground: 1 2 3\nfeasible: -\nfeasible: 1 2\nfeasible: 2 3\nfeasible: 1 2 3\n"
    code, out, _ = call("slide", "--set-system", files("ex3.ss", EX3), "--over", "1", "2", "--over", "1", "2")
    assert out == EX3


def test_twist_and_sum(files):
    e = files("e.ss", "ground: e\nfeasible: -\n")
    f = files("f.ss", "ground: f\nfeasible: -\nfeasible: f\n")
    assert call("twist", "--set-system", e, "--by", "e")[1] == "ground: e\nfeasible: e\n"
    assert call("sum", "--set-system", e, f)[1] == "ground: e f\nfeasible: -\nfeasible: f\n"
    code, _, err = call("sum", "--set-system", e, e)
    assert code == 1 and err.startswith("error: GroundOverlap")


def test_normalize(files):
    jmi = files("j.ss", "ground: 1 2 3\nfeasible: -\nfeasible: 1 2\nfeasible: 1 3\nfeasible: 2 3\n")
    code, out, _ = call("normalize", "--set-system", jmi, "--verify")
    assert code == 0
    assert out.splitlines()[0] == "canonical: i=1 j=1 k=0 l=0"
    code, _, err = call("normalize", "--set-system", files("ex3.ss", EX3))
    assert code == 1 and "NotBinary" in err and err.count("\n") == 1


def test_represent(files):
    code, out, _ = call("represent", "--set-system", files("p.ss", "ground: e f\nfeasible: -\nfeasible: e f\n"))
    assert (code, out) == (0, "labels: e f\nrow: 0 1\nrow: 1 0\n")
    code, out, _ = call("represent", "--set-system", files("c.ss", "ground: e\nfeasible: e\n"))
    assert (code, out) == (0, "# twist: e\nlabels: e\nrow: 0\n")
    assert call("represent", "--set-system", files("ex3.ss", EX3))[0] == 1


def test_bouquet_verbs(files):
    b = files("b.bq", "edges: e f\ntwisted:\nrotation: f e f e\n")
    assert call("classify-bouquet", "--bouquet", b) == (0, "canonical: i=0 j=1 k=0 l=0\n", "")
    assert call("dmatroid", "--bouquet", b)[1] == "ground: e f\nfeasible: -\nfeasible: e f\n"
    assert call("interlace", "--bouquet", b)[1] == "labels: e f\nrow: 0 1\nrow: 1 0\n"
    code, out, _ = call("ribbon-slide", "--bouquet", b, "--end", "0", "--over", "e")
    assert code == 0 and out.startswith("edges: e f\n")
    c = files("c.bq", "edges: a b c\ntwisted:\nrotation: a a c b b c\n")
    code, _, err = call("ribbon-slide", "--bouquet", c, "--end", "0", "--over", "b")
    assert code == 1 and "NonAdjacentEnds" in err


def test_verify_con2():
    code, out, _ = call("verify", "--theorem", "con2", "--max-n", "4")
    assert code == 0
    assert "checked 1024 matrices × 12 pairs: OK" in out.splitlines()


def test_verify_failure_exits_one():
    code, out, _ = call("verify", "--theorem", "thm1", "--max-n", "2")
    assert code == 1 and "FAILED" in out


def test_conjecture(files):
    code, out, _ = call("conjecture", "--set-system", files("c.ss", "ground: e\nfeasible: e\n"), "--limit", "100")
    assert (code, out) == (0, "found: yes\ncanonical: i=0 j=0 k=0 l=1\n")
    code, _, err = call("conjecture", "--set-system", files("ex3.ss", EX3), "--limit", "100")
    assert code == 1


def test_parse_and_usage_errors(files):
    code, _, err = call("classify-bouquet", "--bouquet", files("bad.bq", "edges: a\ntwisted:\nrotation: a a a\n"))
    assert code == 2 and "line 3, column 15" in err
    assert call("validate", "--set-system", "/nonexistent/file")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("slide", "--set-system", files("ex3.ss", EX3))[0] == 2
    assert call("verify", "--theorem", "nope")[0] == 2


def test_deterministic_output(files):
    path = files("ex3.ss", EX3)
    assert call("slide", "--set-system", path, "--over", "2", "3") == call("slide", "--set-system", path, "--over", "2", "3")


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "deltaslide", "validate", "--set-system", files("ex3.ss", EX3)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "delta-matroid: yes\nbinary: no\n"
