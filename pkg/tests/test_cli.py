import io

import pytest

from tamebrauer import cli
from tamebrauer.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = main(list(argv), stdout=out, stderr=err)
    return rc, out.getvalue(), err.getvalue()


def table_rows(text):
    lines = text.splitlines()
    head = next(i for i, ln in enumerate(lines) if ln.startswith("place"))
    return [ln.split() for ln in lines[head + 1:]]


def test_residue_two_row_table():
    rc, out, _ = run("residue", "-e", "2; (t, t-1)", "--field", "GF(3)")
    assert rc == 0
    assert table_rows(out) == [["(t)", "1", "2", "1", "2"], ["inf", "1", "2", "1", "2"]]
    assert "ramified_places: 2" in out


def test_residue_trivial_class_gives_empty_table():
    rc, out, _ = run("residue", "-e", "2; (1, t)", "--field", "GF(3)")
    assert rc == 0 and table_rows(out) == []


def test_residue_reads_file_and_stdin(tmp_path, monkeypatch):
    path = tmp_path / "cls.txt"
    path.write_text("2; (t, t-1)\n")
    expected = run("residue", "-e", "2; (t, t-1)", "--field", "GF(3)")[1]
    assert run("residue", str(path), "--field", "GF(3)")[1] == expected
    monkeypatch.setattr("sys.stdin", io.StringIO("2; (t, t-1)\n"))
    assert run("residue", "-", "--field", "GF(3)")[1] == expected


def test_index_modes():
    rc, out, _ = run("index", "--tower", "-e", "4; base=GF(5); params=t1,t2; (2, t1)")
    assert rc == 0 and "index: 4" in out and "peel t1" in out
    rc, out, _ = run("index", "--tower", "-e", "4; base=GF(5); params=t1,t2; (1, t1)")
    assert rc == 0 and "index: 1" in out
    rc, out, _ = run("index", "--global", "-e", "4; (t, 2)", "--field", "GF(5)")
    assert rc == 0 and "index: 4" in out
    rc, out, _ = run("index", "-e", "4; (t1, t2)", "--tower")
    assert rc == 2


@pytest.mark.parametrize("argv,code", [
    (("residue", "-e", "2; (t, t + * 1)", "--field", "GF(3)"), 2),
    (("residue", "--field", "GF(3)"), 2),
    (("index", "-e", "3; (t, t+1)", "--field", "GF(5)"), 3),
    (("hasse", "--random", "2", "--q", "5", "--n", "3"), 3),
    (("hasse", "--random", "2", "--q", "5", "--n", "6"), 3),
    (("construct", "--kind", "Thm45", "--orders", "2,2,1,1", "--q", "5", "--lambda", "1"), 4),
    (("construct", "--kind", "Thm45", "--orders", "3,1,1,1", "--q", "5", "--lambda", "2"), 3),
    (("classify", "-g", "[3,3,3,3,3]", "--residue-char", "2", "--residue-kind", "adelic"), 2),
])
def test_exit_codes(argv, code):
    rc, out, err = run(*argv)
    assert rc == code
    assert out == ""
    if code != 2 or "adelic" not in argv:
        assert err.startswith("error: ")


def test_internal_assertion_exit_code(monkeypatch):
    def broken(args):
        raise AssertionError("boom")

    monkeypatch.setattr(cli, "cmd_residue", broken)
    rc, _, err = run("residue", "-e", "2; (t, t)", "--field", "GF(3)")
    assert rc == 5 and "boom" in err


def test_classify_example():
    rc, out, _ = run("classify", "-g", "abelian: [3,3,3,3,3]", "--residue-char", "2", "--two-dim-local")
    assert rc == 0 and "verdict: NotAdmissible" in out and "prime: 3" in out
    rc, out, _ = run("classify", "-g", "[6]", "--residue-char", "5", "--mu", "6", "--two-dim-local")
    assert "verdict: Admissible" in out
    rc, out, _ = run("classify", "-g", "[6]", "--residue-char", "3", "--mu", "6", "--two-dim-local")
    assert "verdict: Unknown" in out and "coprimality" in out


def test_classify_group_forms():
    for text in ("Q8", "S4", "D8", "Z/6", "abelian 2 4"):
        rc, out, _ = run("classify", "-g", text, "--residue-char", "5", "--mu", "48")
        assert rc == 0 and "verdict:" in out, text


def test_construct_verify_and_certificate_file(tmp_path):
    cert = tmp_path / "c.cert"
    rc, out, _ = run("construct", "--kind", "Thm45", "--orders", "2,2,1,1", "--q", "5", "--lambda", "2",
                     "--verify", "--cert-out", str(cert))
    assert rc == 0 and "division: true" in out
    assert cert.read_text().startswith("CERT/1")
    rc, again, _ = run("verify", str(cert))
    assert rc == 0 and "division: true" in again
    rc, out, _ = run("construct", "--kind", "Thm45", "--orders", "1,1,1,1", "--q", "5", "--verify")
    assert rc == 0 and "index: 1" in out


def test_verify_rejects_tampered_certificate(tmp_path):
    cert = tmp_path / "c.cert"
    run("construct", "--kind", "Thm42", "--orders", "2,1,2,1", "--q", "5", "--lambda", "2", "--a", "2",
        "--cert-out", str(cert))
    cert.write_text(cert.read_text().replace("degree 4", "degree 8"))
    rc, _, err = run("verify", str(cert))
    assert rc == 5 and "StepFailed" in err


def test_hasse_runs():
    rc, out, _ = run("hasse", "--random", "200", "--q", "5", "--n", "4", "--seed", "1")
    assert rc == 0
    for key in ("witnesses", "reciprocity", "agreement"):
        assert f"{key}: 200/200" in out
    rc, out, _ = run("hasse", "--random", "0", "--q", "5", "--n", "4")
    assert rc == 0 and "witnesses: 0/0" in out and "trace" not in out


def test_record_format():
    rc, out, _ = run("--format", "record", "hasse", "--random", "3", "--q", "5", "--n", "4", "--seed", "2")
    assert rc == 0
    pairs = [ln.split("=", 1) for ln in out.splitlines()]
    assert all(len(p) == 2 for p in pairs)
    keys = [k for k, _ in pairs]
    assert keys[:2] == ["command", "version"]
    assert "output.witnesses" in keys and "trace.3" in keys
    rc, after, _ = run("hasse", "--format", "record", "--random", "3", "--q", "5", "--n", "4", "--seed", "2")
    assert after == out


@pytest.mark.parametrize("argv", [
    ("hasse", "--random", "50", "--q", "7", "--n", "3", "--seed", "11"),
    ("hasse", "--random", "50", "--q", "9", "--n", "4", "--seed", "0"),
    ("--format", "record", "residue", "-e", "4; (t^2 + 1, 2); (t, t + 3)", "--field", "GF(5)"),
    ("construct", "--kind", "Thm42", "--orders", "2,1,3,1", "--q", "7", "--lambda", "3", "--a", "3", "--verify"),
    ("classify", "-g", "S4", "--residue-char", "5", "--mu", "24"),
])
def test_repeated_runs_are_byte_identical(argv):
    first = run(*argv)
    assert first[0] == 0
    assert all(run(*argv) == first for _ in range(2))


def test_seed_changes_report():
    a = run("hasse", "--random", "20", "--q", "5", "--n", "4", "--seed", "1")[1]
    b = run("hasse", "--random", "20", "--q", "5", "--n", "4", "--seed", "2")[1]
    assert a != b
