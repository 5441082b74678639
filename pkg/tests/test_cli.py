import json

import pytest

from aghkit.cli import build_parser, main
from aghkit.polytope import make_cross_plus, parse_polytope
from aghkit.poset import make_Qm, parse_poset

from conftest import EXAMPLE_POSET


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_hstar_family(capsys):
    out = run_json(capsys, "hstar", "--family", "cross:1")
    assert out["h_star"] == [1, 4, 7, 1]
    assert set(out) == {"dim", "counts", "h_star", "socle_degree", "reciprocity_ok", "idp"}


def test_hstar_file_verify(capsys, tmp_path):
    f = tmp_path / "sq.txt"
    f.write_text("dim 2\n0 0\n1 0\n0 1\n1 1\n")
    out = run_json(capsys, "hstar", str(f), "--verify", "--idp", "2")
    assert out["h_star"] == [1, 1]
    assert out["reciprocity_ok"] is True
    assert out["idp"] == {"2": True}


def test_table_format(capsys):
    code, out, _ = run(capsys, "hstar", "--family", "cross:1", "--format", "table")
    assert code == 0
    assert any(line.startswith("h_star") and "[1, 4, 7, 1]" in line for line in out.splitlines())


def test_parse_error_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("dim 2\n0 0\n1 x\n")
    code, out, err = run(capsys, "hstar", str(f))
    assert code == 2 and out == ""
    assert "line 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "hstar", str(tmp_path / "nope.txt"))
    assert code == 2 and "cannot read" in err


def test_unknown_flag(capsys):
    assert run(capsys, "hstar", "--bogus")[0] == 2


def test_bad_family(capsys):
    assert run(capsys, "hstar", "--family", "cube:2")[0] == 2
    assert run(capsys, "hibi-type", "--family", "pm3")[0] == 2


def test_poset_hstar_cross_check(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("elements 4\n1 < 3\n2 < 3\n2 < 4\n")
    out = run_json(capsys, "poset-hstar", str(f), "--cross-check")
    assert out["h"] == [1, 3, 1] and out["linear_extensions"] == 5
    assert out["cross_check"] is True


def test_poset_cycle_message(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("elements 2\n1 < 2\n2 < 1\n")
    code, _, err = run(capsys, "poset-hstar", str(f))
    assert code == 2 and "cycle" in err


def test_pm4_pattern(capsys):
    h = run_json(capsys, "poset-hstar", "--family", "pm:4")["h"]
    assert len(h) == 5 and h[3] == h[1] + 1


@pytest.mark.parametrize("args,verdict", [
    (["1,4,7,1", "--domain"], "AlmostGorenstein"),
    (["1,2,3", "--domain"], "NotAlmostGorenstein"),
    (["1,5"], "AlmostGorenstein"),
])
def test_classify(capsys, args, verdict):
    assert run_json(capsys, "classify", *args)["verdict"] == verdict


def test_classify_inconsistent_exit_1(capsys):
    code, out, err = run(capsys, "classify", "1,3,1", "--type", "2")
    assert code == 1 and out == ""
    assert "exceeds" in err


def test_classify_bad_h_exit_2(capsys):
    assert run(capsys, "classify", "2,1")[0] == 2


@pytest.mark.parametrize("fam,expected", [("pm:3", 2), ("qm:3", 3)])
def test_hibi_type(capsys, fam, expected):
    out = run_json(capsys, "hibi-type", "--family", fam)
    assert out["cm_type"] == expected
    assert out["family_check"] == {"expected_type": expected, "matches": True}
    assert out["classification"]["verdict"] == "AlmostGorenstein"


def test_hibi_size_cap(capsys, tmp_path):
    f = tmp_path / "big.txt"
    f.write_text("elements 13\n")
    code, _, err = run(capsys, "hibi-type", str(f))
    assert code == 2 and "--allow-large" in err


def test_xi_verify_trace(capsys):
    out = run_json(capsys, "xi-verify", "4")
    assert out["passed"] is True
    assert {"pi": "13246857", "image": "24135768"} in out["trace"]


def test_family_files(capsys, tmp_path):
    f = tmp_path / "q.txt"
    assert run(capsys, "family", "qm", "4", "-o", str(f))[0] == 0
    assert parse_poset(f.read_text()) == make_Qm(4)
    code, out, _ = run(capsys, "family", "cross", "1")
    assert code == 0 and out.startswith("#")
    assert parse_polytope(out).vertices == make_cross_plus(1).vertices


def test_threads_env(monkeypatch):
    monkeypatch.setenv("AGHKIT_THREADS", "3")
    ns = build_parser().parse_args(["hstar", "--family", "cross:1"])
    assert ns.threads == 3


def test_threads_output_identical(capsys):
    a = run(capsys, "hstar", "--family", "cross:1", "--threads", "1")[1]
    b = run(capsys, "hstar", "--family", "cross:1", "--threads", "2")[1]
    assert a == b


def test_corpus_run(capsys):
    code, out, _ = run(capsys, "corpus-run", "--skip-slow")
    assert code == 0, out
    assert "FAIL" not in out


def test_corpus_mismatch_fails(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps([{"name": "x", "args": ["classify", "1,5"],
                              "provenance": "test", "expected": {"verdict": "Gorenstein"}}]))
    code, out, _ = run(capsys, "corpus-run", str(f))
    assert code == 1 and "FAIL x" in out


def test_corpus_entries_tagged():
    from aghkit.cli import default_corpus
    entries = json.loads(default_corpus())
    assert all(e["provenance"].split(":")[0] in {"published", "derived", "trivial"} for e in entries)
