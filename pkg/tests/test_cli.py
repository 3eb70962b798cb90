import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homlie import families
from homlie.cli import (
    DocumentError, algebra_document, dump_algebra, main, parse_algebra, read_document, run_command,
)
from homlie.homalg import LinearSelfMap, twist


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code, report = run_command(argv, io.StringIO(stdin), out, err)
    return code, report, out.getvalue(), err.getvalue()


def example(*argv):
    code, _, out, _ = run(["example", *argv])
    assert code == 0
    return out


def test_field_document_roundtrip():
    text = '{"dim": 1, "basis": ["1"], "structure": [{"i": 0, "j": 0, "k": 0, "value": "1"}]}'
    A, alpha = parse_algebra(text)
    assert alpha is None and A.c == (((1,),),)
    assert json.loads(dump_algebra(A)) == json.loads(text)


def test_sl2_document():
    A, alpha = parse_algebra(dump_algebra(*families.sl2(Fraction(-1, 3)), kind="lie"))
    assert A == families.sl2()[0]
    assert alpha.matrix == families.sl2(Fraction(-1, 3))[1].matrix
    assert read_document(dump_algebra(A, kind="lie")).kind == "lie"


@pytest.mark.parametrize("text, fragment", [
    ('{"dim": 1, "structure": [{"i": 0, "j": 0, "k": 0, "value": "1/0"}]}', "structure[0]"),
    ('{"dim": 1, "structure": [{"i": 0, "j": 0, "k": 0, "value": 0.5}]}', "0.5"),
    ('{"dim": 1, "structure": [{"i": 0, "j": 0, "k": 1, "value": "1"}]}', "out of range"),
    ('{"dim": 2, "basis": ["a", "a"]}', "distinct"),
    ('{"dim": 1, "alpha": [["1", "2"]]}', "1x1"),
    ('{"dim": 1, "kind": "jordan"}', "kind"),
    ('{"dim": 1,\n "basis": [}', "line 2"),
    ('[1, 2]', "object"),
])
def test_document_errors(text, fragment):
    with pytest.raises(DocumentError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        read_document(text)


@given(lam=st.fractions(-9, 9, max_denominator=7).filter(bool),
       x=st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_document_roundtrip_property(lam, x):
    for A, alpha in (families.sl2(lam), (families.abelian(2), LinearSelfMap.from_images([x[:2], x[2:]]))):
        B, beta = parse_algebra(dump_algebra(A, alpha))
        assert B == A and beta.matrix == alpha.matrix


def test_verify_pass_and_exit_code():
    doc = example("sl2", "--lambda", "2")
    code, report, out, _ = run(["verify", "--group", "a3"], doc)
    assert code == 0
    assert report["checks"] == [{"axiom": "G-Hom-associativity", "subgroup": "A3", "passed": True}]
    assert "PASS  G-Hom-associativity [A3]" in out


def test_verify_counterexample():
    doc = example("sl2", "--untwisted")
    code, report, out, _ = run(["verify", "--group", "e", "--alpha", "[[1,0,0],[0,1,0],[0,0,1]]"], doc)
    assert code == 1
    cex = report["checks"][0]["counterexample"]
    assert cex["triple"] == ["h", "h", "e"]
    assert cex["defect"] == {"coords": ["0", "-4", "0"], "text": "-4*e"}
    assert "FAIL" in out


def test_counterexample_iff_fail():
    doc = example("sl2", "--untwisted")
    for group in ("e", "12", "13", "23", "a3", "s3"):
        _, report, _, _ = run(["verify", "--group", group], doc)
        for c in report["checks"]:
            assert ("counterexample" in c) == (not c["passed"])


def test_homology_abelian():
    code, report, out, _ = run(["homology", "--coefficients", "trivial"], example("abelian", "--n", "3"))
    assert code == 0
    assert [r["homology_dim"] for r in report["homology"]] == [1, 3, 3, 1]


def test_homology_truncated_and_json():
    code, _, out, _ = run(["homology", "--coefficients", "adjoint", "--max-degree", "1", "--json"],
                          example("heisenberg", "--l1", "2", "--l2", "3"))
    assert code == 0
    rows = json.loads(out)["homology"]
    # the top row ignores the missing d_2, so it bounds the true value 5 from above
    assert [r["homology_dim"] for r in rows] == [2, 8]
    assert rows[-1]["truncated"]


def test_homology_rejects_non_lie():
    code, report, _, _ = run(["homology"], example("matrix", "--n", "2"))
    assert code == 1 and not report["checks"][0]["passed"]


def test_twist_then_verify(tmp_path):
    src = tmp_path / "sl3.json"
    src.write_text(example("sln", "--n", "3", "--lambdas", "2", "3", "--untwisted"))
    dst = tmp_path / "sl3_twisted.json"
    code, _, _, _ = run(["twist", "--algebra", str(src), "--out", str(dst)])
    assert code == 0
    T = twist(*families.sl_n(3, [2, 3]))
    B, beta = parse_algebra(dst.read_text())
    assert B == T.algebra and beta.matrix == T.alpha.matrix
    code, _, _, _ = run(["verify", "--algebra", str(dst), "--group", "a3"])
    assert code == 0


def test_twist_refuses_non_multiplicative():
    doc = example("sl2", "--untwisted")
    code, report, out, err = run(["twist", "--alpha", "[[2,0,0],[0,2,0],[0,0,2]]"], doc)
    assert code == 1 and out == ""
    assert report["checks"][0]["counterexample"]["pair"]


def test_hybe_command(tmp_path):
    dump = tmp_path / "ops.txt"
    code, report, _, _ = run(["hybe", "--strands", "3", "--dump", str(dump)], example("sl2", "--lambda", "2"))
    assert code == 0
    assert [c["axiom"] for c in report["checks"]] == [
        "skew-symmetry", "G-Hom-associativity", "multiplicativity", "HYBE", "braid relations"]
    assert report["info"] == {"operator_rows": 16, "invertible": True}
    assert dump.read_text().count("64 64\n") == 2


def test_hybe_size_cap():
    code, report, _, err = run(["hybe", "--strands", "5"], example("sln", "--n", "3"))
    assert code == 2 and "exceeds" in err


@pytest.mark.parametrize("argv", [
    ["example", "group", "--order", "4", "--power", "2"],
    ["example", "poly", "--d", "3", "--coeffs", "0", "1", "1"],
    ["example", "matrix-exp", "--n", "2", "--t", "1/2"],
    ["example", "gl", "--n", "2", "--x", "[[1,1],[0,1]]"],
])
def test_examples_verify_e_or_a3(argv):
    doc = example(*argv[1:])
    group = "a3" if argv[1] == "gl" else "e"
    assert run(["verify", "--group", group], doc)[0] == 0


def test_witt_example():
    code, report, out, _ = run(["example", "witt", "--lambda", "1/2", "--hi", "4"])
    assert code == 0 and len(report["checks"]) == 3
    assert report["info"]["triples"] == 6 ** 3


@pytest.mark.parametrize("argv, stdin", [
    (["verify"], ""),
    (["nonsense"], ""),
    (["verify", "--group", "a3"], '{"dim": 1, "structure": [{"i": 0, "j": 0, "k": 0, "value": "1/0"}]}'),
    (["verify", "--group", "a3"], "{not json"),
    (["verify", "--group", "a3", "--alpha", "[[1.5]]"], '{"dim": 1}'),
    (["example", "sl2", "--lambda", "0"], ""),
    (["example", "poly", "--d", "3", "--coeffs", "1", "1"], ""),
])
def test_exit_code_two(argv, stdin):
    code, _, _, err = run(argv, stdin)
    assert code == 2 and err.startswith("error:")


def test_reports_deterministic():
    doc = example("heisenberg", "--l1", "2", "--l2", "3")
    a = run(["homology", "--coefficients", "adjoint", "--json"], doc)
    b = run(["homology", "--coefficients", "adjoint", "--json"], doc)
    assert a[2] == b[2]
    assert "timing_seconds" not in json.loads(a[2])
    _, report, _, _ = run(["verify", "--group", "e", "--timing"], doc)
    assert report["timing_seconds"] >= 0


def test_document_goes_to_stdout_report_to_stderr():
    _, _, out, err = run(["example", "abelian", "--n", "2"])
    assert json.loads(out)["dim"] == 2
    assert err.startswith("$ homlie example")


def test_main(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(dump_algebra(families.abelian(1))))
    assert main(["verify", "--group", "s3"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_algebra_document_is_sparse():
    A, _ = families.sl_n(3)
    doc = algebra_document(A)
    assert len(doc["structure"]) == sum(1 for _ in A.entries())
    assert all(e["value"] != "0" for e in doc["structure"])
