from __future__ import annotations

import json

import pytest

from tenscat import cli, io
from tenscat.hopf import sweedler_algebra
from tenscat.hopf.algebra import mutated_copy


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


# -- exit codes -----------------------------------------------------------------------------

def test_algebra_check_passes(capsys):
    code, doc = structured(capsys, "algebra", "check", "--builtin", "sweedler")
    assert code == 0 and doc["verdict"] == "pass"


def test_taft_with_parameter(capsys):
    code, doc = structured(capsys, "algebra", "check", "--builtin", "taft", "--n", "3")
    assert code == 0 and doc["meta"]["dim"] == 9


def test_z6_counterexample_exits_one(capsys):
    code, doc = structured(capsys, "verify", "z6-counterexample")
    assert code == 1
    assert doc["meta"]["reproduced"] is True


def test_kunneth_over_integers_exits_one(capsys):
    code, doc = structured(capsys, "verify", "kunneth", "--builtin", "z")
    assert code == 1
    assert [c["data"]["degree"] for c in doc["cases"] if c["verdict"] == "fail"] == [-1]


def test_kunneth_over_sweedler_exits_zero(capsys):
    code, _ = structured(capsys, "verify", "kunneth", "--builtin", "sweedler", "--cases", "5")
    assert code == 0


@pytest.mark.parametrize("suite", ["unit", "reduced", "dual-zigzag", "deviation", "a2-functor"])
def test_suites_pass(capsys, suite):
    code, doc = structured(capsys, "verify", suite, "--cases", "4")
    assert code == 0, doc


def test_aisle_suite_over_integers(capsys):
    code, doc = structured(capsys, "verify", "aisle", "--builtin", "z", "--cases", "10", "--seed", "1")
    assert code in (0, 1)
    assert doc["check"] == "monoidal-aisle"


def test_sign_is_not_trivial(capsys):
    code, doc = structured(capsys, "module", "iso", "--builtin", "C2", "--pick", "sign", "--pick", "trivial")
    assert code == 1
    assert doc["cases"][0]["verdict"] == "fail"


def test_sign_squared_is_trivial(capsys):
    code, doc = structured(capsys, "module", "tensor", "--builtin", "C2", "--pick", "sign", "--pick", "sign")
    assert code == 0
    cases = {c["id"]: c for c in doc["cases"]}
    assert cases["iso-to-trivial"]["data"]["is_trivial"] is True


def test_dual_of_taft_module(capsys):
    code, doc = structured(capsys, "module", "dual", "--builtin", "taft", "--n", "3", "--pick", "uniserial:1:2",
                           "--side", "right")
    assert code == 0 and doc["cases"][0]["data"]["composites"] == [True, True]


# -- input errors -----------------------------------------------------------------------------

def test_unknown_group_is_input_error(capsys):
    code, _, _ = run(capsys, "frobnicate", "x")
    assert code == 2


def test_unknown_suite_is_input_error(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown suite" in err


def test_negative_cases_rejected(capsys):
    code, _, _ = run(capsys, "verify", "kunneth", "--cases", "-1")
    assert code == 2


def test_modules_over_different_algebras(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["module", "show", "--builtin", "sweedler", "--pick", "trivial", "--out", str(a)]) == 0
    assert cli.main(["module", "show", "--builtin", "C3", "--pick", "trivial", "--out", str(b)]) == 0
    capsys.readouterr()
    code, _, err = run(capsys, "module", "tensor", "--input", str(a), "--input", str(b))
    assert code == 2 and "different algebras" in err


def test_malformed_file_is_input_error(capsys, tmp_path):
    path = tmp_path / "h.json"
    path.write_text("{ not json")
    code, _, err = run(capsys, "algebra", "check", "--input", str(path))
    assert code == 2 and "line 1" in err


def test_duals_need_rigid_backend(capsys):
    code, _, _ = run(capsys, "verify", "dual-zigzag", "--builtin", "a2")
    assert code == 2


def test_corrupted_algebra_file_fails_check(capsys, tmp_path):
    H = sweedler_algebra()
    bad = mutated_copy(H, "comult", (2 * 4 + 2, 2), delta=-1)
    path = tmp_path / "bad.json"
    path.write_text(io.dumps(io.hopf_to_json(bad)))
    code, doc = structured(capsys, "algebra", "check", "--input", str(path))
    assert code == 1
    assert doc["verdict"] == "fail"


# -- determinism and output files ------------------------------------------------------------------

def test_structured_output_is_byte_identical(capsys):
    argv = ("verify", "deviation", "--builtin", "taft", "--n", "3", "--cases", "6", "--seed", "7",
            "--format", "structured")
    assert cli.main(list(argv)) == 0
    first = capsys.readouterr().out
    assert cli.main(list(argv)) == 0
    assert capsys.readouterr().out == first


def test_random_complex_out_file_reparses(capsys, tmp_path):
    path = tmp_path / "x.json"
    assert cli.main(["complex", "random", "--builtin", "sweedler", "--seed", "3", "--out", str(path)]) == 0
    X = io.load(path)
    again = tmp_path / "y.json"
    assert cli.main(["complex", "random", "--builtin", "sweedler", "--seed", "3", "--out", str(again)]) == 0
    assert path.read_text() == again.read_text()
    assert io.complexes_equal(X, io.load(again))


def test_complex_pipeline(capsys, tmp_path):
    x, y, t = tmp_path / "x.json", tmp_path / "y.json", tmp_path / "t.json"
    cli.main(["complex", "random", "--builtin", "sweedler", "--seed", "1", "--out", str(x)])
    cli.main(["complex", "random", "--builtin", "sweedler", "--seed", "2", "--out", str(y)])
    capsys.readouterr()
    code, doc = structured(capsys, "complex", "tensor", "--input", str(x), "--input", str(y), "--out", str(t))
    assert code == 0
    T = io.load(t)
    assert (T.lo, T.hi) == (doc["cases"][0]["data"]["lo"], doc["cases"][0]["data"]["hi"])
    code, doc = structured(capsys, "complex", "dual", "--input", str(t))
    assert code == 0 and doc["cases"][0]["data"]["composites"] == [True, True]


def test_complexes_over_different_backends(capsys, tmp_path):
    x, y = tmp_path / "x.json", tmp_path / "y.json"
    cli.main(["complex", "random", "--builtin", "sweedler", "--out", str(x)])
    cli.main(["complex", "random", "--builtin", "z", "--out", str(y)])
    capsys.readouterr()
    code, _, err = run(capsys, "complex", "tensor", "--input", str(x), "--input", str(y))
    assert code == 2 and "different backends" in err


def test_text_output_mentions_verdict(capsys):
    code, out, _ = run(capsys, "verify", "z6-counterexample")
    assert code == 1 and "fail" in out.lower()
