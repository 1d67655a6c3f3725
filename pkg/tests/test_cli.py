"""Command-line interface behaviour and exit-status contract."""

import json

import pytest

from thermoident.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "D(2,1,4)")
    assert code == 0 and out.strip() == "-g1 / g2"


def test_expand_reduce(capsys):
    code, out, _ = run(capsys, "expand", "--reduce", "J(3,4;1,2)")
    assert code == 0 and out.strip() == "1"


def test_expand_second_derivative(capsys):
    code, out, _ = run(capsys, "expand", "DD(3,1,2;2,1)")
    assert code == 0 and out.strip() == "f12"


def test_expand_parse_error(capsys):
    code, _, err = run(capsys, "expand", "D(3,1,1)")
    assert code == 2 and "distinct" in err


def test_eval_cp_minus_cv(capsys):
    code, out, _ = run(
        capsys, "eval", "--model", "ideal", "--gamma", "5/3", "--at", "2,3", "cp - cv"
    )
    assert code == 0 and out.strip() == "1"


def test_eval_triple(capsys):
    code, out, _ = run(
        capsys, "eval", "--model", "ideal", "--gamma", "5/3", "--at", "2,3",
        "D(3,1,2)",
    )
    assert code == 0 and out.strip() == "3"


def test_eval_vdw_jacobian(capsys):
    code, out, _ = run(
        capsys, "eval", "--model", "vdw", "--a", "1", "--b", "1/2", "--gamma",
        "7/5", "--at", "2,3", "J(3,4;1,2)",
    )
    assert code == 0
    assert abs(float(out) - 1.0) < 1e-9


def test_eval_domain_error(capsys):
    code, _, err = run(
        capsys, "eval", "--model", "vdw", "--a", "1", "--b", "1/2", "--gamma",
        "7/5", "--at", "2,0.25", "cp",
    )
    assert code == 2 and "domain" in err


def test_maxwell_exit_zero(capsys):
    code, out, _ = run(capsys, "maxwell")
    assert code == 0 and "4/4 proved" in out


def test_maxwell_json(capsys):
    code, out, _ = run(capsys, "maxwell", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 4 and all(r["status"] == "proved" for r in data)


def test_verify_inline_proved(capsys):
    code, out, _ = run(capsys, "verify", "cp - cv = T * D(1,3,2) * D(2,3,1)")
    assert code == 0 and "status: proved" in out


def test_verify_inline_refuted_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "cp = cv")
    assert code == 1 and "status: refuted" in out


def test_verify_file(tmp_path, capsys):
    path = tmp_path / "identities.txt"
    path.write_text(
        "# Maxwell pair and the worked example\n"
        "D(3,1,4) = D(2,4,1)\n"
        "cp - cv = T * D(1,3,2) * D(2,3,1)\n"
    )
    code, out, _ = run(capsys, "verify", "--file", str(path))
    assert code == 0 and out.count("status: proved") == 2


def test_verify_file_json(tmp_path, capsys):
    path = tmp_path / "identities.txt"
    path.write_text("cp = cv\n")
    code, out, _ = run(capsys, "verify", "--json", "--file", str(path))
    assert code == 1
    data = json.loads(out)
    assert data[0]["status"] == "refuted"
    assert data[0]["residuals"]


def test_enumerate_counts(capsys):
    for kind, count in (("triples", 336), ("jacobians", 1680), ("seconds", 18816)):
        code, out, _ = run(capsys, "enumerate", kind)
        assert code == 0 and out.strip() == f"{kind}: {count}"


def test_enumerate_limit_streams_specs(capsys):
    code, out, _ = run(capsys, "enumerate", "triples", "--limit", "3")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[:3] == ["(1,2,3)", "(1,2,4)", "(1,2,5)"]
    assert lines[-1] == "triples: 336"


def test_groebner_relation_file(tmp_path, capsys):
    path = tmp_path / "relations.txt"
    path.write_text("vars: x y\nx^2 - 1\nx*y - 1\n")
    code, out, _ = run(capsys, "groebner", "--file", str(path))
    assert code == 0
    assert out.strip().splitlines() == ["y^2 - 1", "x - y"]


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seconds-sample", "20")
    assert code == 0
    assert "FAIL" not in out


@pytest.mark.slow
def test_discover_cross_checks(capsys):
    code, out, _ = run(capsys, "discover")
    assert code == 0
    assert "0 reference failures, 0 basis failures" in out
