import io
import json

import pytest

from lhsimplex.cli import fixture_path, main, parse_range, parse_s
from lhsimplex.errors import DomainError
from lhsimplex.triangulation import dumps, load


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def test_parse_helpers():
    assert parse_s("3, 5,2") == (3, 5, 2)
    assert list(parse_range("5..7")) == [5, 6, 7]
    with pytest.raises(DomainError):
        parse_s("3,x")


def test_ehrhart_plain():
    code, out = run("ehrhart", "--s", "1,2,3")
    assert code == 0
    assert "t^3 + 3t^2 + 3t + 1" in out and "h* = (1, 4, 1, 0)" in out


def test_ehrhart_negative_coefficient_json():
    code, out = run("ehrhart", "--s", "16,16,16,16,17", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["ehrhart"]["descending"].endswith("- 119/15 t + 1")
    assert data["ehrhart"]["coefficients"][1] == "-119/15"
    assert data["negative_coefficients"] == {"1": "-119/15"}


def test_json_is_byte_stable():
    assert run("ehrhart", "--s", "3,5,2", "--format", "json") == run("ehrhart", "--s", "3,5,2", "--format", "json")


@pytest.mark.parametrize("method", ["enumerate", "oracle", "recursive"])
def test_ehrhart_methods(method):
    code, out = run("ehrhart", "--s", "2,2,3", "--method", method, "--format", "json")
    assert code == 0
    assert json.loads(out)["hstar"] == json.loads(run("ehrhart", "--s", "2,2,3", "--format", "json")[1])["hstar"]


def test_eulerian_csv():
    code, out = run("eulerian", "--s", "1,2,3", "--format", "csv")
    assert code == 0 and "4" in out


def test_exit_codes():
    assert run("ehrhart", "--s", "10,10,10", "--method", "enumerate", "--cap", "5")[0] == 2
    assert run("beta", "--n", "8", "--a-max", "5")[0] == 3
    assert run("asymptotic", "--n", "4")[0] == 4
    assert run("ehrhart", "--s", "0,1")[0] == 4
    assert run("triangulate", "--s", "3,5,2")[0] == 5


def test_beta_and_asymptotic():
    assert run("beta", "--n", "6")[1].strip() == "19"
    code, out = run("asymptotic", "--n", "6", "--format", "json")
    assert code == 0 and "-1/1440" in out


def test_identities():
    for which, extra in [("lemma-eulerian", ["--n", "5..20"]), ("e3", ["--n", "0..12", "--l", "0..8"]), ("lambda", [])]:
        code, out = run("identities", "--which", which, *extra)
        assert code == 0 and "pass" in out


def test_triangulate_verify_roundtrip(tmp_path):
    cert = tmp_path / "c.json"
    code, _ = run("triangulate", "--s", "2,3,4", "--out", str(cert), "--format", "json")
    assert code == 0
    first = cert.read_text()
    run("triangulate", "--s", "2,3,4", "--out", str(cert))
    assert cert.read_text() == first
    code, out = run("verify", "--cert", str(cert), "--checks", "valid,unimodular,flag,regular", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["all_pass"]


def test_verify_fixture_and_mutation(tmp_path):
    code, out = run("verify", "--cert", "fixtures/p352.json", "--checks", "valid,unimodular,flag,regular", "--method", "pairwise")
    assert code == 0 and "FAIL" not in out
    cert = tmp_path / "bad.json"
    t = json.loads(dumps(load(fixture_path("fixtures/p352.json"))))
    t["heights"] = ["0"] * len(t["heights"])
    cert.write_text(json.dumps(t))
    code, out = run("verify", "--cert", str(cert), "--checks", "valid,regular")
    assert code == 1 and "regular: FAIL" in out and "valid: pass" in out
