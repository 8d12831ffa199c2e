import hashlib
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from conftest import GRID
from rees_uniform.cli import main, polynomial_from_json, polynomial_to_json
from rees_uniform.uniform import reduction_data, rees_generators


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_params():
    code, out = run("params", "--n", "3", "--a", "7", "--b", "3")
    assert code == 0
    d = json.loads(out)["params"]
    assert (d["case"], d["p"], d["r"]) == ("J", 3, 2)
    code, out = run("params", "--n", "2", "--a", "5", "--b", "2")
    d = json.loads(out)["params"]
    assert (d["case"], d["r"]) == ("Q", 1)
    assert run("params", "--n", "2", "--a", "4", "--b", "2")[0] == 2
    code, out = run("params", "--n", "3", "--a", "7", "--b", "3", "--format", "text")
    assert "case J" in out


def test_gens():
    code, out = run("gens", "--n", "2", "--a", "5", "--b", "2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[-1].split(None, 1) == ["H2^1,2", "x1*x2*w^2 - y1*y2"]
    code, out = run("gens", "--n", "3", "--a", "7", "--b", "3", "--format", "json")
    p = reduction_data(3, 7, 3)
    parsed = [polynomial_from_json(g["poly"], p.ring) for g in json.loads(out)["generators"]]
    assert parsed == rees_generators(p)


@pytest.mark.parametrize("n,a,b", GRID[::4])
def test_json_roundtrip_all_generators(n, a, b):
    p = reduction_data(n, a, b)
    for g in rees_generators(p):
        text = json.dumps(polynomial_to_json(g))
        assert polynomial_from_json(json.loads(text), p.ring) == g


@given(st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 5),
                          st.fractions(max_denominator=7).filter(bool)), max_size=5))
def test_json_roundtrip_rational(terms):
    p = reduction_data(2, 5, 2)
    from rees_uniform.poly import Polynomial
    f = Polynomial(p.ring, terms)
    assert polynomial_from_json(json.loads(json.dumps(polynomial_to_json(f))), p.ring) == f


@pytest.mark.parametrize("bad", [
    {"vars": {"n": 2}, "terms": [{"c": "1.5", "e": [0, 0, 0, 0, 0]}]},
    {"vars": {"n": 2}, "terms": [{"c": "1", "e": [0, 0, 0, 0]}]},
    {"vars": {"n": 2}, "terms": [{"c": "0", "e": [0, 0, 0, 0, 0]}]},
    {"vars": {"n": 2}, "terms": [{"c": "1", "e": [0, 0, 0, 0, 0]}, {"c": "1", "e": [0, 0, 0, 0, 1]}]},
    {"terms": []},
])
def test_json_rejects(bad):
    with pytest.raises(ValueError):
        polynomial_from_json(bad)


def test_verify_point():
    code, out = run("verify", "--n", "3", "--a", "7", "--b", "3", "--suite", "all")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == ["params", "claims"]
    assert all(c["status"] in ("pass", "skipped") for c in rep["claims"])
    code, out = run("verify", "--n", "2", "--a", "5", "--b", "2")
    assert code == 1
    code, out = run("verify", "--n", "3", "--a", "7", "--b", "3", "--suite", "gb", "--timing")
    assert all("ms" in c for c in json.loads(out)["claims"])


def test_verify_grid(tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("# small grid\n3 7 3\n3 5 2\n4 9 3\n")
    code, out = run("verify", "--grid", str(grid), "--suite", "acm", "--jobs", "2")
    assert code == 0
    reps = json.loads(out)
    assert [r["params"]["a"] for r in reps] == [7, 5, 9]
    code, out = run("verify", "--grid", str(grid), "--suite", "acm", "--format", "text")
    assert code == 0 and len(out.strip().splitlines()) == 4
    grid.write_text("3 7 3\n2 4 2\n")
    code, out = run("verify", "--grid", str(grid), "--suite", "acm")
    assert code == 2
    assert "a > 2b" in json.loads(out)[1]["error"]


def test_verify_cap_exit():
    code, _ = run("verify", "--n", "4", "--a", "9", "--b", "2", "--suite", "gen", "--max-basis", "30")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["verify", "--bogus"],
    ["verify", "--n", "3"],
    ["verify", "--n", "x", "--a", "7", "--b", "3"],
    ["gens"],
    [],
    ["verify", "--grid", "/nonexistent/grid"],
    ["verify", "--n", "3", "--a", "7", "--b", "3", "--jobs", "0"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 64


def test_oracle():
    code, out = run("oracle", "--n", "2", "--a", "5", "--b", "2")
    assert code == 0
    gens = json.loads(out)["generators"]
    # K12 is redundant for n = 2; see test_groebner.test_oracle_252
    assert len(gens) == 3
    code, out = run("oracle", "--n", "3", "--a", "7", "--b", "3", "--format", "text")
    p = reduction_data(3, 7, 3)
    ours = {g.monic().to_text() for g in rees_generators(p)}
    assert set(out.strip().splitlines()) == ours
    assert run("oracle", "--n", "5", "--a", "20", "--b", "9")[0] == 3


def test_cli_subprocess_deterministic():
    cmd = [sys.executable, "-m", "rees_uniform", "oracle", "--n", "3", "--a", "7", "--b", "3"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert hashlib.sha256(outs[0]).digest() == hashlib.sha256(outs[1]).digest()
    cmd = [sys.executable, "-m", "rees_uniform", "verify", "--n", "3", "--a", "7", "--b", "3"]
    outs = [subprocess.run(cmd, capture_output=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    r = subprocess.run([sys.executable, "-m", "rees_uniform", "verify", "--bogus"], capture_output=True)
    assert r.returncode == 64
