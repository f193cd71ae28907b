import json

import pytest

from ctau.cli import main


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv("CTAU_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_audit_einf(capsys):
    code, doc = run_json(capsys, "audit", "--kind", "einf-exist", "--nmax", "64")
    assert code == 0 and doc["report"]["all_zero"] is True


@pytest.mark.parametrize("kind", ["ainf-exist", "ainf-unique", "einf-unique", "moore-ainf", "moore-einf"])
def test_audit_symbolic(capsys, kind):
    code, doc = run_json(capsys, "audit", "--kind", kind, "--nmax", "16", "--symbolic")
    assert code == 0
    assert doc["certificates"] and all(c["ok"] for c in doc["certificates"])


def test_bp_ext(capsys):
    code, doc = run_json(capsys, "bp-ext", "--tmax", "12", "--fmax", "3")
    assert code == 0
    row = next(r for r in doc["rows"] if (r["f"], r["t"]) == (0, 0))
    assert row["free_rank"] == 1 and row["torsion"] == []


def test_bp_ext_bad_bounds(capsys):
    assert main(["bp-ext", "--tmax", "4", "--fmax", "2"]) == 2


def test_hopf_verify(capsys):
    code, doc = run_json(capsys, "hopf-verify", "--variant", "dual-a-mod-tau-beta", "--degree", "12")
    assert code == 0 and doc["report"]["ok"]


def test_massey(capsys):
    code, doc = run_json(capsys, "massey", "--algebra", "A1", "--classes", "tau", "h1^3", "h0")
    assert code == 0
    assert doc["tridegree"] == [3, 7, 2] and doc["nonzero"] and doc["indeterminacy_dimension"] == 0


def test_massey_undefined_fails(capsys):
    code, doc = run_json(capsys, "massey", "--algebra", "A1", "--classes", "h0", "h0", "h1")
    assert code == 1 and "undefined" in doc["error"]


def test_algebroid(capsys):
    code, doc = run_json(capsys, "algebroid", "--k", "2", "--tmax", "12", "--verify")
    assert code == 0 and doc["right_unit"][0] == "v1 + 2 t1" and doc["report"]["ok"]


def test_vanishing(capsys):
    code, doc = run_json(capsys, "vanishing", "--predicate", "pi", "--grid", "-1", "1", "-1", "1")
    zero = {(z["s"], z["w"]) for z in doc["zero"]}
    assert code == 0
    assert (0, 0) not in zero and (1, 1) not in zero and (-1, 0) in zero and (0, 1) in zero


def test_a1_ext_and_emit(capsys, tmp_path):
    code, doc = run_json(capsys, "a1-ext", "--stems", "8", "--fmax", "4", "--emit", str(tmp_path / "out"))
    assert code == 0
    names = {e["name"] for e in doc["chart"]["entries"]}
    assert {"a", "b", "h1^3"} <= names
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == ["a1-ext.json", "a1-ext.svg", "a1-ext.tsv"]


def test_kq_ct(capsys, tmp_path):
    code, doc = run_json(capsys, "kq-ct", "--emit", str(tmp_path))
    assert code == 0
    assert doc["presentation"] == "Z2hat[eta, v1^2] / (2*eta = 0)"
    assert all(doc["checks"].values())
    assert "stroke-dasharray" in (tmp_path / "kq-ct.svg").read_text()


def test_emitted_bytes_stable(capsys, tmp_path):
    for d in ("x", "y"):
        main(["a1-ext", "--stems", "6", "--fmax", "3", "--no-cache", "--emit", str(tmp_path / d)])
    capsys.readouterr()
    for ext in ("json", "tsv", "svg"):
        assert (tmp_path / "x" / f"a1-ext.{ext}").read_bytes() == (tmp_path / "y" / f"a1-ext.{ext}").read_bytes()


def test_config_with_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tmax": 8, "fmax": 2}))
    code, doc = run_json(capsys, "bp-ext", "--config", str(cfg), "--fmax", "1")
    assert code == 0
    assert max(r["t"] for r in doc["rows"]) == 8
    assert max(r["f"] for r in doc["rows"]) == 1


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["bp-ext", "--config", str(cfg)]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["bp-ext", "--bogus"],
        ["audit", "--nmax", "8"],
        ["audit", "--kind", "einf-exist", "--nmax", "3"],
        ["audit", "--kind", "nope", "--nmax", "8"],
        ["vanishing", "--grid", "3", "1", "0", "0"],
        ["hopf-verify", "--variant", "nope"],
        ["massey", "--algebra", "A2", "--classes", "h0", "h1", "h0"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
