import json

import pytest
from click.testing import CliRunner

from medialq import harness
from medialq.cli import main
from medialq.quandle import alexander_quandle, dihedral_quandle, has_tilde_equivalence, is_medial


@pytest.fixture
def run():
    r = CliRunner()
    return lambda *args: r.invoke(main, [str(a) for a in args])


def test_erratum_verdict():
    v = harness.erratum_report()
    assert v.passed
    assert v.stats["observed_count"] == 9 and v.stats["observed_phi"] == {1: 3, 3: 6}
    assert v.stats["matches_stated"] is False
    assert v.to_json()["pass"] is True


def test_quick_claims_pass():
    qs = [dihedral_quandle(3), alexander_quandle(5, "3,1"), alexander_quandle(4, "1,1")]
    assert harness.verify_lemma_1(qs).passed
    assert harness.verify_theorem_5_1(strands=3, moves=4, quandles=qs).passed
    assert harness.verify_prop_4_4(qs).passed
    assert harness.verify_prop_4_5(2, qs).passed
    for which in ("7.1", "7.2", "7.3"):
        assert harness.verify_section_7(which, quandles=qs).passed


def test_universes():
    alex = harness.all_alexander(8)
    assert all(q.n <= 8 for q in alex)
    assert len(harness.alexander_catalog(8)) > 10
    assert all(is_medial(q) for q in harness.medial_universe())
    assert all(has_tilde_equivalence(q) for q in harness.medial_universe(tilde=True))


def test_workers_env(monkeypatch):
    monkeypatch.setenv("MEDIALQ_WORKERS", "3")
    assert harness.workers() == 3
    monkeypatch.setenv("MEDIALQ_WORKERS", "")
    assert harness.workers() == 1


def test_verdicts_json_serialises_int_keys():
    out = json.loads(harness.verdicts_json([harness.erratum_report()]))
    assert out[0]["stats"]["observed_phi"] == {"1": 3, "3": 6}


def test_cli_quandle(run, tmp_path):
    r = run("quandle", "dihedral", "--n", 3)
    assert r.exit_code == 0
    f = tmp_path / "q.txt"
    f.write_text(r.output)
    r = run("quandle", "check", f)
    d = json.loads(r.output)
    assert d["valid"] and d["medial"] and d["tilde_equivalence"]
    f.write_text("2\n0 1\n0 1\n")
    r = run("quandle", "check", f)
    assert r.exit_code == 1 and json.loads(r.output)["axiom"] == 2
    assert json.loads(run("quandle", "enumerate", "--n", 4).output)["count"] == 7
    r = run("quandle", "alexander", "--n", 2, "--h", "1,1,1", "--json")
    assert json.loads(r.output)["n"] == 4


def test_cli_link_and_color(run, tmp_path):
    f = tmp_path / "trefoil.txt"
    f.write_text(run("link", "gen", "trefoil").output)
    d = json.loads(run("color", "count", "--link", f, "--quandle", "dihedral:3").output)
    assert d == {"count": 9}
    d = json.loads(run("color", "phi", "--link", f, "--quandle", "alexander:3:1,1").output)
    assert d["phi"] == {"1": 3, "3": 6}
    r = run("color", "phi", "--link", f, "--quandle", "dihedral:3", "--format", "csv")
    assert r.output.splitlines() == ["image_size,count", "1,3", "3,6"]
    d = json.loads(run("color", "oracle", "--link", f, "--quandle", "dihedral:3").output)
    assert d["count"] == 9
    assert run("color", "list", "--link", f, "--quandle", "dihedral:3", "--limit", 2).exit_code != 0
    rel = run("link", "relations", f).output.splitlines()
    assert len(rel) == 3
    k = tmp_path / "k.txt"
    k.write_text(run("link", "rmove", f, "--move", "r1", "--site", "a,1").output)
    assert json.loads(run("color", "count", "--link", k, "--quandle", "dihedral:3").output)["count"] == 9
    j = tmp_path / "a1.json"
    j.write_text(run("link", "gen", "allen-swenberg", "--n", 1, "--json").output)
    assert json.loads(run("color", "count", "--link", j, "--quandle", "dihedral:3").output)["count"] == 3


def test_cli_tangle(run, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(run("tangle", "random", "--moves", 4, "--seed", 7).output)
    assert run("tangle", "verify", f).exit_code == 0
    r = run("tangle", "thm51", f, "--all-medial-upto", 3)
    assert r.exit_code == 0 and json.loads(r.output)["pass"]
    r = run("tangle", "thm51", f, "--quandle", "dihedral:3")
    assert r.exit_code == 0
    c = tmp_path / "c.txt"
    c.write_text(run("tangle", "close", f).output)
    assert json.loads(run("color", "count", "--link", c, "--quandle", "dihedral:5").output)["count"] == 5
    k = tmp_path / "k.txt"
    k.write_text(run("link", "gen", "kom", "--tangle", f).output)
    assert json.loads(run("color", "count", "--link", k, "--quandle", "dihedral:3").output)["count"] == 3


def test_cli_verify(run):
    r = run("verify", "erratum")
    assert r.exit_code == 0
    assert json.loads(r.stdout)[0]["claim"] == "erratum2.1"
    r = run("verify", "lemma1")
    assert r.exit_code == 0 and json.loads(r.stdout)[0]["pass"]
