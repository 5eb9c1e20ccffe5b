from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import FIXTURE_DIR, occ_fixtures
from occ.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from occ.formats import parse_occ


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURE_DIR / name


def test_classify_torus(capsys):
    code, out, _ = run(capsys, "classify", fx("fig07_torus.occ"), "--d", 2)
    assert code == EXIT_OK
    assert "VANISHES rule=GenusPositive" in out
    assert out.splitlines()[-1].startswith("overall: VANISHES")


def test_classify_json_mirrors_text(capsys):
    _, text, _ = run(capsys, "classify", fx("two_components.occ"), "--d", 2)
    _, raw, _ = run(capsys, "classify", fx("two_components.occ"), "--d", 2, "--json")
    data = json.loads(raw)
    assert len(data["components"]) == len(text.splitlines()) - 1
    for comp, line in zip(data["components"], text.splitlines()):
        assert comp["verdict"] in line
        assert (comp["rule"] or comp["btype"]) in line
        assert comp["citation"] in line
    assert data["overall"]["rule"] == "GenusPositive"


def test_strict_dims_can_make_verdicts_inconclusive(capsys, tmp_path):
    f = tmp_path / "x.occ"
    f.write_text("brane L dim 2 chi 0\ncomponent genus 0\ncircle closed in\ncircle closed out\ncircle arcs free L, open out\n")
    _, out, _ = run(capsys, "classify", f, "--d", 2)
    assert "VANISHES" in out
    _, out, _ = run(capsys, "classify", f, "--d", 2, "--strict-dims")
    assert "INCONCLUSIVE" in out


def test_sew_writes_result(capsys, tmp_path):
    target = tmp_path / "torus.occ"
    code, out, _ = run(
        capsys, "sew", fx("copants_phi.occ"), fx("pants_mu.occ"), "--plan", fx("both.plan"), "-o", target
    )
    assert code == EXIT_OK
    assert "component genus 1" in out
    c = parse_occ(target.read_text())
    assert c.components[0].genus == 1


def test_sew_bad_plan_fails(capsys):
    code, out, _ = run(capsys, "sew", fx("strip.occ"), fx("strip.occ"), "--plan", fx("both.plan"))
    assert code == EXIT_FAIL
    assert "plan mismatch" in out


def test_eval_shadow_and_assignment_agree(capsys):
    _, a, _ = run(capsys, "eval", fx("copants_phi.occ"), "--model", "shadow", "--d", 2, "--chi-M", 2)
    _, b, _ = run(capsys, "eval", fx("copants_phi.occ"), "--assignment", fx("shadow_d2.assign"))
    assert a == b
    assert "u -> 2*c(x)c" in a


def test_eval_requires_shadow_parameters(capsys):
    code, _, err = run(capsys, "eval", fx("copants_phi.occ"), "--model", "shadow")
    assert code == EXIT_USAGE and "occ: error" in err


def test_verify_transfers(capsys):
    code, out, _ = run(capsys, "verify-transfers", "--model", "s2", "--embedding", "diagonal")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "identities 1..9: PASS"
    assert "identity 7: PASS" in out and "(trivial)" in out
    code, out, _ = run(
        capsys, "verify-transfers", "--embedding-file", fx("circle_in_torus.emb"), "--json"
    )
    assert code == EXIT_OK and json.loads(out)["passed"] is True


def test_enumerate_reports_survivors(capsys):
    code, out, _ = run(capsys, "enumerate", "--bound", 3)
    assert code == EXIT_OK
    assert "counterexamples: 0" in out
    assert "survivors (q,s) with g=w=t=0: (0,1) (1,0) (2,0)" in out


def test_canonical_is_idempotent(capsys, tmp_path):
    _, once, _ = run(capsys, "canonical", fx("fig13_comodule.occ"))
    f = tmp_path / "c.occ"
    f.write_text(once)
    _, twice, _ = run(capsys, "canonical", f)
    assert once == twice


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "/nonexistent.occ", "--d", "2"],
        ["enumerate", "--bound", "1"],
        ["verify-transfers", "--model", "k3"],
        ["verify-transfers", "--embedding", "knot"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err.startswith("occ: error:")


def test_syntax_error_location(capsys, tmp_path):
    f = tmp_path / "bad.occ"
    f.write_text("brane K dim 0 chi 2\ncomponent genus zero\n")
    code, _, err = run(capsys, "invariants", f)
    assert code == EXIT_USAGE
    assert f"{f}:2:17:" in err


def test_invalid_cobordism_fails(capsys, tmp_path):
    f = tmp_path / "neg.occ"
    f.write_text("brane K dim 0 chi 2\ncomponent genus -1\ncircle closed out\n")
    code, out, _ = run(capsys, "classify", f, "--d", 2)
    assert code == EXIT_FAIL and "NegativeGenus" in out


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize("name", occ_fixtures())
def test_invariants_on_every_fixture(capsys, name):
    code, out, _ = run(capsys, "invariants", fx(name))
    assert code == EXIT_OK and out.count("chi=") >= 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "occ", "classify", str(fx("fig01_type_i.occ")), "--d", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert "type=I" in res.stdout
