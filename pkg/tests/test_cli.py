import json
import os
import subprocess
import sys

import pytest

from conftest import CORPUS, CORPUS_FILES, FIXTURES, ROOT
from xmodhom.cli import load_instance, main, parse_instance, serialize_instance
from xmodhom.errors import ParseError
from xmodhom.simplicial.nerve_complex import clear_memo

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def corpus(stem):
    return os.path.join(CORPUS, stem + ".xmod")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# parsing


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_round_trip(name):
    inst = load_instance(os.path.join(CORPUS, name))
    again = parse_instance(serialize_instance(inst), inst.name)
    assert again.fingerprint() == inst.fingerprint()
    assert list(again.coefficients) == list(inst.coefficients)
    assert serialize_instance(again) == serialize_instance(inst)


def test_fingerprint_ignores_layout():
    text = open(corpus("c2_in_c4")).read()
    noisy = "\n\n# extra comment\n" + text.replace("cyclic 2", "cyclic   2  # order")
    assert parse_instance(noisy).fingerprint() == parse_instance(text).fingerprint()


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        load_instance(os.path.join(FIXTURES, "dangling_coeff.xmod"))
    assert "line 17, column 11" in str(exc.value)
    assert "'Q'" in str(exc.value)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[group G]\ncyclic 2\n[xmod]\nt G\ng G\nmu 0 5\naction a\n", "out of range"),
        ("[group G]\ntable\n1 0\n0 1\n", "identity"),
        ("[bogus]\n", "section"),
        ("[group G]\ncyclic 2\n[budget]\nspeed 3\n", "budget"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert fragment in str(exc.value)


# validate


def test_validate_aspherical(capsys):
    code, out, _ = run(capsys, "validate", corpus("c2_in_c4"))
    assert code == EXIT_OK
    assert "pi_1 = Z/2" in out and "pi_2 = 0" in out and "aspherical = true" in out


def test_validate_k_z2_2(capsys):
    code, out, _ = run(capsys, "validate", corpus("z2_1_0"))
    assert code == EXIT_OK
    assert "pi_1 = 0" in out and "pi_2 = Z/2" in out and "aspherical = false" in out


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_validate_corpus(capsys, name):
    code, _, _ = run(capsys, "validate", os.path.join(CORPUS, name))
    assert code == EXIT_OK


def test_validate_peiffer_witness(capsys):
    code, out, err = run(capsys, "validate", os.path.join(FIXTURES, "s3_trivial_mu.xmod"))
    assert code == EXIT_FAIL
    assert "Peiffer" in out + err and "t=1" in out + err


def test_validate_dangling_coefficient(capsys):
    code, _, err = run(capsys, "validate", os.path.join(FIXTURES, "dangling_coeff.xmod"))
    assert code == EXIT_USAGE
    assert "parse error" in err and "line 17" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.xmod"))
    assert code == EXIT_USAGE


def test_precrossed_instance(capsys, tmp_path):
    p = tmp_path / "pre.xmod"
    p.write_text(
        "[group T]\nsymmetric 3\n[group G]\ntrivial\n[action triv]\nactor G\ncarrier T\ntrivial\n"
        "[xmod]\nkind precrossed\nt T\ng G\nmu 0 0 0 0 0 0\naction triv\ncoeffs Z2\n[coeff Z2]\nover G\norders 2\n"
    )
    code, out, _ = run(capsys, "validate", str(p))
    assert code == EXIT_OK, out
    code, _, err = run(capsys, "invariants", str(p), "--which", "der")
    assert code == EXIT_USAGE and "inapplicable" in err
    code, out, _ = run(capsys, "invariants", str(p), "--which", "eq", "--degree", "1")
    assert code == EXIT_OK
    assert "Z/2" in out


# invariants


def test_bh_degree4_on_k_z2_2(capsys):
    code, out, _ = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "4", "--coeff", "Z", "--format", "records")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert json.loads(lines[0]) == {"format": "xmodhom-records", "version": 1}
    rec = json.loads(lines[1])
    assert rec["torsion"] == [4] and rec["free_rank"] == 0
    assert list(rec) == ["instance", "invariant", "degree", "torsion", "free_rank", "route", "agreement", "wall_time"]


def test_der_on_group(capsys):
    code, out, _ = run(capsys, "invariants", corpus("one_c2_i"), "--which", "der", "--format", "records")
    assert code == EXIT_OK
    recs = [json.loads(x) for x in out.strip().splitlines()[1:]]
    assert recs and all(r["torsion"] == [] and r["free_rank"] == 0 for r in recs)


def test_dc_two_routes(capsys):
    code, out, _ = run(capsys, "invariants", corpus("c2_in_c4"), "--which", "dc", "--degree", "1", "--coeff", "Z2", "--format", "records")
    assert code == EXIT_OK
    rec = json.loads(out.strip().splitlines()[1])
    assert rec["route"] == "beta" and rec["agreement"] is True
    assert rec["torsion"] == [2, 2]


def test_unknown_coefficient(capsys):
    code, _, err = run(capsys, "invariants", corpus("c2_in_c4"), "--which", "dc", "--coeff", "Q")
    assert code == EXIT_USAGE


def test_budget_exceeded(capsys):
    code, _, err = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "4", "--budget", "3")
    assert code == EXIT_BUDGET and "budget" in err


def test_negative_degree(capsys):
    code, _, _ = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "-1")
    assert code == EXIT_USAGE


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["invariants"])
    assert exc.value.code == EXIT_USAGE


# verify


def test_verify_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "counterexample")
    assert code == EXIT_OK
    assert "Z/2" in out and "FAIL" not in out


def test_verify_theorem32_inapplicable(capsys):
    code, _, err = run(capsys, "verify", corpus("z2_1_0"), "--suite", "theorem32")
    assert code == EXIT_USAGE and "aspherical" in err


def test_verify_extensions(capsys):
    code, out, _ = run(capsys, "verify", corpus("one_c2_i"), "--suite", "extensions", "--coeff", "Z2")
    assert code == EXIT_OK
    assert "2 vs Z/2" in out


@pytest.mark.parametrize("suite", ["axioms", "degree0"])
def test_verify_cheap_suites_on_corpus(capsys, suite):
    for name in CORPUS_FILES:
        code, out, _ = run(capsys, "verify", os.path.join(CORPUS, name), "--suite", suite)
        assert code == EXIT_OK, out


def test_verify_splitting(capsys):
    code, out, _ = run(capsys, "verify", corpus("z2_c2_0"), "--suite", "splitting", "--coeff", "Z2", "--degree", "3")
    assert code == EXIT_OK, out
    code, _, _ = run(capsys, "verify", corpus("c2_in_c4"), "--suite", "splitting")
    assert code == EXIT_USAGE


def test_verify_needs_instance(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "degree0")
    assert code == EXIT_USAGE


# determinism and caching


def test_records_identical_with_and_without_cache(capsys, tmp_cache):
    argv = ["invariants", corpus("c2_in_c4"), "--which", "dc", "--degree", "1", "--format", "records"]
    clear_memo()
    _, cold, _ = run(capsys, *argv)
    clear_memo()
    _, fill, _ = run(capsys, *argv, "--cache-dir", tmp_cache)
    assert os.listdir(tmp_cache)
    clear_memo()
    _, warm, _ = run(capsys, *argv, "--cache-dir", tmp_cache)
    assert cold == fill == warm


def test_cache_dir_from_environment(capsys, tmp_cache, monkeypatch):
    monkeypatch.setenv("XMODHOM_CACHE_DIR", tmp_cache)
    clear_memo()
    code, _, _ = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "2")
    assert code == EXIT_OK
    assert os.listdir(tmp_cache)
    clear_memo()


def test_timing_only_on_request(capsys):
    _, out, _ = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "2", "--format", "records")
    assert all(json.loads(x).get("wall_time", "-") == "-" for x in out.strip().splitlines()[1:])
    _, out, _ = run(capsys, "invariants", corpus("z2_1_0"), "--which", "bh", "--degree", "2", "--format", "records", "--timing")
    assert all(json.loads(x)["wall_time"] != "-" for x in out.strip().splitlines()[1:])


def test_corpus_run(capsys):
    code, out, _ = run(capsys, "corpus-run", CORPUS, "--degree", "0", "--format", "records")
    assert code == EXIT_OK
    recs = [json.loads(x) for x in out.strip().splitlines()[1:]]
    assert {r["instance"] for r in recs} >= {"(C2<=C4,i)", "(Z/2,1,0)"}
    assert all(r["agreement"] is not False for r in recs)


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=os.path.join(ROOT, "src"))
    proc = subprocess.run(
        [sys.executable, "-m", "xmodhom", "validate", corpus("z4_onto_z2")], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0
    assert "pi_2 = Z/2" in proc.stdout
