import json
import shutil

import pytest

from spectra.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_prints_prefix(capsys):
    code, out, err = run_cli(capsys, "gen", "fibonacci", "-n", "13")
    assert code == 0
    assert out.strip() == "0100101001001"


def test_complexity_reports_profile(capsys):
    code, out, _ = run_cli(capsys, "complexity", "thue_morse", "--up-to", "10")
    assert code == 0
    payload = json.loads(out)
    assert payload["profile"][10] == 28
    assert payload["guarantee"] in ("exact", "stabilized")


def test_per_lists_roots(capsys):
    code, out, _ = run_cli(capsys, "per", "run_doubling")
    assert code == 0
    assert json.loads(out)["roots"] == ["0", "1"]


def test_radical_verdict(capsys):
    code, out, _ = run_cli(capsys, "radical", "fibonacci", "0")
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["kind"] == "not_in_radical"
    assert verdict["failing_n"] == 2


def test_radical_requires_pattern_or_complement(capsys):
    code, _, err = run_cli(capsys, "radical", "fibonacci")
    assert code == 2
    assert "pattern" in err


def test_radical_complement(capsys):
    code, out, _ = run_cli(capsys, "radical", "chain", "--complement",
                           "--bound", "2")
    assert code == 0
    payload = json.loads(out)["complement"]
    assert payload["words"] == ["0", "00"]
    assert set(payload["in_radical"]) == {"1", "01", "10"}


def test_poset_dot_output(capsys):
    code, out, _ = run_cli(capsys, "poset", "chain", "--dot")
    assert code == 0
    assert out.startswith("digraph")
    assert '"chain" -> "per:0"' in out


def test_topology_payload(capsys):
    code, out, _ = run_cli(capsys, "topology", "periodic01")
    assert code == 0
    payload = json.loads(out)
    assert payload["points"]["closed_points"] == ["per:01"]
    assert payload["axioms"]["ok"]


def test_bounds_payload(capsys):
    code, out, _ = run_cli(capsys, "bounds", "zeros")
    assert code == 0
    payload = json.loads(out)
    assert payload["bounds"]["ok"]
    assert payload["bounds"]["c_star"] == "1/50"


def test_unknown_word_is_a_usage_error(capsys):
    code, _, err = run_cli(capsys, "gen", "nope")
    assert code == 2
    assert "unknown corpus word" in err


def test_missing_corpus_is_a_usage_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "--corpus", str(tmp_path / "nowhere"),
                           "gen", "fibonacci")
    assert code == 2
    assert "manifest" in err


def test_json_output_is_byte_stable(capsys):
    _, first, _ = run_cli(capsys, "bounds", "ones")
    _, second, _ = run_cli(capsys, "bounds", "ones")
    assert first == second


def test_verify_single_criterion(capsys):
    code, out, _ = run_cli(capsys, "verify", "--criterion",
                           "oracle-equivalence")
    assert code == 0
    assert out.startswith("PASS oracle-equivalence")


@pytest.fixture()
def corpus_copy(corpus, tmp_path):
    dst = tmp_path / "corpus"
    shutil.copytree(corpus.path, dst)
    return dst


def test_tampered_manifest_fails_verification(capsys, corpus_copy):
    path = corpus_copy / "manifest.json"
    data = json.loads(path.read_text())
    data["words"]["fibonacci"]["expected"]["profile"]["10"] = 12
    path.write_text(json.dumps(data, indent=2, sort_keys=True))
    code, out, _ = run_cli(capsys, "--corpus", str(corpus_copy),
                           "verify", "--criterion", "profile-identity")
    assert code == 1
    assert out.startswith("FAIL profile-identity")
    assert "pinned 12" in out


def test_tampered_spec_fails_verification(capsys, corpus_copy, monkeypatch):
    spec_path = corpus_copy / "periodic01.json"
    spec_path.write_text(json.dumps({"type": "periodic", "period": "011"}))
    monkeypatch.setenv("SPECTRA_CORPUS", str(corpus_copy))
    code, out, _ = run_cli(capsys, "verify",
                           "--criterion", "oracle-equivalence")
    assert code == 1
    assert out.startswith("FAIL oracle-equivalence")
    assert "periodic01" in out


def test_verify_json_mode(capsys):
    code, out, _ = run_cli(capsys, "verify", "--criterion",
                           "union-witness", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["criteria"][0]["id"] == "union-witness"
