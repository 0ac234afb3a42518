import io
import json
import subprocess
import sys

import pytest

from rainbow_spectra.certificates import CertificateDocument, CertificateFormatError, Check
from rainbow_spectra.cli import run
from rainbow_spectra.search import COMPACT_K22


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--json", *argv)
    return code, json.loads(out) if out else None


def test_semigroup_conductor():
    code, doc = call_json("semigroup", "--gens", "14,38,108", "--conductor-step", "2")
    assert code == 0
    assert doc["result"]["conductor"] == 216
    assert doc["command"] == "semigroup" and doc["schema_version"] == "1"


def test_semigroup_members_and_period():
    code, doc = call_json("semigroup", "--gens", "3,5", "--monoid", "--period", "--bound", "6")
    assert code == 0
    assert doc["result"]["members"] == [0, 3, 5, 6]
    assert doc["result"]["period"] == 1


def test_semigroup_bad_step_fails_check():
    code, doc = call_json("semigroup", "--gens", "4,6", "--conductor-step", "3")
    assert code == 1
    assert doc["checks"][0]["passed"] is False


def test_semigroup_usage_errors():
    assert call("semigroup", "--gens", "0,3")[0] == 2
    assert call("semigroup", "--gens", "a,b")[0] == 2
    assert call("semigroup")[0] == 2


def test_spectrum():
    code, doc = call_json("spectrum", "--n", "6", "--limit", "30")
    assert code == 0 and doc["result"]["members"] == [2, 6, 10, 14, 18, 22, 26, 30]
    code, doc = call_json("spectrum", "--n", "16", "--verify-main")
    assert code == 0 and doc["result"]["main_bound"] == 614
    assert call("spectrum", "--n", "2")[0] == 2
    assert call("spectrum", "--n", "16", "--limit", "100", "--verify-main")[0] == 2


def test_lemmas():
    code, doc = call_json("lemmas", "--n", "14", "--case", "even")
    assert code == 0 and all(c["passed"] for c in doc["checks"])
    code, doc = call_json("lemmas", "--n", "16", "--case", "div4")
    assert code == 0 and [f["length"] for f in doc["result"]["families"]] == [15, 9]
    assert call("lemmas", "--n", "10", "--case", "even")[0] == 2
    assert call("lemmas", "--n", "14", "--case", "div4")[0] == 2


def test_construct():
    code, doc = call_json("construct", "--case", "even", "--n", "16")
    assert code == 0 and doc["result"]["certificate"]["valid"]
    code, doc = call_json("construct", "--case", "div4", "--k", "11")
    assert code == 0 and doc["result"]["trace"]["r"] == 3
    code, doc = call_json("construct", "--case", "div4", "--k", "12")
    assert code == 1 and doc["checks"][0]["name"] == "inequalities"
    assert call("construct", "--case", "div4", "--n", "30")[0] == 2
    assert call("construct", "--case", "even", "--k", "3")[0] == 2


def test_search():
    code, doc = call_json("search", "--case", "div4", "--k", "4", "--exhaustive", "--quiet")
    assert code == 0 and doc["result"]["status"] == "none"
    code, doc = call_json("search", "--case", "div4", "--k", "5", "--quiet")
    assert code == 0 and doc["result"]["certificate"]["valid"]
    code, doc = call_json("search", "--case", "div4", "--k", "4", "--budget", "10", "--quiet")
    assert code == 1 and doc["result"]["status"] == "budget-exhausted"


def test_verify_sources(tmp_path):
    code, doc = call_json("verify", "--case", "div4", "--k", "22", "--compact", COMPACT_K22)
    assert code == 0 and doc["result"]["valid"]
    code, doc = call_json("verify", "--case", "even", "--n", "12",
                          "--vertices", "0,11,12,13,14,15,16,23,2,9,20,27")
    assert code == 0
    code, doc = call_json("verify", "--case", "even", "--n", "12",
                          "--vertices", "0,11,12,13,14,15,16,23,2,9,27,20")
    assert code == 1 and not doc["result"]["valid"]
    code, doc = call_json("verify", "--case", "div4", "--k", "22", "--compact", "0 →1 1 →1 3")
    assert code == 1 and doc["checks"][0]["name"] == "parse"
    text = tmp_path / "k22.txt"
    text.write_text(COMPACT_K22, encoding="utf-8")
    assert call("verify", "--case", "div4", "--k", "22", "--file", str(text))[0] == 0
    assert call("verify", "--case", "div4", "--k", "22")[0] == 2


def test_verify_file_round_trip(tmp_path):
    code, out, _ = call("construct", "--case", "even", "--n", "20", "--json")
    assert code == 0
    path = tmp_path / "cert.json"
    path.write_text(out, encoding="utf-8")
    code, doc = call_json("verify", "--case", "even", "--n", "20", "--file", str(path))
    assert code == 0 and doc["result"]["valid"]
    # a document with an unknown field is rejected as a parse failure
    data = json.loads(out)
    data["extra"] = 1
    path.write_text(json.dumps(data), encoding="utf-8")
    code, doc = call_json("verify", "--case", "even", "--n", "20", "--file", str(path))
    assert code == 1 and doc["checks"][0]["name"] == "parse"


def test_document_round_trip_and_rejection():
    doc = CertificateDocument("demo", {"n": 3}, {"x": [1, 2]}, (Check("a", True), Check("b", False, "why")))
    back = CertificateDocument.from_json(doc.to_json())
    assert back == doc and not back.passed
    data = doc.to_dict()
    data["checks"][0]["bonus"] = True
    with pytest.raises(CertificateFormatError):
        CertificateDocument.from_dict(data)
    data = doc.to_dict()
    del data["result"]
    with pytest.raises(CertificateFormatError):
        CertificateDocument.from_dict(data)
    data = doc.to_dict()
    data["schema_version"] = "99"
    with pytest.raises(CertificateFormatError):
        CertificateDocument.from_dict(data)
    with pytest.raises(CertificateFormatError):
        CertificateDocument.from_json("{not json")
    with pytest.raises(CertificateFormatError):
        Check("c", False)


def test_table_output_and_progress():
    code, out, err = call("semigroup", "--gens", "14,38,108", "--conductor-step", "2")
    assert code == 0 and "conductor" in out and "PASS" in out
    code, out, err = call("search", "--case", "even", "--n", "12")
    assert code == 0 and "found" in out


def test_unknown_subcommand_and_help():
    assert call("frobnicate")[0] == 2
    assert call()[0] == 2
    assert call("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rainbow_spectra", "--json", "semigroup",
                           "--gens", "3,5", "--conductor-step", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["conductor"] == 8
