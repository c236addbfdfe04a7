import json
import shutil

import pytest

from blockheight.corpus import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, run_corpus, run_entry


@pytest.fixture(scope="module")
def serial_report(corpus_dir):
    return run_corpus(corpus_dir, jobs=1)


def test_corpus_passes(serial_report):
    assert serial_report.exit_code == EXIT_OK, serial_report.text()
    assert len(serial_report.entries) == 13


def test_parallel_report_identical(serial_report, corpus_dir):
    parallel = run_corpus(corpus_dir, jobs=3)
    assert json.dumps(parallel.to_json(), sort_keys=True) == json.dumps(serial_report.to_json(), sort_keys=True)


def test_m12_entry_pins_principal_block(serial_report):
    (m12,) = [e for e in serial_report.entries if e["name"] == "M12"]
    blocks = m12["primes"]["2"]["report"]["blocks"]
    assert blocks[0]["verdict"] == "holds"


def test_expectation_mismatch(tmp_path, corpus_dir):
    data = json.loads((corpus_dir / "s3.json").read_text())
    data["expectations"]["2"]["blocks"] = 99
    (tmp_path / "s3.json").write_text(json.dumps(data))
    report = run_corpus(tmp_path)
    assert report.exit_code == EXIT_MISMATCH
    assert "EXPECTATION FAILED" in report.text()


def test_error_entry_is_reported(tmp_path):
    (tmp_path / "bad.json").write_text(json.dumps({"source": {"builtin": "Nope"}, "primes": [2]}))
    entry = run_entry(tmp_path / "bad.json")
    assert entry["status"] == "error"
    assert run_corpus(tmp_path).exit_code == EXIT_ERROR


def test_group_file_relative_paths(tmp_path, corpus_dir):
    shutil.copytree(corpus_dir / "groups", tmp_path / "groups")
    shutil.copy(corpus_dir / "s4.json", tmp_path / "s4.json")
    assert run_corpus(tmp_path).exit_code == EXIT_OK
