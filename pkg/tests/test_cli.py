import json
import subprocess
import sys

import pytest

from blockheight.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mh_text(capsys):
    code, out, _ = run(capsys, "mh", "S4", "-p", "2")
    assert code == 0
    assert "B0: defect 3, mh(B) = 1" in out


def test_blocks_json_from_group_file(capsys, corpus_dir):
    code, out, _ = run(capsys, "blocks", str(corpus_dir / "groups" / "s4.json"), "-p", "2", "--json")
    assert code == 0
    data = json.loads(out)
    (block,) = data["blocks"]
    assert sorted(block["heights"]) == [0, 0, 0, 0, 1]


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "blocks", "A5", "-p", "2", "--json")[1]
    second = run(capsys, "blocks", "A5", "-p", "2", "--json")[1]
    assert first == second


def test_verify_em_m12(capsys):
    code, out, _ = run(capsys, "verify-em", "M12", "-p", "2", "--json")
    assert code == 0
    verdicts = [b["verdict"] for b in json.loads(out)["blocks"]]
    assert verdicts[0] == "holds"


def test_verify_em_mismatch_exit_code(capsys, tmp_path):
    # assert an abelian defect group of order 8 for the principal 2-block of S4
    group = tmp_path / "c8.json"
    group.write_text(json.dumps({"degree": 8, "generators": [[2, 3, 4, 5, 6, 7, 8, 1]], "name": "C8"}))
    code, _, _ = run(capsys, "verify-em", "S4", "-p", "2", "--defect-group", f"0={group}")
    assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mh", "S4"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["mh", "S4", "-p", "2", "--cap", "0"])
    assert exc.value.code == 64
    code, _, _ = run(capsys, "core-exists", "-l", "3", "-a", "2")
    assert code == 64
    code, _, _ = run(capsys, "pgroup-mh", "--wreath", "2", "2")
    assert code == 64


def test_computational_error(capsys):
    code, _, err = run(capsys, "mh", "NoSuchGroup", "-p", "2")
    assert code == 65
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_core(capsys):
    code, out, _ = run(capsys, "core", "-l", "3", "4", "2", "1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["core"] == [1] and data["weight"] == 2
    assert data["quotient"] == [[1, 1], [], []]


def test_core_exists(capsys):
    assert run(capsys, "core-exists", "-l", "3", "-a", "6")[1].strip() == "none"
    assert run(capsys, "core-exists", "-l", "7", "-a", "12")[1].strip() == "b = 12, core (9, 3)"


def test_unipdef_wording(capsys):
    assert run(capsys, "unipdef-check", "-d", "1", "-a", "3", "-l", "3")[1].strip() == "no witness (known exception)"
    out = run(capsys, "unipdef-check", "-d", "3", "-a", "2", "-l", "3")[1].strip()
    assert out == "no witness"
    out = run(capsys, "unipdef-check", "-d", "2", "-a", "3", "-l", "3")[1]
    assert out.startswith("witness") and out.strip().endswith("degree 3")


def test_pgroup_mh_metacyclic(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "pgroup-mh", "--metacyclic", "3", "2", "1", "4", "--json",
                       "--export-group", str(target))
    assert code == 0
    assert json.loads(out)["mh"] == 1
    code, out, _ = run(capsys, "pgroup-mh", "--group", str(target), "-p", "3", "--json")
    assert json.loads(out)["order"] == 27


def test_chartable_export_roundtrip(capsys, tmp_path):
    target = tmp_path / "a5.json"
    code, first, _ = run(capsys, "chartable", "A5", "--export", str(target))
    assert code == 0
    code, second, _ = run(capsys, "chartable", str(target))
    assert code == 0
    assert first.splitlines()[1:] == second.splitlines()[1:]


def test_run_corpus_empty_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "run-corpus", str(tmp_path))
    assert code == 0
    assert "0 entries" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blockheight", "mh", "S3", "-p", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "mh(B) = inf" in proc.stdout
