"""Regression corpus: one JSON file per entry, each pinned against expectations.

Entry layout::

    {
      "name": "M12",
      "source": {"builtin": "M12"} | {"group_file": "groups/x.json"} | {"table_file": "tables/x.json"},
      "primes": [2, 3],
      "sylow": {"2": {"table_file": "..."}},          # needed for table sources
      "expectations": {"2": {"blocks": 2, "mh": [1, "inf"], "verdicts": [...],
                             "defects": [...], "principal_mh_attained_by": 2}}
    }

Paths are relative to the entry file.
"""

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .blocktheory import MISMATCH, block_partition, fmt_mh, verify_em
from .chartable import character_table, import_table
from .errors import BlockHeightError, FormatError
from .groups import builtin
from .permgroup import read_group_file

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 2, 65


def resolve_source(spec, base):
    """A PermGroup or CharacterTable from a source description."""
    if not isinstance(spec, dict) or len(spec) != 1:
        raise FormatError("a source needs exactly one of builtin, group_file, table_file")
    ((kind, value),) = spec.items()
    if kind == "builtin":
        return builtin(value)
    if kind == "group_file":
        return read_group_file(Path(base) / value).group
    if kind == "table_file":
        return import_table(Path(base) / value)
    raise FormatError(f"unknown source kind {kind!r}")


def _check_expectations(report, part, expected):
    problems = []
    blocks = report["blocks"]
    if "blocks" in expected and expected["blocks"] != len(blocks):
        problems.append(f"expected {expected['blocks']} blocks, found {len(blocks)}")
    for key, field_name in (("mh", "mh"), ("verdicts", "verdict"), ("defects", "defect")):
        if key in expected:
            got = [b[field_name] for b in blocks]
            if got != expected[key]:
                problems.append(f"{key}: expected {expected[key]}, found {got}")
    if "principal_mh" in expected and fmt_mh(part.mh[0]) != expected["principal_mh"]:
        problems.append(f"principal mh: expected {expected['principal_mh']}, found {fmt_mh(part.mh[0])}")
    if "principal_mh_attained_by" in expected:
        n = len(part.attaining(0))
        if n != expected["principal_mh_attained_by"]:
            problems.append(f"principal mh attained by {n}, expected {expected['principal_mh_attained_by']}")
    return problems


def run_entry(path, cap=None):
    """Process one entry file; never raises for computational failures."""
    saved = os.environ.get("BLOCKHEIGHT_CAP")
    if cap is not None:
        os.environ["BLOCKHEIGHT_CAP"] = str(cap)
    try:
        return _run_entry(Path(path))
    finally:
        if cap is not None:
            if saved is None:
                os.environ.pop("BLOCKHEIGHT_CAP", None)
            else:
                os.environ["BLOCKHEIGHT_CAP"] = saved


def _run_entry(path):
    out = {"file": path.name, "name": path.stem, "primes": {}, "status": "ok"}
    try:
        data = json.loads(path.read_text())
        out["name"] = str(data.get("name", path.stem))
        source = resolve_source(data.get("source"), path.parent)
        if hasattr(source, "irreducibles"):
            table, group = source, None
        else:
            group = source
            table = character_table(group)
        sylows = data.get("sylow") or {}
        expectations = data.get("expectations") or {}
        for p in data.get("primes", []):
            p = int(p)
            sylow = None
            if str(p) in sylows:
                sylow = resolve_source(sylows[str(p)], path.parent)
            elif group is not None and group.order % p == 0:
                sylow = group.sylow_subgroup(p)
            part = block_partition(table, p)
            report = verify_em(table, p, sylow=sylow, partition=part).to_json()
            problems = _check_expectations(report, part, expectations.get(str(p), {}))
            entry = {"report": report, "expectation_failures": problems}
            if problems or any(b["verdict"] == MISMATCH for b in report["blocks"]):
                out["status"] = "mismatch"
            out["primes"][str(p)] = entry
    except (BlockHeightError, OSError, ValueError, json.JSONDecodeError) as exc:
        out["status"] = "error"
        out["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return out


@dataclass
class CorpusReport:
    entries: list = field(default_factory=list)

    @property
    def exit_code(self):
        statuses = {e["status"] for e in self.entries}
        if "error" in statuses:
            return EXIT_ERROR
        if "mismatch" in statuses:
            return EXIT_MISMATCH
        return EXIT_OK

    def summary_rows(self):
        rows = []
        for e in self.entries:
            for p, res in e["primes"].items():
                verdicts = {}
                for b in res["report"]["blocks"]:
                    verdicts[b["verdict"]] = verdicts.get(b["verdict"], 0) + 1
                rows.append({"name": e["name"], "p": int(p), "blocks": len(res["report"]["blocks"]),
                             "verdicts": dict(sorted(verdicts.items())),
                             "expectations_ok": not res["expectation_failures"]})
        return rows

    def to_json(self):
        return {"entries": self.entries, "summary": self.summary_rows(), "exit_code": self.exit_code}

    def text(self):
        lines = []
        for row in self.summary_rows():
            v = ", ".join(f"{k}: {n}" for k, n in row["verdicts"].items())
            flag = "" if row["expectations_ok"] else "  EXPECTATION FAILED"
            lines.append(f"{row['name']:<16} p={row['p']:<3} blocks={row['blocks']:<3} {v}{flag}")
        for e in self.entries:
            if e["status"] == "error":
                lines.append(f"{e['name']:<16} ERROR {e['error']['type']}: {e['error']['message']}")
            for p, res in e["primes"].items():
                for msg in res["expectation_failures"]:
                    lines.append(f"{e['name']:<16} p={p}: {msg}")
        lines.append(f"{len(self.entries)} entries, exit code {self.exit_code}")
        return "\n".join(lines)


def corpus_files(directory):
    return sorted(Path(directory).glob("*.json"))


def run_corpus(directory, jobs=1, cap=None):
    """Run every entry of ``directory``; order-stable regardless of ``jobs``."""
    files = corpus_files(directory)
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(run_entry, files, [cap] * len(files)))
    else:
        entries = [run_entry(f, cap) for f in files]
    return CorpusReport(entries)
