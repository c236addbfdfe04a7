"""Regenerate the regression corpus under corpus/.

Group files are written from the builtin constructions; the 2.A6.2_2 table
files are exported from the package's own Dixon-Schneider run, so they pin
the pipeline against itself across releases rather than against outside data.
"""

import json
import sys
from pathlib import Path

from blockheight.blocktheory import block_partition, fmt_mh, verify_em
from blockheight.chartable import character_table, export_table
from blockheight.groups import builtin
from blockheight.permgroup import write_group_file

ROOT = Path(__file__).resolve().parent.parent / "corpus"

SMALL = ["S3", "S4", "A4", "A5", "D8", "Q8", "SL(2,3)"]
LARGE = {"M12": [2, 3], "PGL(2,9)": [2, 3], "M10": [2, 3], "PGammaL(2,8)": [2, 3]}


def slug(name):
    return "".join(c.lower() if c.isalnum() else "_" for c in name).strip("_")


def expectations(table, group, primes, extra=None):
    out = {}
    for p in primes:
        part = block_partition(table, p)
        sylow = group.sylow_subgroup(p) if group is not None and group.order % p == 0 else None
        report = verify_em(table, p, sylow=sylow, partition=part).to_json()
        exp = {"blocks": len(part), "defects": list(part.defects),
               "mh": [fmt_mh(m) for m in part.mh],
               "verdicts": [b["verdict"] for b in report["blocks"]]}
        exp.update((extra or {}).get(p, {}))
        out[str(p)] = exp
    return out


def write(name, payload):
    (ROOT / f"{slug(name)}.json").write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def main():
    for name in SMALL:
        g = builtin(name)
        write_group_file(g, ROOT / "groups" / f"{slug(name)}.json")
        src = {"group_file": f"groups/{slug(name)}.json"} if name == "S4" else {"builtin": name}
        write(name, {"name": name, "source": src, "primes": [2, 3, 5],
                     "expectations": expectations(character_table(g), g, [2, 3, 5])})
    for name, primes in LARGE.items():
        g = builtin(name)
        extra = {2: {"principal_mh": 1, "principal_mh_attained_by": 2}} if name == "M12" else None
        write(name, {"name": name, "source": {"builtin": name}, "primes": primes,
                     "expectations": expectations(character_table(g), g, primes, extra)})
    for name in ("2.A6.2_2", "2.A6.2_2*"):
        g = builtin(name)
        table = character_table(g)
        base = slug(name.replace("*", "_iso"))
        export_table(table, ROOT / "tables" / f"{base}.json")
        export_table(character_table(g.sylow_subgroup(2)), ROOT / "tables" / f"{base}_sylow2.json")
        write(name.replace("*", "_iso"), {
            "name": name, "source": {"table_file": f"tables/{base}.json"}, "primes": [2],
            "sylow": {"2": {"table_file": f"tables/{base}_sylow2.json"}},
            "expectations": expectations(table, g, [2])})
    return 0


if __name__ == "__main__":
    sys.exit(main())
