"""Command-line interface: ``blockheight <command> ...``.

Exit codes: 0 success, 2 an mh(B) != mh(D) mismatch (or a corpus expectation
failure), 64 usage error, 65 computational error.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from .blocktheory import block_partition, fmt_mh, verify_em
from .chartable import CharacterTable, character_table, export_table, import_table
from .combinatorics import (
    Partition,
    check_unipdef,
    core_existence,
    ell_core,
    ell_quotient,
    ell_weight,
    is_ell_core,
    wreath_degree_valuation,
)
from .corpus import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, run_corpus
from .errors import BlockHeightError, FormatError
from .groups import builtin
from .permgroup import PermGroup, read_group_file
from .pgroups import MetacyclicSpec, extraspecial, metacyclic, mh_pgroup, wreath_cyclic_symmetric

EXIT_USAGE = 64

# (d, a, ell) triples where no witness exists for structural reasons
KNOWN_EXCEPTIONS = {(1, 2, 2), (1, 3, 3), (1, 6, 3)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# --- source loading ----------------------------------------------------------------

def load_source(spec):
    """A group file, a table file, or a builtin name like ``S4`` or ``PGL(2,9)``."""
    path = Path(spec)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        if "irreducibles" in data:
            return import_table(path), None
        return read_group_file(path).group, read_group_file(path)
    return builtin(spec), None


def _table_of(source):
    return source if isinstance(source, CharacterTable) else character_table(source)


# --- commands ----------------------------------------------------------------------

def cmd_chartable(args):
    source, _ = load_source(args.source)
    table = _table_of(source)
    if args.export:
        export_table(table, args.export)
    text = [f"{table.name or 'group'}: order {table.order}, {table.num_classes} classes, exponent {table.exponent}",
            "sizes:  " + " ".join(str(s) for s in table.class_sizes),
            "orders: " + " ".join(str(o) for o in table.element_orders)]
    for i, row in enumerate(table.irreducibles):
        text.append(f"X.{i + 1}: " + " ".join(str(v) for v in row))
    _emit(args, table.to_json(), "\n".join(text))
    return EXIT_OK


def cmd_blocks(args):
    source, _ = load_source(args.source)
    table = _table_of(source)
    part = block_partition(table, args.p)
    lines = [f"{table.name or 'group'}, p = {args.p}: {len(part)} block(s)"]
    for k, b in enumerate(part.blocks):
        lines.append(f"  B{k}: chars {list(b)} degrees {[part.degrees[i] for i in b]} "
                     f"defect {part.defects[k]} heights {[part.heights[i] for i in b]}")
    _emit(args, part.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_mh(args):
    source, _ = load_source(args.source)
    table = _table_of(source)
    part = block_partition(table, args.p)
    rows = [{"block": k, "defect": part.defects[k], "mh": fmt_mh(part.mh[k]),
             "attained_by": part.attaining(k)} for k in range(len(part))]
    text = "\n".join(f"B{r['block']}: defect {r['defect']}, mh(B) = {r['mh']}" for r in rows)
    _emit(args, {"p": args.p, "blocks": rows}, text)
    return EXIT_OK


def _parse_defect_groups(items):
    out = {}
    for item in items or []:
        block, sep, spec = item.partition("=")
        if not sep or not block.isdigit():
            raise UsageError(f"--defect-group expects BLOCK=SOURCE, got {item!r}")
        out[int(block)] = load_source(spec)[0]
    return out


def cmd_verify_em(args):
    source, gfile = load_source(args.source)
    table = _table_of(source)
    defect_groups = _parse_defect_groups(args.defect_group)
    if gfile is not None:
        for entry in gfile.defect_groups:
            if entry["p"] == args.p:
                defect_groups.setdefault(entry["block"], entry["group"])
    if args.sylow:
        sylow = load_source(args.sylow)[0]
    elif isinstance(source, PermGroup) and source.order % args.p == 0:
        sylow = source.sylow_subgroup(args.p)
    else:
        sylow = None
    report = verify_em(table, args.p, sylow=sylow, defect_groups=defect_groups)
    _emit(args, report.to_json(), report.summary())
    return EXIT_MISMATCH if report.has_mismatch else EXIT_OK


def cmd_pgroup_mh(args):
    if args.metacyclic:
        p, m, n, r = args.metacyclic
        group, prime = metacyclic(MetacyclicSpec(p, m, n, r)), p
    elif args.extraspecial:
        prime, kind = args.extraspecial
        group = extraspecial(prime, kind)
    elif args.wreath:
        d, a = args.wreath
        group = wreath_cyclic_symmetric(d, a)
        if args.p is None:
            raise UsageError("-p is required with --wreath")
        prime = args.p
    else:
        group = load_source(args.group)[0]
        if args.p is None:
            raise UsageError("-p is required with --group")
        prime = args.p
    if args.export_group:
        Path(args.export_group).write_text(json.dumps(group.to_json(), indent=1) + "\n")
    mh = mh_pgroup(group, prime)
    table = character_table(group)
    degrees = {}
    for d in table.degrees:
        degrees[d] = degrees.get(d, 0) + 1
    payload = {"group": group.name, "order": group.order, "p": prime, "mh": fmt_mh(mh),
               "degrees": {str(k): v for k, v in sorted(degrees.items())}}
    text = f"{group.name}: order {group.order}, mh = {fmt_mh(mh)}, degrees {dict(sorted(degrees.items()))}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_core(args):
    lam = Partition(sorted(args.parts, reverse=True))
    core = ell_core(lam, args.l)
    payload = {"partition": list(lam), "ell": args.l, "core": list(core),
               "quotient": [list(q) for q in ell_quotient(lam, args.l)],
               "weight": ell_weight(lam, args.l), "is_core": is_ell_core(lam, args.l)}
    _emit(args, payload, f"{args.l}-core of {tuple(lam)}: {tuple(core)} (weight {payload['weight']})")
    return EXIT_OK


def cmd_core_exists(args):
    if not args.l <= args.a < args.l * args.l:
        raise UsageError("core-exists needs l <= a < l^2")
    found = core_existence(args.a, args.l)
    if found is None:
        payload, text = {"ell": args.l, "a": args.a, "witness": None}, "none"
    else:
        b, mu = found
        payload = {"ell": args.l, "a": args.a, "witness": {"b": b, "core": list(mu)}}
        text = f"b = {b}, core {tuple(mu)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_unipdef(args):
    try:
        label = check_unipdef(args.d, args.a, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    key = (args.d, args.a, args.l)
    if label is None:
        known = key in KNOWN_EXCEPTIONS
        payload = {"d": args.d, "a": args.a, "ell": args.l, "witness": None, "known_exception": known}
        text = "no witness (known exception)" if known else "no witness"
    else:
        degree, v = wreath_degree_valuation(label, args.l)
        payload = {"d": args.d, "a": args.a, "ell": args.l, "witness": label.to_json(), "degree": degree}
        text = f"witness {label.to_json()} of degree {degree}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_run_corpus(args):
    report = run_corpus(args.directory, jobs=args.jobs, cap=args.cap)
    _emit(args, report.to_json(), report.text())
    return report.exit_code


# --- parser ------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, help="element enumeration cap (default 10^6 or $BLOCKHEIGHT_CAP)")
    common.add_argument("--seed", type=int, help="accepted for interface stability; all algorithms are deterministic")

    parser = _Parser(prog="blockheight", description="Character tables, p-blocks and heights of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chartable", parents=[common], help="character table of a group or table file")
    p.add_argument("source")
    p.add_argument("--export", metavar="FILE", help="write the table in the JSON table format")
    p.set_defaults(func=cmd_chartable)

    for name, func, helptext in (("blocks", cmd_blocks, "p-block partition"),
                                 ("mh", cmd_mh, "minimal positive height per block")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("source")
        p.add_argument("-p", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-em", parents=[common], help="compare mh(B) with mh(D) per block")
    p.add_argument("source")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--sylow", metavar="SOURCE", help="Sylow p-subgroup (group or table) for table inputs")
    p.add_argument("--defect-group", action="append", metavar="BLOCK=SOURCE",
                   help="user-asserted defect group of a block (order must be p^d(B))")
    p.set_defaults(func=cmd_verify_em)

    p = sub.add_parser("pgroup-mh", parents=[common], help="mh of a p-group family member")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--metacyclic", nargs=4, type=int, metavar=("P", "M", "N", "R"))
    fam.add_argument("--extraspecial", nargs=2, type=int, metavar=("P", "KIND"))
    fam.add_argument("--wreath", nargs=2, type=int, metavar=("D", "A"))
    fam.add_argument("--group", metavar="SOURCE")
    p.add_argument("-p", type=int)
    p.add_argument("--export-group", metavar="FILE", help="write the constructed group file")
    p.set_defaults(func=cmd_pgroup_mh)

    p = sub.add_parser("core", parents=[common], help="ell-core, quotient and weight of a partition")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("parts", type=int, nargs="*")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("core-exists", parents=[common], help="an ell-core of size b in [l, 2l) with b = a mod l")
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.set_defaults(func=cmd_core_exists)

    p = sub.add_parser("unipdef-check", parents=[common], help="character of C_d wr S_a with l-part exactly l")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.set_defaults(func=cmd_unipdef)

    p = sub.add_parser("run-corpus", parents=[common], help="run every entry of a corpus directory")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_run_corpus)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None:
        if args.cap < 1:
            parser.error("--cap must be positive")
        os.environ["BLOCKHEIGHT_CAP"] = str(args.cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"blockheight: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BlockHeightError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
