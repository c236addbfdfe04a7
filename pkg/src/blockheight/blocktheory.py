"""p-blocks of irreducible characters, defects, heights and minimal heights.

Two characters lie in the same p-block exactly when their central characters
agree modulo a maximal ideal above p.  That reduction is realised concretely by
``ResidueMap``: Z[zeta_e] -> F_{p^f}.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import n_order

from .chartable import CharacterTable, character_table, restrict
from .cyclotomic import Cyclotomic
from .errors import DefectOrderMismatch, NonIntegralOmega, NotNormal
from .gf import ExtensionField
from .permgroup import PermGroup, class_fusion, p_part, perm_inv, perm_mul

INF = math.inf


def nu(n, p):
    """p-adic valuation of a non-zero integer."""
    n = abs(int(n))
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def fmt_mh(x):
    return "inf" if x == INF else int(x)


# --- central characters ------------------------------------------------------

def central_character(chi, class_sizes):
    """``omega_chi(K_j) = |K_j| chi(g_j) / chi(1)``, exactly."""
    degree = int(chi[0])
    if degree <= 0:
        raise NonIntegralOmega("character degree must be positive")
    out = []
    for size, value in zip(class_sizes, chi):
        try:
            out.append((value * int(size)).exact_div(degree))
        except ArithmeticError as exc:
            raise NonIntegralOmega(str(exc)) from exc
    return out


# --- reduction modulo a prime above p ----------------------------------------

class ResidueMap:
    """Ring homomorphism Z[zeta_e] -> F_{p^f} sending zeta_e to ``root^u``.

    With ``e = p^a m`` (p not dividing m) and ``u p^a + v m = 1``, the p-power
    part of zeta_e goes to 1 and the p'-part to a primitive m-th root of unity.
    ``root`` selects which primitive m-th root is used (default: the first in
    code order); every choice yields the same block partition.
    """

    def __init__(self, e, p, root=None):
        self.e, self.p = e, p
        pa = p_part(e, p)
        self.m = m = e // pa
        self.f = 1 if m == 1 else int(n_order(p, m))
        self.field = ExtensionField(p, self.f)
        self.u = pow(pa, -1, m) if m > 1 else 0
        self.root = self.field.primitive_root_of_unity(m) if root is None else tuple(root)
        powers = [self.field.one]
        for _ in range(m - 1):
            powers.append(self.field.mul(powers[-1], self.root))
        if m > 1 and self.field.mul(powers[-1], self.root) != self.field.one:
            raise ValueError("root is not an m-th root of unity")
        self._powers = np.array(powers, dtype=np.int64)

    def __call__(self, x):
        if isinstance(x, int):
            x = Cyclotomic.integer(x, self.e)
        if x.e != self.e:
            x = x.lift(self.e)
        acc = np.zeros(self.f, dtype=np.int64)
        m, u = self.m, self.u
        for k, c in x.terms:
            acc += (c % self.p) * self._powers[(k * u) % m]
        return tuple(int(v) for v in acc % self.p)

    def all_roots(self):
        """Every primitive m-th root of unity of the field (for independence tests)."""
        out = []
        for k in range(1, self.m + 1):
            if math.gcd(k, self.m) == 1:
                out.append(tuple(int(v) for v in self._powers[k % self.m]))
        return out


@lru_cache(maxsize=None)
def residue_map(e, p):
    return ResidueMap(e, p)


def reduce_mod_p(x, p, root=None):
    rm = residue_map(x.e, p) if root is None else ResidueMap(x.e, p, root)
    return rm(x)


# --- block partition ---------------------------------------------------------

@dataclass
class BlockPartition:
    p: int
    order: int
    degrees: list
    blocks: list  # tuples of character indices; blocks[0] holds the trivial character
    defects: list
    heights: list  # per character
    mh: list  # per block, int or math.inf
    block_of: list = field(default_factory=list)

    principal = 0

    def __len__(self):
        return len(self.blocks)

    def height_counts(self, b):
        out = {}
        for i in self.blocks[b]:
            out[self.heights[i]] = out.get(self.heights[i], 0) + 1
        return dict(sorted(out.items()))

    def attaining(self, b):
        """Characters of block ``b`` whose height equals mh(B)."""
        if self.mh[b] == INF:
            return []
        return [i for i in self.blocks[b] if self.heights[i] == self.mh[b]]

    def to_json(self):
        return {
            "p": self.p,
            "blocks": [
                {
                    "characters": list(b),
                    "degrees": [self.degrees[i] for i in b],
                    "defect": self.defects[k],
                    "heights": [self.heights[i] for i in b],
                    "mh": fmt_mh(self.mh[k]),
                    "principal": k == 0,
                }
                for k, b in enumerate(self.blocks)
            ],
        }


def block_partition(table, p, root=None):
    h = table.num_classes
    degrees = table.degrees
    rm = ResidueMap(table.exponent, p, root) if root is not None else residue_map(table.exponent, p)
    keys = {}
    block_of = []
    for chi in table.irreducibles:
        omega = central_character(chi, table.class_sizes)
        key = tuple(rm(w) for w in omega)
        block_of.append(keys.setdefault(key, len(keys)))
    blocks = [[] for _ in keys]
    for i, b in enumerate(block_of):
        blocks[b].append(i)
    blocks = [tuple(b) for b in blocks]
    return _assemble(p, table.order, degrees, blocks, block_of, h)


def _assemble(p, order, degrees, blocks, block_of, h=None):
    full = nu(order, p)
    vals = [nu(d, p) for d in degrees]
    defects, mh = [], []
    heights = [0] * len(degrees)
    for b in blocks:
        low = min(vals[i] for i in b)
        defects.append(full - low)
        pos = []
        for i in b:
            heights[i] = vals[i] - low
            if heights[i] > 0:
                pos.append(heights[i])
        mh.append(min(pos) if pos else INF)
    return BlockPartition(p, order, list(degrees), blocks, defects, heights, mh, list(block_of))


def mh_block(partition, b):
    return partition.mh[b]


# --- covering, invariance ------------------------------------------------------

def _conjugation_class_perm(group, sub, sub_classes, g):
    """Class permutation of ``sub`` induced by conjugation with ``g``."""
    ginv = perm_inv(g)
    out = []
    for r in sub_classes.reps:
        x = perm_mul(perm_mul(ginv, sub.element(r)), g)
        out.append(int(sub_classes.class_of[sub.id_of(x)]))
    return out


def character_action(group, sub, sub_table):
    """For each generator of ``group``, the permutation it induces on Irr(sub)."""
    rows = {tuple(row): i for i, row in enumerate(sub_table.irreducibles)}
    perms = []
    for g in group.generators:
        cp = _conjugation_class_perm(group, sub, sub.classes, g)
        perm = []
        for row in sub_table.irreducibles:
            image = tuple(row[cp[j]] for j in range(len(row)))
            perm.append(rows[image])
        perms.append(perm)
    return perms


def invariant_blocks(group, sub, sub_table, sub_part):
    """Indices of blocks of ``sub`` fixed by conjugation with every generator of ``group``."""
    perms = character_action(group, sub, sub_table)
    out = []
    for k, b in enumerate(sub_part.blocks):
        members = set(b)
        if all({perm[i] for i in b} == members for perm in perms):
            out.append(k)
    return out


def covering_relation(table, part, sub_table, sub_part, fusion):
    """``cover[B]`` = set of blocks b of the subgroup covered by block B."""
    cover = []
    for b in part.blocks:
        hit = set()
        for i in b:
            for psi in restrict(table.irreducibles[i], fusion, sub_table):
                hit.add(sub_part.block_of[psi])
        cover.append(hit)
    return cover


@dataclass
class CoveringData:
    p: int
    table: CharacterTable
    partition: BlockPartition
    sub_table: CharacterTable
    sub_partition: BlockPartition
    cover: list
    invariant: list
    index: int

    def covering_blocks(self, b):
        return [k for k, s in enumerate(self.cover) if b in s]


def block_covering(group, normal, p):
    """Blocks of ``group`` against blocks of the normal subgroup ``normal``."""
    if not group.is_normal(normal):
        raise NotNormal(f"{normal.name or 'subgroup'} is not normal in {group.name or 'group'}")
    table = character_table(group)
    sub_table = character_table(normal)
    part = block_partition(table, p)
    sub_part = block_partition(sub_table, p)
    fusion = class_fusion(normal, group)
    cover = covering_relation(table, part, sub_table, sub_part, fusion)
    inv = invariant_blocks(group, normal, sub_table, sub_part)
    return CoveringData(p, table, part, sub_table, sub_part, cover, inv, group.order // normal.order)


# --- Eaton-Moreto report -------------------------------------------------------

SYLOW, TRIVIAL, USER, UNKNOWN = "sylow", "trivial", "user-asserted", "unknown"
HOLDS, OPEN, MISMATCH = "holds", "open: D unknown", "mismatch"


@dataclass
class BlockReport:
    index: int
    characters: tuple
    degrees: list
    defect: int
    heights: list
    mh_block: object
    status: str
    mh_defect: object  # None when D is unknown
    defect_order: object
    verdict: str

    def to_json(self):
        return {
            "block": self.index,
            "characters": list(self.characters),
            "degrees": self.degrees,
            "defect": self.defect,
            "heights": self.heights,
            "mh": fmt_mh(self.mh_block),
            "defect_group": self.status,
            "defect_group_order": self.defect_order,
            "mh_defect_group": None if self.mh_defect is None else fmt_mh(self.mh_defect),
            "verdict": self.verdict,
        }


@dataclass
class EMReport:
    group: str
    order: int
    p: int
    blocks: list

    @property
    def has_mismatch(self):
        return any(b.verdict == MISMATCH for b in self.blocks)

    @property
    def all_hold(self):
        return all(b.verdict == HOLDS for b in self.blocks)

    def to_json(self):
        return {
            "group": self.group,
            "order": self.order,
            "p": self.p,
            "blocks": [b.to_json() for b in self.blocks],
        }

    def summary(self):
        lines = [f"{self.group or 'group'} (order {self.order}), p = {self.p}: {len(self.blocks)} block(s)"]
        for b in self.blocks:
            mhd = "?" if b.mh_defect is None else fmt_mh(b.mh_defect)
            lines.append(
                f"  B{b.index}: {len(b.characters)} chars, defect {b.defect}, "
                f"mh(B)={fmt_mh(b.mh_block)}, mh(D)={mhd} [{b.status}] -> {b.verdict}"
            )
        return "\n".join(lines)


def _mh_of(d, p):
    from .pgroups import mh_pgroup, mh_from_table

    if isinstance(d, CharacterTable):
        return d.order, mh_from_table(d, p)
    return d.order, mh_pgroup(d, p)


def verify_em(table, p, sylow=None, defect_groups=None, partition=None):
    """Compare mh(B) with mh(D) for every p-block.

    ``sylow`` (a PermGroup or CharacterTable of a Sylow p-subgroup) settles the
    full-defect blocks.  ``defect_groups`` maps block indices to user-supplied
    candidates; their order must be p^d(B), which is necessary but not
    sufficient, so such blocks are flagged as user-asserted.
    """
    part = partition or block_partition(table, p)
    defect_groups = defect_groups or {}
    full = nu(table.order, p)
    sylow_mh = None
    if sylow is not None:
        order, sylow_mh = _mh_of(sylow, p)
        if order != p**full:
            raise DefectOrderMismatch(f"Sylow candidate has order {order}, expected {p ** full}")
    reports = []
    for k, b in enumerate(part.blocks):
        d = part.defects[k]
        mhd, status, dorder = None, UNKNOWN, None
        if k in defect_groups:
            dorder, mhd = _mh_of(defect_groups[k], p)
            if dorder != p**d:
                raise DefectOrderMismatch(f"block {k}: candidate of order {dorder}, defect {d} needs {p ** d}")
            status = USER
        elif d == 0:
            mhd, status, dorder = INF, TRIVIAL, 1
        elif d == full and sylow_mh is not None:
            mhd, status, dorder = sylow_mh, SYLOW, p**full
        mhb = part.mh[k]
        if mhd is None:
            verdict = OPEN
        else:
            verdict = HOLDS if mhb == mhd else MISMATCH
        reports.append(
            BlockReport(
                k, b, [part.degrees[i] for i in b], d, [part.heights[i] for i in b],
                mhb, status, mhd, dorder, verdict,
            )
        )
    return EMReport(table.name, table.order, p, reports)


def verify_em_group(group, p, defect_groups=None):
    """``verify_em`` for an enumerable permutation group, constructing its Sylow subgroup."""
    table = character_table(group)
    sylow = group.sylow_subgroup(p) if group.order % p == 0 else None
    return verify_em(table, p, sylow=sylow, defect_groups=defect_groups)


def block_kernel_classes(table, block):
    """Classes lying in the kernel of every character of the block."""
    rows = [table.irreducibles[i] for i in block]
    return [j for j in range(table.num_classes) if all(r[j] == r[0] for r in rows)]


def faithful_blocks(table, part):
    """Blocks whose characters have trivial common kernel."""
    return [k for k, b in enumerate(part.blocks) if block_kernel_classes(table, b) == [0]]


__all__ = [
    "INF",
    "nu",
    "central_character",
    "ResidueMap",
    "reduce_mod_p",
    "BlockPartition",
    "block_partition",
    "mh_block",
    "block_covering",
    "covering_relation",
    "invariant_blocks",
    "character_action",
    "EMReport",
    "verify_em",
    "verify_em_group",
    "faithful_blocks",
    "PermGroup",
]
