"""Finite permutation groups given by generators.

Permutations are image arrays on ``0..n-1``; the file format is 1-based.  The
product ``a * b`` applies ``a`` first, so as arrays ``(a*b)[i] == b[a[i]]``.
Element ids are assigned in breadth-first enumeration order (identity = 0).
"""

import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from pathlib import Path

import numpy as np
from sympy import factorint

from . import kernels
from .errors import (
    CapExceeded,
    FormatError,
    InvariantViolation,
    NotASubgroup,
)

DEFAULT_CAP = 10**6


def default_cap():
    env = os.environ.get("BLOCKHEIGHT_CAP")
    return int(env) if env else DEFAULT_CAP


# --- plain tuple helpers, used where numpy would be overkill -----------------

def perm_mul(a, b):
    return tuple(b[x] for x in a)


def perm_inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_order(a):
    seen = [False] * len(a)
    order = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = a[x]
            length += 1
        order = lcm(order, length)
    return order


def perm_from_cycles(cycles, degree):
    """Build a permutation from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
    img = list(range(degree))
    for c in cycles:
        for i, x in enumerate(c):
            img[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(img)


def p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_p_power(n, p):
    return n >= 1 and p_part(n, p) == n


# --- stabilizer chain ---------------------------------------------------------

def _orbit_transversal(point, gens):
    n = len(gens[0]) if gens else 0
    trans = {point: tuple(range(n)) if n else ()}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = perm_mul(trans[x], g)
                queue.append(y)
    return trans


def stabilizer_chain(gens, degree):
    """Deterministic Schreier-Sims.  Returns ``(base, orbit_lengths)``."""
    ident = tuple(range(degree))
    strong = [tuple(g) for g in gens if tuple(g) != ident]
    if not strong:
        return [], []
    base = []

    def moved(g):
        return next(i for i in range(degree) if g[i] != i)

    for g in strong:
        if all(g[b] == b for b in base):
            base.append(moved(g))

    cache = {}

    def level(k):
        key = (k, len(strong), len(base))
        if key not in cache:
            sk = [s for s in strong if all(s[b] == b for b in base[:k])]
            cache[key] = (sk, _orbit_transversal(base[k], sk) if sk else {base[k]: ident})
        return cache[key]

    def strip(g, start):
        for k in range(start, len(base)):
            _, trans = level(k)
            y = g[base[k]]
            if y not in trans:
                return g, k
            g = perm_mul(g, perm_inv(trans[y]))
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        sk, trans = level(i)
        restart = False
        for y in list(trans):
            for s in sk:
                z = s[y]
                sg = perm_mul(perm_mul(trans[y], s), perm_inv(trans[z]))
                if sg == ident:
                    continue
                h, j = strip(sg, i + 1)
                if j < len(base) or h != ident:
                    if j == len(base):
                        base.append(moved(h))
                    strong.append(h)
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return list(base), [len(level(k)[1]) for k in range(len(base))]


# --- conjugacy classes ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConjClasses:
    """Class data; class ``j`` is represented by its least element id ``reps[j]``."""

    reps: tuple
    sizes: tuple
    element_orders: tuple
    class_of: np.ndarray
    power_maps: np.ndarray  # shape (exponent, h); row k maps class j to the class of g_j^k
    exponent: int

    def __len__(self):
        return len(self.reps)

    @property
    def order(self):
        return sum(self.sizes)

    @property
    def inverse_classes(self):
        return self.power_maps[-1]

    def centralizer_orders(self):
        return [self.order // s for s in self.sizes]


# --- groups ------------------------------------------------------------------

class PermGroup:
    """A permutation group on ``degree`` points.

    Generators are validated on construction; all derived data (elements,
    classes, stabilizer chain) is computed lazily and cached.
    """

    def __init__(self, generators, degree=None, name=""):
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        if degree < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of {degree} points: {g}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._gens = np.array(gens, dtype=np.int32).reshape(len(gens), degree)
        self._elements = None

    def __repr__(self):
        return f"PermGroup({self.name or '?'}, degree={self.degree}, gens={len(self.generators)})"

    @classmethod
    def from_cycles(cls, cycle_lists, degree, name=""):
        return cls([perm_from_cycles(c, degree) for c in cycle_lists], degree, name)

    # -- order and elements

    @cached_property
    def chain(self):
        return stabilizer_chain(self.generators, self.degree)

    @cached_property
    def order(self):
        order = 1
        for length in self.chain[1]:
            order *= length
        return order

    def enumerate(self, cap=None):
        """All elements as an ``(order, degree)`` array; raises ``CapExceeded``."""
        if self._elements is None:
            cap = default_cap() if cap is None else cap
            if self.order > cap:
                raise CapExceeded(f"|{self.name or 'G'}| = {self.order} exceeds cap {cap}")
            gens = self._gens if len(self._gens) else np.empty((0, self.degree), np.int32)
            elements = kernels.closure(gens, cap)
            if len(elements) != self.order:
                raise InvariantViolation(
                    f"enumeration found {len(elements)} elements, stabilizer chain says {self.order}"
                )
            elements.setflags(write=False)
            self._elements = elements
        return self._elements

    @property
    def elements(self):
        return self.enumerate()

    @property
    def is_enumerated(self):
        return self._elements is not None

    @cached_property
    def index(self):
        return kernels.perm_index(self.elements)

    def id_of(self, perm):
        return int(self.index.find(np.asarray(perm, dtype=np.int32)[None, :])[0])

    def __contains__(self, perm):
        return self.id_of(perm) >= 0

    @cached_property
    def inverse_ids(self):
        return self.index.find(np.argsort(self.elements, axis=1))

    def element(self, i):
        return tuple(int(x) for x in self.elements[i])

    # -- classes

    def conjugacy_classes(self):
        return self.classes

    @cached_property
    def classes(self):
        el = self.elements
        size = len(el)
        images = np.empty((len(self.generators), size), dtype=np.int64)
        for k, g in enumerate(self._gens):
            ginv = np.argsort(g)
            images[k] = self.index.find(g[el[:, ginv]])
        labels = kernels.orbit_labels(images)
        reps = np.unique(labels)
        class_of = np.searchsorted(reps, labels)
        sizes = np.bincount(class_of, minlength=len(reps))
        orders = [perm_order(el[r].tolist()) for r in reps]
        exponent = lcm(*orders) if orders else 1
        power_maps = np.empty((exponent, len(reps)), dtype=np.int64)
        for j, r in enumerate(reps):
            o = orders[j]
            x = el[r]
            pw = np.empty((o, self.degree), dtype=np.int32)
            pw[0] = np.arange(self.degree)
            for t in range(1, o):
                pw[t] = x[pw[t - 1]]
            cls = class_of[self.index.find(pw)]
            power_maps[:, j] = cls[np.arange(exponent) % o]
        class_of.setflags(write=False)
        power_maps.setflags(write=False)
        return ConjClasses(
            reps=tuple(int(r) for r in reps),
            sizes=tuple(int(s) for s in sizes),
            element_orders=tuple(orders),
            class_of=class_of,
            power_maps=power_maps,
            exponent=exponent,
        )

    @cached_property
    def element_orders(self):
        cc = self.classes
        return np.asarray(cc.element_orders, dtype=np.int64)[cc.class_of]

    @property
    def exponent(self):
        return self.classes.exponent

    # -- subgroups

    def subgroup(self, generators, name=""):
        return PermGroup(generators, self.degree, name)

    def membership(self, sub):
        """Boolean mask over this group's ids marking the elements of ``sub``."""
        ids = self.index.find(sub.elements)
        if np.any(ids < 0):
            raise NotASubgroup(f"{sub.name or 'subgroup'} is not contained in {self.name or 'group'}")
        mask = np.zeros(len(self.elements), dtype=bool)
        mask[ids] = True
        return mask

    def normalizer_mask(self, sub):
        """Mask of ``g`` with ``g^-1 h g`` in ``sub`` for every generator ``h`` of ``sub``."""
        inside = self.membership(sub)
        el = self.elements
        inv = el[self.inverse_ids]
        keep = np.ones(len(el), dtype=bool)
        for h in sub._gens:
            conj = np.take_along_axis(el, h[inv], axis=1)
            keep &= inside[self.index.find(conj)]
        return keep

    def is_normal(self, sub):
        for g in self.generators:
            ginv = perm_inv(g)
            for h in sub.generators:
                if perm_mul(perm_mul(ginv, h), g) not in sub:
                    return False
        return True

    def is_subgroup(self, sub):
        return sub.degree == self.degree and all(h in self for h in sub.generators)

    @cached_property
    def is_abelian(self):
        gens = self.generators
        return all(perm_mul(a, b) == perm_mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def normal_closure(self, perms, name=""):
        gens = list(perms)
        sub = self.subgroup(gens, name)
        changed = True
        while changed:
            changed = False
            for h in list(gens):
                for g in self.generators:
                    c = perm_mul(perm_mul(perm_inv(g), h), g)
                    if c not in sub:
                        gens.append(c)
                        sub = self.subgroup(gens, name)
                        changed = True
        return sub

    def derived_subgroup(self):
        gens = self.generators
        comms = []
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = perm_mul(perm_mul(perm_inv(a), perm_inv(b)), perm_mul(a, b))
                if c != tuple(range(self.degree)):
                    comms.append(c)
        return self.normal_closure(comms, f"{self.name}'")

    def sylow_subgroup(self, p):
        """A Sylow ``p``-subgroup, grown by adjoining p-elements of normalizers."""
        target = p_part(self.order, p)
        name = f"Syl{p}({self.name})" if self.name else f"Syl{p}"
        if target == 1:
            return self.subgroup([], name)
        orders = self.element_orders
        reduced = orders.copy()
        while True:
            div = reduced % p == 0
            if not div.any():
                break
            reduced[div] //= p
        p_elements = (reduced == 1) & (orders > 1)
        start = int(np.flatnonzero(orders == p)[0])
        gens = [self.element(start)]
        while True:
            sub = self.subgroup(gens, name)
            if sub.order == target:
                return sub
            inside = self.membership(sub)
            cand = np.flatnonzero(self.normalizer_mask(sub) & p_elements & ~inside)
            if not len(cand):
                raise InvariantViolation("normalizer of a non-Sylow p-subgroup has no new p-element")
            gens.append(self.element(int(cand[0])))

    # -- serialization

    def to_json(self):
        return {
            "name": self.name,
            "degree": self.degree,
            "generators": [[x + 1 for x in g] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data):
        try:
            degree = int(data["degree"])
            gens = [[int(x) - 1 for x in g] for g in data["generators"]]
            return cls(gens, degree, str(data.get("name", "")))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad group description: {exc}") from exc


def class_fusion(sub, group):
    """Map each class of ``sub`` to the class of ``group`` containing its representative."""
    group.membership(sub)
    ids = group.index.find(sub.elements[list(sub.classes.reps)])
    return [int(group.classes.class_of[i]) for i in ids]


@dataclass
class GroupFile:
    group: PermGroup
    subgroups: dict = field(default_factory=dict)
    defect_groups: list = field(default_factory=list)  # dicts with p, block, group


def read_group_file(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    group = PermGroup.from_json(data)
    subgroups = {}
    for name, gens in (data.get("subgroups") or {}).items():
        subgroups[name] = PermGroup.from_json({"name": name, "degree": group.degree, "generators": gens})
    defect_groups = []
    for entry in data.get("defect_groups") or []:
        try:
            sub = PermGroup.from_json({"name": entry.get("name", "D"), "degree": group.degree,
                                       "generators": entry["generators"]})
            defect_groups.append({"p": int(entry["p"]), "block": int(entry["block"]), "group": sub})
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad defect group entry: {exc}") from exc
    return GroupFile(group, subgroups, defect_groups)


def write_group_file(group, path):
    Path(path).write_text(json.dumps(group.to_json(), indent=1) + "\n")


def prime_factors(n):
    return sorted(factorint(n))


__all__ = [
    "PermGroup",
    "ConjClasses",
    "class_fusion",
    "stabilizer_chain",
    "read_group_file",
    "write_group_file",
    "perm_from_cycles",
    "perm_mul",
    "perm_inv",
    "perm_order",
    "p_part",
    "is_p_power",
]
