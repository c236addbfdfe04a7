"""Ordinary character tables.

``dixon_schneider`` computes the table of an enumerable permutation group by
splitting common eigenspaces of the class-sum matrices over a prime field F_q
with q = 1 (mod exponent), then lifting degrees and eigenvalue multiplicities
back to integers.  Tables can also be read from JSON so that groups beyond the
enumeration cap can still be analysed.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path

import numpy as np
from sympy import sqrt_mod

from . import kernels
from .cyclotomic import Cyclotomic, unit_group_generators
from .errors import (
    EigenspaceSplitFailure,
    FormatError,
    InvariantViolation,
    NoSuitablePrime,
    NonIntegralMultiplicity,
)
from .gf import (
    charpoly_mod,
    dixon_primes,
    matmul_mod,
    nullspace_mod,
    primes_congruent_one,
    root_of_unity_mod,
    roots_mod,
    rref_mod,
)


@dataclass(eq=False)
class CharacterTable:
    name: str
    order: int
    exponent: int
    class_sizes: tuple
    element_orders: tuple
    power_maps: np.ndarray  # (exponent, h)
    irreducibles: list  # rows of Cyclotomic, column 0 = identity class

    @property
    def degrees(self):
        return [int(row[0]) for row in self.irreducibles]

    def __len__(self):
        return len(self.irreducibles)

    @property
    def num_classes(self):
        return len(self.class_sizes)

    @property
    def inverse_classes(self):
        return [int(c) for c in self.power_maps[-1]]

    def __eq__(self, other):
        if not isinstance(other, CharacterTable):
            return NotImplemented
        return (
            self.order == other.order
            and self.exponent == other.exponent
            and tuple(self.class_sizes) == tuple(other.class_sizes)
            and tuple(self.element_orders) == tuple(other.element_orders)
            and np.array_equal(self.power_maps, other.power_maps)
            and self.irreducibles == other.irreducibles
        )

    def inner_product(self, a, b):
        """``<a, b>`` for class functions given as rows of Cyclotomic; a Fraction."""
        total = Cyclotomic.integer(0, self.exponent)
        for s, x, y in zip(self.class_sizes, a, b):
            total = total + x * y.conjugate() * s
        if not total.is_integer():
            raise InvariantViolation("inner product is not rational")
        return Fraction(int(total), self.order)

    def validate(self):
        """Re-check every table invariant exactly; raises ``InvariantViolation``."""
        _validate(self)
        return self

    # -- serialization

    def to_json(self):
        e = self.exponent
        return {
            "name": self.name,
            "order": self.order,
            "exponent": e,
            "classes": [
                {
                    "size": int(self.class_sizes[j]),
                    "order": int(self.element_orders[j]),
                    "powermaps": {str(k): int(self.power_maps[k, j]) for k in range(e)},
                }
                for j in range(self.num_classes)
            ],
            "irreducibles": [[v.lift(e).to_pairs() for v in row] for row in self.irreducibles],
        }

    @classmethod
    def from_json(cls, data):
        try:
            e = int(data["exponent"])
            classes = data["classes"]
            h = len(classes)
            sizes = tuple(int(c["size"]) for c in classes)
            orders = tuple(int(c["order"]) for c in classes)
            maps = [{int(k): int(v) for k, v in c.get("powermaps", {}).items()} for c in classes]
            power_maps = _complete_power_maps(maps, orders, e)
            rows = [[Cyclotomic.from_pairs(e, pairs) for pairs in row] for row in data["irreducibles"]]
            table = cls(str(data.get("name", "")), int(data["order"]), e, sizes, orders, power_maps, rows)
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad character table: {exc}") from exc
        if any(len(row) != h for row in rows):
            raise FormatError("every character needs one value per class")
        return table

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)


def export_table(table, path):
    Path(path).write_text(table.dumps() + "\n")


def import_table(path):
    """Read a table file and re-validate it (orthogonality, degree sum)."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return CharacterTable.from_json(data).validate()


def _complete_power_maps(maps, orders, e):
    """Fill power maps for every k in 0..e-1 from those given (at least the primes dividing e)."""
    h = len(maps)
    out = np.zeros((e, h), dtype=np.int64)
    known = {}
    for k in range(e):
        if all(k in m for m in maps):
            known[k] = [m[k] for m in maps]
    known.setdefault(1, list(range(h)))
    known.setdefault(0, [0] * h)
    for k in range(2, e):
        if k in known:
            continue
        f = next((d for d in range(2, k + 1) if k % d == 0), k)
        if f not in known or (k // f) not in known:
            raise FormatError(f"power map for {k} missing and not derivable")
        first = known[f]
        known[k] = [known[k // f][first[j]] for j in range(h)]
    for k in range(e):
        out[k] = known[k]
    return out


# --- validation ----------------------------------------------------------------

def _validate(t):
    h = t.num_classes
    if len(t.irreducibles) != h:
        raise InvariantViolation(f"{len(t.irreducibles)} characters for {h} classes")
    if sum(t.class_sizes) != t.order or any(t.order % s for s in t.class_sizes):
        raise InvariantViolation("class sizes do not partition the group")
    if t.class_sizes[0] != 1 or t.element_orders[0] != 1:
        raise InvariantViolation("class 0 must be the identity")
    if any(t.exponent % o for o in t.element_orders):
        raise InvariantViolation("element orders must divide the exponent")
    pm = np.asarray(t.power_maps)
    if pm.shape != (t.exponent, h) or any(pm[1 % t.exponent, j] != j for j in range(h)):
        raise InvariantViolation("power map 1 must be the identity")
    degrees = []
    for row in t.irreducibles:
        if not row[0].is_integer() or int(row[0]) <= 0:
            raise InvariantViolation("degrees must be positive integers")
        degrees.append(int(row[0]))
    if sum(d * d for d in degrees) != t.order:
        raise InvariantViolation(f"sum of squared degrees {sum(d * d for d in degrees)} != {t.order}")
    if any(t.order % d for d in degrees):
        raise InvariantViolation("a degree does not divide the group order")
    e = t.exponent
    # intern the values: every check below works on integer ids into ``distinct``
    lookup, distinct = {}, []
    ids = np.empty((h, h), dtype=np.int64)
    for i, row in enumerate(t.irreducibles):
        for j, v in enumerate(row):
            v = v.lift(e)
            k = lookup.get(v)
            if k is None:
                k = lookup[v] = len(distinct)
                distinct.append(v)
            ids[i, j] = k
    for u in unit_group_generators(e):
        perm = np.array([int(c) for c in pm[u]], dtype=np.int64)
        if sorted(perm.tolist()) != list(range(h)) or any(
                t.class_sizes[perm[j]] != t.class_sizes[j] for j in range(h)):
            raise InvariantViolation(f"power map {u} is not a size-preserving permutation")
        image = np.array([lookup.get(v.galois(u), -1) for v in distinct], dtype=np.int64)
        if not np.array_equal(image[ids], ids[:, perm]):
            raise InvariantViolation("character values are not compatible with the power maps")
    _check_orthogonality(ids, distinct, t.class_sizes, t.order, e)


def _check_orthogonality(ids, distinct, sizes, order, e):
    """Exact first orthogonality.

    Galois compatibility (checked by the caller) makes every inner product a
    rational integer S.  By Cauchy-Schwarz |S| <= max_i sum_j |K_j| l1(chi_i(g_j))^2,
    so agreement modulo primes whose product exceeds 2*(bound + |G|) forces equality.
    """
    h = len(sizes)
    norms = np.array([v.l1_norm() ** 2 for v in distinct], dtype=object)
    s = np.array(sizes, dtype=object)
    bound = int((norms[ids] * s).sum(axis=1).max()) if h else 0
    need = 2 * (bound + order)
    modulus = 1
    above = max(e, 1 << 20)
    while modulus <= need:
        (q,) = primes_congruent_one(e, above)
        above = q
        if q >= 1 << 25:
            raise NoSuitablePrime("orthogonality check needs primes below 2**25")
        modulus *= q
        z = root_of_unity_mod(e, q)
        zpow = [pow(z, k, q) for k in range(e)]
        res = np.empty(len(distinct), dtype=np.int64)
        res_bar = np.empty(len(distinct), dtype=np.int64)
        for n, v in enumerate(distinct):
            a = b = 0
            for k, c in v.terms:
                a += c * zpow[k]
                b += c * zpow[-k % e]
            res[n], res_bar[n] = a % q, b % q
        y, ybar = res[ids], res_bar[ids]
        sq = np.array([x % q for x in sizes], dtype=np.int64)
        gram = matmul_mod(y * sq % q, ybar.T, q)
        expected = np.eye(h, dtype=np.int64) * (order % q)
        if not np.array_equal(gram, expected):
            raise InvariantViolation("first orthogonality relation fails")


# --- Dixon-Schneider -----------------------------------------------------------

def _split(space, pivots, mat, q):
    """Split the M-invariant subspace with RREF basis ``space`` into eigenspaces of M.

    Returns ``(basis, pivot columns)`` pairs.
    """
    k = len(space)
    a = matmul_mod(mat[pivots, :] % q, space.T, q)
    if np.array_equal(a, np.eye(k, dtype=np.int64) * a[0, 0]):
        return [(space, pivots)]
    pieces = []
    for lam in roots_mod(charpoly_mod(a, q), q):
        vecs = nullspace_mod((a - lam * np.eye(k, dtype=np.int64)) % q, q)
        if len(vecs):
            piece, piv = rref_mod(matmul_mod(vecs, space, q), q)
            pieces.append((piece, list(piv)))
    if sum(len(p) for p, _ in pieces) != k:
        raise EigenspaceSplitFailure("class matrix is not diagonalizable on an invariant subspace")
    return pieces


def central_characters_mod(group, q):
    """All central characters as rows ``omega(K_j) mod q`` (unsorted)."""
    cc = group.classes
    h = len(cc)
    members = np.argsort(cc.class_of, kind="stable")
    bounds = np.cumsum((0,) + cc.sizes)
    inv_ids = group.inverse_ids
    spaces = [(np.eye(h, dtype=np.int64), list(range(h)))] if h > 1 else []
    done = [np.eye(h, dtype=np.int64)[0]] if h == 1 else []
    # cheap splits first: small classes, then low element order
    schedule = sorted(range(1, h), key=lambda j: (cc.sizes[j], cc.element_orders[j], j))
    for j in schedule:
        if not spaces:
            break
        xs = inv_ids[members[bounds[j]:bounds[j + 1]]]
        mat = kernels.class_matrix(group.index, cc.class_of, xs, cc.reps, h)
        nxt = []
        for s, piv in spaces:
            for piece, ppiv in _split(s, piv, mat, q):
                if len(piece) == 1:
                    done.append(piece[0])
                else:
                    nxt.append((piece, ppiv))
        spaces = nxt
    if spaces:
        raise EigenspaceSplitFailure("common eigenspaces did not become one-dimensional")
    return np.array(done, dtype=np.int64).reshape(len(done), h)


def dixon_schneider(group, prime=None, validate=True):
    """Character table of an enumerable permutation group."""
    cc = group.classes
    h = len(cc)
    n = group.order
    e = cc.exponent
    if prime is None:
        (q,) = dixon_primes(e, n)
    else:
        q = prime
        if (q - 1) % e or q <= 2 * isqrt(n):
            raise NoSuitablePrime(f"{q} is not admissible for exponent {e}, order {n}")
    omegas = central_characters_mod(group, q)
    inv = np.asarray(cc.inverse_classes)
    size_inv = np.array([pow(int(s), -1, q) for s in cc.sizes], dtype=np.int64)

    degrees = []
    for w in omegas:
        s = int(((w * w[inv]) % q * size_inv % q).sum() % q)
        target = n * pow(s, -1, q) % q
        roots = sqrt_mod(target, q, all_roots=True) or []
        d = min((r for r in roots if r <= q // 2), default=0)
        if d < 1 or d * d > n or n % d:
            raise InvariantViolation(f"degree lift failed (square {target} mod {q})")
        degrees.append(d)
    degrees = np.array(degrees, dtype=np.int64)
    # character values mod q
    values = degrees[:, None] * omegas % q * size_inv[None, :] % q

    z = root_of_unity_mod(e, q)
    rows = [[None] * h for _ in range(h)]
    by_order = {}
    for j, o in enumerate(cc.element_orders):
        by_order.setdefault(o, []).append(j)
    for o, cls in by_order.items():
        zo = pow(z, e // o, q)
        zinv = pow(zo, -1, q)
        dft = np.array([[pow(zinv, (k * t) % o, q) for k in range(o)] for t in range(o)], dtype=np.int64)
        o_inv = pow(o, -1, q)
        step = e // o
        cache = {}
        units = [u for u in range(1, o) if gcd(u, o) == 1] if o > 1 else [0]
        ks = np.arange(o)
        for j in cls:
            if rows[0][j] is not None:
                continue
            powers = cc.power_maps[:o, j]
            mult = matmul_mod(values[:, powers], dft, q) * o_inv % q
            if (mult.max(axis=1) > degrees).any() or (mult.sum(axis=1) != degrees).any():
                raise InvariantViolation("eigenvalue multiplicities do not lift")
            # g^u for a unit u permutes the eigenvalues: multiplicity of z^(ku) is m_k
            for u in units:
                target = int(cc.power_maps[u, j])
                if rows[0][target] is not None:
                    continue
                m = mult[:, ks * pow(u, -1, o) % o] if u > 1 else mult
                # rows with a single eigenvalue (d * z^k) are keyed cheaply by (k, d)
                single = np.count_nonzero(m, axis=1) == 1
                top = m.argmax(axis=1)
                for i in range(h):
                    key = (int(top[i]), int(degrees[i])) if single[i] else m[i].tobytes()
                    value = cache.get(key)
                    if value is None:
                        nz = np.flatnonzero(m[i])
                        value = Cyclotomic(e, {int(k) * step: int(m[i, k]) for k in nz})
                        cache[key] = value
                    rows[i][target] = value

    def key(i):
        trivial = all(v == 1 for v in rows[i])
        return (not trivial, int(degrees[i]), [v.sort_key() for v in rows[i]])

    order = sorted(range(h), key=key)
    table = CharacterTable(
        name=group.name,
        order=n,
        exponent=e,
        class_sizes=tuple(cc.sizes),
        element_orders=tuple(cc.element_orders),
        power_maps=np.array(cc.power_maps),
        irreducibles=[rows[i] for i in order],
    )
    if validate:
        table.validate()
    return table


def character_table(group, prime=None):
    """Cached ``dixon_schneider`` for a group object."""
    cache = group.__dict__.setdefault("_tables", {})
    if prime not in cache:
        cache[prime] = dixon_schneider(group, prime)
    return cache[prime]


# --- restriction -----------------------------------------------------------------

def restrict(chi, fusion, sub_table):
    """Decompose the restriction of ``chi`` (a row of values) to a subgroup.

    Returns ``{sub character index: multiplicity}`` with zero entries omitted.
    """
    e = sub_table.exponent
    fused = [chi[fusion[j]] for j in range(sub_table.num_classes)]
    big = max(v.e for v in fused)
    out = {}
    for idx, psi in enumerate(sub_table.irreducibles):
        total = Cyclotomic.integer(0, big)
        for s, x, y in zip(sub_table.class_sizes, fused, psi):
            total = total + x * y.lift(big * e // gcd(big, e)).conjugate() * s
        if not total.is_integer():
            raise NonIntegralMultiplicity(f"restriction onto character {idx} is not rational")
        m, r = divmod(int(total), sub_table.order)
        if r or m < 0:
            raise NonIntegralMultiplicity(f"multiplicity {Fraction(int(total), sub_table.order)}")
        if m:
            out[idx] = m
    degree = int(chi[0])
    if sum(m * sub_table.degrees[i] for i, m in out.items()) != degree:
        raise NonIntegralMultiplicity("restricted degrees do not add up")
    return out


def fusion_is_consistent(fusion, sub_table, table):
    """Element orders agree along the fusion."""
    return all(sub_table.element_orders[j] == table.element_orders[fusion[j]] for j in range(len(fusion)))


def degree_multiset(table):
    out = {}
    for d in table.degrees:
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def is_abelian_table(table):
    return all(d == 1 for d in table.degrees)


__all__ = [
    "CharacterTable",
    "dixon_schneider",
    "character_table",
    "import_table",
    "export_table",
    "restrict",
    "degree_multiset",
]
