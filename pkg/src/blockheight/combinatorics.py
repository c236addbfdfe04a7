"""Partitions, hooks, cores on the abacus, and character degrees of C_d wr S_a."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial, prod

PARTITION_LIMIT = 60


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts if int(x) != 0)
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts):
        return tuple.__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def conjugate(self):
        out = []
        i = len(self)
        for j in range(self[0] if self else 0):
            while self[i - 1] <= j:
                i -= 1
            out.append(i)
        return Partition._trusted(out)

    def __repr__(self):
        return f"Partition{tuple(self)}"


def nu(n, ell):
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def legendre(n, ell):
    """nu_ell(n!)."""
    total, power = 0, ell
    while power <= n:
        total += n // power
        power *= ell
    return total


@lru_cache(maxsize=None)
def _partitions(n, largest):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n):
    """All partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > PARTITION_LIMIT:
        raise ValueError(f"partition enumeration is capped at n <= {PARTITION_LIMIT}")
    return [Partition._trusted(p) for p in _partitions(n, n)]


def _as_partition(lam):
    return lam if isinstance(lam, Partition) else Partition(lam)


def hook_lengths(lam):
    """Hook lengths arm + leg + 1, row by row."""
    lam = _as_partition(lam)
    conj = lam.conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def degree_sn(lam):
    """Degree of the irreducible character of S_n labelled by ``lam`` (hook length formula)."""
    lam = _as_partition(lam)
    degree, rem = divmod(factorial(lam.size), prod(hook_lengths(lam)))
    if rem:
        raise ArithmeticError("hook product does not divide n!")
    return degree


def sn_valuation(lam, ell):
    """nu_ell of the S_n degree, from Legendre's formula and the hook lengths only."""
    lam = _as_partition(lam)
    return legendre(lam.size, ell) - sum(nu(h, ell) for h in hook_lengths(lam) if h % ell == 0)


def degree_sn_valuation(lam, ell):
    """``(degree, nu_ell(degree))``; the valuation is also computed via Legendre and cross-checked."""
    lam = _as_partition(lam)
    degree = degree_sn(lam)
    v = legendre(lam.size, ell) - sum(nu(h, ell) for h in hook_lengths(lam))
    if v != nu(degree, ell):
        raise ArithmeticError("valuation bookkeeping disagrees with the degree")
    return degree, v


# --- abacus ----------------------------------------------------------------------

def _beta(lam, ell):
    beads = len(lam) + (-len(lam)) % ell
    parts = list(lam) + [0] * (beads - len(lam))
    return [parts[i] + beads - 1 - i for i in range(beads)]


def _from_beta(beta):
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return Partition._trusted(tuple(x for x in (b - (n - 1 - i) for i, b in enumerate(beta)) if x))


def abacus(lam, ell):
    """Bead positions on each of the ``ell`` runners (levels, ascending)."""
    runners = [[] for _ in range(ell)]
    for b in sorted(_beta(Partition(lam), ell)):
        runners[b % ell].append(b // ell)
    return runners


def ell_core(lam, ell):
    """Slide every bead up its runner; what remains is the ell-core."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    runners = abacus(lam, ell)
    beta = [r + ell * level for r, beads in enumerate(runners) for level in range(len(beads))]
    return _from_beta(beta)


def ell_quotient(lam, ell):
    """The ell-quotient, one partition per runner."""
    out = []
    for beads in abacus(lam, ell):
        out.append(_from_beta(beads))
    return tuple(out)


def ell_weight(lam, ell):
    return (Partition(lam).size - ell_core(lam, ell).size) // ell


def is_ell_core(lam, ell):
    return all(h % ell for h in hook_lengths(lam))


def core_existence(a, ell):
    """``(b, mu)`` with ell <= b < 2 ell, b = a mod ell and mu an ell-core of size b; or None."""
    if not ell <= a < ell * ell:
        raise ValueError("need ell <= a < ell^2")
    for b in range(ell, 2 * ell):
        if (a - b) % ell:
            continue
        for mu in partitions(b):
            if is_ell_core(mu, ell):
                return b, mu
    return None


def multipartitions(w, k):
    """All k-tuples of partitions of total size w."""
    out = []
    for sizes in _compositions(w, k):
        out.extend(product(*(partitions(s) for s in sizes)))
    return out


def partitions_with_core(core, w, ell):
    """Partitions with ell-core ``core`` and weight ``w``, built from ell-quotients on the abacus."""
    core = Partition(core)
    levels = -(-len(core) // ell) + w
    beta = _beta(core + (0,) * (levels * ell - len(core)), ell)
    counts = [0] * ell
    for b in beta:
        counts[b % ell] += 1
    out = []
    for quotient in multipartitions(w, ell):
        new = []
        for r, q in enumerate(quotient):
            c = counts[r]
            padded = list(q) + [0] * (c - len(q))
            new.extend(r + ell * (padded[i] + c - 1 - i) for i in range(c))
        out.append(_from_beta(new))
    return sorted(out, reverse=True)


def nakayama_blocks(n, ell):
    """Partition of Irr(S_n): core -> list of partitions with that ell-core."""
    blocks = {}
    for lam in partitions(n):
        blocks.setdefault(ell_core(lam, ell), []).append(lam)
    return blocks


def nakayama_labels(n, ell):
    return {lam: ell_core(lam, ell) for lam in partitions(n)}


# --- wreath products -----------------------------------------------------------

@dataclass(frozen=True)
class WreathLabel:
    components: tuple  # d partitions

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(Partition(c) for c in self.components))

    @property
    def d(self):
        return len(self.components)

    @property
    def size(self):
        return sum(c.size for c in self.components)

    def to_json(self):
        return [list(c) for c in self.components]


def _compositions(a, d):
    if d == 1:
        yield (a,)
        return
    for first in range(a, -1, -1):
        for rest in _compositions(a - first, d - 1):
            yield (first,) + rest


def wreath_labels(d, a):
    """All d-tuples of partitions of total size a."""
    out = []
    for sizes in _compositions(a, d):
        for combo in product(*(partitions(s) for s in sizes)):
            out.append(WreathLabel(combo))
    return out


def wreath_degree(label):
    """multinomial(a; |lam_1|, ..., |lam_d|) * prod degree_sn(lam_i)."""
    a = label.size
    multinomial = factorial(a)
    for c in label.components:
        multinomial //= factorial(c.size)
    return multinomial * prod(degree_sn(c) for c in label.components)


def wreath_degree_valuation(label, ell):
    degree = wreath_degree(label)
    v = legendre(label.size, ell) - sum(legendre(c.size, ell) for c in label.components)
    v += sum(degree_sn_valuation(c, ell)[1] for c in label.components)
    if v != nu(degree, ell):
        raise ArithmeticError("valuation bookkeeping disagrees with the degree")
    return degree, v


def check_unipdef(d, a, ell):
    """A label of C_d wr S_a whose degree has ell-part exactly ell, or None."""
    if (d**a * factorial(a)) % ell:
        raise ValueError(f"{ell} does not divide |C_{d} wr S_{a}|")
    for label in wreath_labels(d, a):
        if wreath_degree_valuation(label, ell)[1] == 1:
            return label
    return None


def unipdef_grid(ds=range(1, 5), as_=range(2, 8), ells=(2, 3, 5, 7)):
    """``{(d, a, ell): witness or None}`` over every admissible triple."""
    out = {}
    for d in ds:
        for a in as_:
            for ell in ells:
                if (d**a * factorial(a)) % ell == 0:
                    out[(d, a, ell)] = check_unipdef(d, a, ell)
    return out


def height_zero_ell_part(ell):
    """Check the height-zero bookkeeping for S_a, ell <= a < ell^2.

    For each a and each ell-core mu of size b in [ell, 2 ell) with b = a mod
    ell, every character of height zero in the block labelled by mu must have
    degree with ell-part exactly ell.  Returns the counterexamples found.
    """
    bad = []
    for b in range(ell, 2 * ell):
        cores = [mu for mu in partitions(b) if is_ell_core(mu, ell)]
        for a in range(b, ell * ell, ell):
            w = (a - b) // ell
            for mu in cores:
                vals = {lam: sn_valuation(lam, ell) for lam in partitions_with_core(mu, w, ell)}
                low = min(vals.values())
                bad.extend((a, mu, lam) for lam, v in vals.items() if v == low and v != 1)
    return bad


__all__ = [
    "Partition",
    "partitions",
    "hook_lengths",
    "degree_sn",
    "degree_sn_valuation",
    "sn_valuation",
    "abacus",
    "ell_core",
    "ell_quotient",
    "ell_weight",
    "is_ell_core",
    "core_existence",
    "nakayama_blocks",
    "multipartitions",
    "partitions_with_core",
    "WreathLabel",
    "wreath_labels",
    "wreath_degree",
    "wreath_degree_valuation",
    "check_unipdef",
    "unipdef_grid",
    "height_zero_ell_part",
]
