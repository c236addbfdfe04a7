"""Builtin permutation groups and a small name parser for them."""

import re
from functools import lru_cache

from sympy import factorint

from .errors import FormatError
from .gf import ExtensionField
from .permgroup import PermGroup


def _identity(n):
    return list(range(n))


def symmetric(n):
    if n < 2:
        return PermGroup([], max(n, 1), f"S{n}")
    cycle = [(i + 1) % n for i in range(n)]
    swap = _identity(n)
    swap[0], swap[1] = 1, 0
    return PermGroup([cycle, swap] if n > 2 else [swap], n, f"S{n}")


def alternating(n):
    gens = []
    for i in range(2, n):
        g = _identity(n)
        g[0], g[1], g[i] = 1, i, 0
        gens.append(g)
    return PermGroup(gens, max(n, 1), f"A{n}")


def cyclic(n):
    return PermGroup([[(i + 1) % n for i in range(n)]] if n > 1 else [], n, f"C{n}")


def dihedral(n):
    """Symmetries of the n-gon, order 2n (so ``dihedral(4)`` is D8)."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return PermGroup([rot, ref], n, f"D{2 * n}")


def quaternion():
    """Q8 in its regular representation; elements ±1, ±i, ±j, ±k coded 0..7."""
    names = ["1", "i", "j", "k"]
    table = {("1", x): (1, x) for x in names}
    table.update({(x, "1"): (1, x) for x in names})
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })

    def code(sign, name):
        return names.index(name) + (0 if sign == 1 else 4)

    def right_mult(gen):
        perm = []
        for c in range(8):
            sign, name = (1 if c < 4 else -1), names[c % 4]
            s, n = table[(name, gen)]
            perm.append(code(sign * s, n))
        return perm

    return PermGroup([right_mult("i"), right_mult("j")], 8, "Q8")


# --- groups over finite fields --------------------------------------------------

class _Field:
    """GF(q) with elements coded 0..q-1 and cached arithmetic tables."""

    def __init__(self, q):
        ((p, f),) = factorint(q).items()
        self.q, self.p = q, p
        self.F = F = ExtensionField(p, f)
        els = [F.element(c) for c in range(q)]
        code = {x: c for c, x in enumerate(els)}
        self.add = [[code[F.add(a, b)] for b in els] for a in els]
        self.mul = [[code[F.mul(a, b)] for b in els] for a in els]
        self.neg = [code[F.scale(a, p - 1)] for a in els]
        self.inv = [0] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]
        self.gen = code[F.primitive_root_of_unity(q - 1)] if q > 2 else 1

    def power(self, a, n):
        out = 1
        while n:
            if n & 1:
                out = self.mul[out][a]
            a = self.mul[a][a]
            n >>= 1
        return out

    def frobenius(self, a):
        return self.power(a, self.p) if a else 0


@lru_cache(maxsize=None)
def _field(q):
    return _Field(q)


def _moebius(k, a, b, c, d):
    """z -> (a z + b)/(c z + d) on the projective line, infinity coded as q."""
    q = k.q
    inf = q
    out = []
    for z in range(q + 1):
        if z == inf:
            num, den = a, c
        else:
            num = k.add[k.mul[a][z]][b]
            den = k.add[k.mul[c][z]][d]
        out.append(inf if den == 0 else k.mul[num][k.inv[den]])
    return out


def _line_map(k, fn):
    return [fn(z) if z < k.q else k.q for z in range(k.q + 1)]


def _psl_gens(k):
    g = k.gen
    one, zero = 1, 0
    minus = k.neg[1]
    gens = [_moebius(k, one, one, zero, one), _moebius(k, one, g, zero, one)]
    if k.p == 2:
        gens.append(_moebius(k, g, zero, zero, one))
        gens.append(_moebius(k, zero, one, one, zero))
    else:
        gens.append(_moebius(k, k.mul[g][g], zero, zero, one))
        gens.append(_moebius(k, zero, minus, one, zero))
    return gens


def psl2(q):
    k = _field(q)
    return PermGroup(_psl_gens(k), q + 1, f"PSL(2,{q})")


def pgl2(q):
    k = _field(q)
    gens = _psl_gens(k) + [_moebius(k, k.gen, 0, 0, 1)]
    return PermGroup(gens, q + 1, f"PGL(2,{q})")


def pgammal2(q):
    k = _field(q)
    gens = _psl_gens(k) + [_moebius(k, k.gen, 0, 0, 1), _line_map(k, k.frobenius)]
    return PermGroup(gens, q + 1, f"PGammaL(2,{q})")


def psigmal2(q):
    """PSL(2,q) extended by the Frobenius automorphism."""
    k = _field(q)
    gens = _psl_gens(k) + [_line_map(k, k.frobenius)]
    return PermGroup(gens, q + 1, f"PSigmaL(2,{q})")


def m10():
    """PSL(2,9) extended by z -> alpha z^3 (alpha a non-square): the group M10."""
    k = _field(9)
    twist = _line_map(k, lambda z: k.mul[k.gen][k.frobenius(z)])
    return PermGroup(_psl_gens(k) + [twist], 10, "M10")


def _matrix_group(k, mats, start, name):
    """Linear action of 2x2 matrices over GF(q) on the orbit of ``start``."""
    def apply(m, v):
        x, y = v
        return (
            k.add[k.mul[m[0][0]][x]][k.mul[m[0][1]][y]],
            k.add[k.mul[m[1][0]][x]][k.mul[m[1][1]][y]],
        )

    points = [start]
    seen = {start: 0}
    for v in points:
        for m in mats:
            w = apply(m, v)
            if w not in seen:
                seen[w] = len(points)
                points.append(w)
    gens = [[seen[apply(m, v)] for v in points] for m in mats]
    return PermGroup(gens, len(points), name)


def sl2(q):
    """SL(2,q) acting on the non-zero vectors of GF(q)^2."""
    k = _field(q)
    g = k.gen
    mats = [((1, 1), (0, 1)), ((g, 0), (0, k.inv[g])), ((0, 1), (k.neg[1], 0))]
    return _matrix_group(k, mats, (1, 0), f"SL(2,{q})")


def double_cover_pgl2_9(isoclinic=False):
    """A double cover of PGL(2,9), order 1440, inside GL(2,81).

    SL(2,9) is extended by ``x = lam * diag(alpha, 1)`` with ``lam^4 = alpha^-2``;
    ``isoclinic`` multiplies ``x`` by a square root of -1, giving the other
    group of the isoclinism pair.
    """
    k = _field(81)
    g = k.gen
    alpha = k.power(g, 10)
    ainv = k.inv[alpha]
    lam = k.power(g, 15)
    if isoclinic:
        lam = k.mul[lam][k.power(g, 20)]
    mats = [
        ((1, 1), (0, 1)),
        ((alpha, 0), (0, ainv)),
        ((0, 1), (k.neg[1], 0)),
        ((k.mul[lam][alpha], 0), (0, lam)),
    ]
    return _matrix_group(k, mats, (1, 0), "2.A6.2_2" + ("*" if isoclinic else ""))


M12_CYCLES = [
    [(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)],
    [(3, 7, 11, 8), (4, 10, 5, 6)],
    [(1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)],
]


def m12():
    return PermGroup.from_cycles(M12_CYCLES, 12, "M12")


def direct_product(a, b, name=None):
    n, m = a.degree, b.degree
    gens = [list(g) + [n + i for i in range(m)] for g in a.generators]
    gens += [list(range(n)) + [n + x for x in g] for g in b.generators]
    return PermGroup(gens, n + m, name or f"{a.name}x{b.name}")


# --- name parser ------------------------------------------------------------------

_INT = r"(\d+)"
_PATTERNS = [
    (rf"S{_INT}", lambda n: symmetric(n)),
    (rf"A{_INT}", lambda n: alternating(n)),
    (rf"C{_INT}", lambda n: cyclic(n)),
    (rf"D{_INT}", lambda n: dihedral(n // 2)),
    (r"Q8", lambda: quaternion()),
    (r"M12", lambda: m12()),
    (r"M10", lambda: m10()),
    (rf"SL\(2,{_INT}\)", lambda q: sl2(q)),
    (rf"PSL\(2,{_INT}\)", lambda q: psl2(q)),
    (rf"PGL\(2,{_INT}\)", lambda q: pgl2(q)),
    (rf"PGammaL\(2,{_INT}\)", lambda q: pgammal2(q)),
    (rf"PSigmaL\(2,{_INT}\)", lambda q: psigmal2(q)),
    (r"2\.A6\.2_2", lambda: double_cover_pgl2_9(False)),
    (r"2\.A6\.2_2\*", lambda: double_cover_pgl2_9(True)),
    (rf"metacyclic\({_INT},{_INT},{_INT},{_INT}\)", None),
    (rf"extraspecial\({_INT},{_INT}\)", None),
    (rf"wreath\({_INT},{_INT}\)", None),
]


def builtin(spec):
    """Build a group from a name such as ``S4``, ``D8``, ``PGL(2,9)``, ``wreath(2,3)``."""
    from . import pgroups

    text = spec.replace(" ", "")
    for pattern, make in _PATTERNS:
        m = re.fullmatch(pattern, text)
        if not m:
            continue
        args = [int(x) for x in m.groups()]
        if make is not None:
            return make(*args)
        if text.startswith("metacyclic"):
            return pgroups.metacyclic(pgroups.MetacyclicSpec(*args))
        if text.startswith("extraspecial"):
            return pgroups.extraspecial(*args)
        return pgroups.wreath_cyclic_symmetric(*args)
    raise FormatError(f"unknown builtin group {spec!r}")


__all__ = [
    "symmetric", "alternating", "cyclic", "dihedral", "quaternion", "sl2", "psl2", "pgl2",
    "pgammal2", "psigmal2", "m10", "m12", "double_cover_pgl2_9", "direct_product", "builtin",
]
