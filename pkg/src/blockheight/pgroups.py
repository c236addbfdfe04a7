"""p-group families as permutation groups, and the minimal non-linear height mh(P)."""

import math
from dataclasses import dataclass

from .chartable import character_table
from .errors import BadActionParameter, CapExceeded, InvariantViolation, NotAPGroup
from .permgroup import PermGroup, default_cap, is_p_power, perm_inv, perm_mul

INF = math.inf


@dataclass(frozen=True)
class MetacyclicSpec:
    """<x, y | x^(p^m) = y^(p^n) = 1, x^y = x^r>."""

    p: int
    m: int
    n: int
    r: int

    def check(self):
        p, m, n, r = self.p, self.m, self.n, self.r
        if m < 1 or n < 1:
            raise BadActionParameter("m and n must be positive")
        big = p**m
        if math.gcd(r, p) != 1 or pow(r, p**n, big) != 1 % big:
            raise BadActionParameter(f"r={r} does not satisfy r^(p^n) = 1 mod p^m")

    @property
    def order(self):
        return self.p ** (self.m + self.n)

    @property
    def is_abelian(self):
        return self.r % self.p**self.m == 1 % self.p**self.m

    def label(self):
        return f"metacyclic({self.p},{self.m},{self.n},{self.r % self.p ** self.m})"


def metacyclic(spec):
    """Split metacyclic group on p^m + p^n points.

    x translates Z/p^m and fixes the second block; y multiplies Z/p^m by r and
    cycles the p^n points of the second block.
    """
    spec.check()
    big, small = spec.p**spec.m, spec.p**spec.n
    x = [(i + 1) % big for i in range(big)] + [big + j for j in range(small)]
    y = [(spec.r * i) % big for i in range(big)] + [big + (j + 1) % small for j in range(small)]
    group = PermGroup([x, y], big + small, spec.label())
    if _power(x, big) != _ident(len(x)) or _power(y, small) != _ident(len(y)):
        raise InvariantViolation("generator orders are wrong")
    if perm_mul(perm_mul(perm_inv(y), x), y) != _power(x, spec.r % big):
        raise InvariantViolation("conjugation relation fails")
    if group.order != spec.order:
        raise InvariantViolation(f"order {group.order} != {spec.order}")
    return group


def _ident(n):
    return tuple(range(n))


def _power(g, k):
    out = _ident(len(g))
    for _ in range(k):
        out = perm_mul(out, g)
    return out


def extraspecial(p, kind):
    """Extraspecial group of order p^3.

    For odd p, ``kind`` 1 is exponent p (unitriangular affine maps on p^2
    points) and ``kind`` 2 is exponent p^2 (metacyclic with r = 1 + p).
    For p = 2, kind 1 is D8 and kind 2 is Q8.
    """
    if kind not in (1, 2):
        raise BadActionParameter("kind must be 1 or 2")
    if p == 2:
        if kind == 1:
            return metacyclic(MetacyclicSpec(2, 2, 1, 3))
        from .groups import quaternion

        return quaternion()
    if kind == 2:
        g = metacyclic(MetacyclicSpec(p, 2, 1, 1 + p))
        g.name = f"extraspecial({p},2)"
        return g
    # points (u, v) coded u + p*v
    a = [((u + v) % p) + p * v for v in range(p) for u in range(p)]
    b = [u + p * ((v + 1) % p) for v in range(p) for u in range(p)]
    return PermGroup([a, b], p * p, f"extraspecial({p},1)")


def wreath_cyclic_symmetric(d, a, cap=None):
    """C_d wr S_a acting imprimitively on d*a points (point (i, j) -> i*d + j)."""
    if d < 1 or a < 1:
        raise ValueError("d and a must be positive")
    cap = default_cap() if cap is None else cap
    order = d**a * math.factorial(a)
    if order > cap:
        raise CapExceeded(f"C{d} wr S{a} has order {order} > cap {cap}")
    n = d * a
    gens = []
    if d > 1:
        gens.append([(j + 1) % d if i == 0 else i * d + j for i in range(a) for j in range(d)])
    if a > 1:
        gens.append([((i + 1) % 2 if i < 2 else i) * d + j for i in range(a) for j in range(d)])
    if a > 2:
        gens.append([((i + 1) % a) * d + j for i in range(a) for j in range(d)])
    return PermGroup(gens, n, f"wreath({d},{a})")


def _mh_from_degrees(degrees, p):
    nonlinear = [d for d in degrees if d > 1]
    if not nonlinear:
        return INF
    low = min(nonlinear)
    k = round(math.log(low, p))
    if p**k != low:
        raise InvariantViolation(f"degree {low} is not a power of {p}")
    return k


def mh_from_table(table, p):
    if not is_p_power(table.order, p):
        raise NotAPGroup(f"order {table.order} is not a power of {p}")
    if any(not is_p_power(d, p) for d in table.degrees):
        raise InvariantViolation("a p-group has a degree that is not a p-power")
    return _mh_from_degrees(table.degrees, p)


def mh_pgroup(group, p):
    """log_p of the least non-linear degree of the p-group ``group``; inf if abelian."""
    if not is_p_power(group.order, p):
        raise NotAPGroup(f"order {group.order} is not a power of {p}")
    table = character_table(group)
    linear = sum(1 for d in table.degrees if d == 1)
    derived = group.derived_subgroup()
    if linear * derived.order != group.order:
        raise InvariantViolation(f"{linear} linear characters but [P:P'] = {group.order // derived.order}")
    mh = mh_from_table(table, p)
    if (mh == INF) != group.is_abelian:
        raise InvariantViolation("abelian test disagrees with the character degrees")
    return mh


def split_metacyclic_family(p, max_order, one_per_subgroup=False):
    """Every non-abelian split metacyclic spec with p^(m+n) <= max_order.

    With ``one_per_subgroup`` only one r is kept per cyclic subgroup <r> of the
    unit group, which already represents each isomorphism type.
    """
    out = []
    total = 2
    while p**total <= max_order:
        for m in range(1, total):
            n = total - m
            big = p**m
            seen = set()
            for r in range(2, big):
                spec = MetacyclicSpec(p, m, n, r)
                if math.gcd(r, p) != 1 or pow(r, p**n, big) != 1:
                    continue
                if one_per_subgroup:
                    span = frozenset(pow(r, k, big) for k in range(big))
                    if span in seen:
                        continue
                    seen.add(span)
                out.append(spec)
        total += 1
    return out


def orbit_witness(spec):
    """The mechanism behind mh(P) = 1 for metacyclic P.

    P acts on Irr(<x>) = {theta_k} through y: theta_k -> theta_{k r}.  Starting
    from the faithful theta_1 with orbit length p^a > 1, the power theta_k with
    k = p^(a-1) has orbit length exactly p.  Returns ``(k, orbit length)`` or
    ``None`` when P is abelian.
    """
    spec.check()
    big = spec.p**spec.m

    def orbit(k):
        seen = {k % big}
        cur = k % big
        while True:
            cur = cur * spec.r % big
            if cur in seen:
                return seen
            seen.add(cur)

    length = len(orbit(1))
    if length == 1:
        return None
    a = round(math.log(length, spec.p))
    k = spec.p ** (a - 1)
    return k, len(orbit(k))


__all__ = [
    "MetacyclicSpec",
    "metacyclic",
    "extraspecial",
    "wreath_cyclic_symmetric",
    "mh_pgroup",
    "mh_from_table",
    "split_metacyclic_family",
    "orbit_witness",
]
