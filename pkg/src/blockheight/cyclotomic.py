"""Exact arithmetic in Z[zeta_e].

Values are kept in the power basis ``1, z, ..., z^(phi(e)-1)`` modulo the
``e``-th cyclotomic polynomial.  That basis is a Z-basis of the ring of
integers, so a value is an algebraic integer exactly when its stored
coefficients are integers, and two values are equal exactly when their stored
coefficients agree.
"""

import cmath
from functools import lru_cache
from math import gcd, lcm

from sympy import Poly, cyclotomic_poly, symbols

_X = symbols("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e):
    """Coefficients of the ``e``-th cyclotomic polynomial, constant term first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, _X), _X).all_coeffs()))


@lru_cache(maxsize=None)
def _reduction(e):
    """``rows[k]`` = power-basis coordinates of ``z^k`` for ``0 <= k < e`` (sparse)."""
    phi = cyclotomic_coeffs(e)
    d = len(phi) - 1
    rows = [((k, 1),) for k in range(d)]
    cur = [0] * d
    cur[d - 1] = 1  # z^(d-1)
    for _ in range(d, e):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
    return d, tuple(rows)


def phi_degree(e):
    return len(cyclotomic_coeffs(e)) - 1


def _canon(e, raw):
    d, rows = _reduction(e)
    acc = {}
    for k, c in raw:
        if not c:
            continue
        k %= e
        if k < d:
            acc[k] = acc.get(k, 0) + c
        else:
            for i, v in rows[k]:
                acc[i] = acc.get(i, 0) + c * v
    return tuple(sorted((k, c) for k, c in acc.items() if c))


class Cyclotomic:
    """An element ``sum c_k zeta_e^k`` of ``Z[zeta_e]``; immutable."""

    __slots__ = ("e", "terms", "_hash")

    def __init__(self, e, coeffs=()):
        if e < 1:
            raise ValueError("modulus must be positive")
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        self.e = int(e)
        self.terms = _canon(self.e, ((int(k), int(c)) for k, c in items))
        self._hash = None

    @classmethod
    def _raw(cls, e, terms):
        obj = object.__new__(cls)
        obj.e = e
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def integer(cls, n, e=1):
        return cls._raw(e, ((0, int(n)),) if n else ())

    @classmethod
    def zeta(cls, e, k=1):
        return cls(e, {k: 1})

    @classmethod
    def from_pairs(cls, e, pairs):
        """From ``[[coeff, exponent], ...]`` as used in table files."""
        return cls(e, [(k, c) for c, k in pairs])

    def to_pairs(self):
        return [[c, k] for k, c in self.terms]

    # -- conversion

    def lift(self, e):
        """The same value with modulus ``e`` (a multiple of the current one)."""
        if e == self.e:
            return self
        if e % self.e:
            raise ValueError(f"cannot lift modulus {self.e} to {e}")
        step = e // self.e
        return Cyclotomic(e, [(k * step, c) for k, c in self.terms])

    def _common(self, other):
        if isinstance(other, int):
            return self, Cyclotomic.integer(other, self.e)
        if not isinstance(other, Cyclotomic):
            return None, None
        if other.e == self.e:
            return self, other
        e = lcm(self.e, other.e)
        return self.lift(e), other.lift(e)

    def is_integer(self):
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.terms[0][1] if self.terms else 0

    def __bool__(self):
        return bool(self.terms)

    def __complex__(self):
        w = 2j * cmath.pi / self.e
        return sum((c * cmath.exp(w * k) for k, c in self.terms), 0j)

    def l1_norm(self):
        return sum(abs(c) for _, c in self.terms)

    # -- arithmetic

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        acc = dict(a.terms)
        for k, c in b.terms:
            acc[k] = acc.get(k, 0) + c
        return Cyclotomic._raw(a.e, tuple(sorted((k, c) for k, c in acc.items() if c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.e, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Cyclotomic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Cyclotomic._raw(self.e, ())
            return Cyclotomic._raw(self.e, tuple((k, c * other) for k, c in self.terms))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        if a.is_integer():
            return b * int(a)
        if b.is_integer():
            return a * int(b)
        raw = {}
        for i, x in a.terms:
            for j, y in b.terms:
                k = i + j
                raw[k] = raw.get(k, 0) + x * y
        return Cyclotomic._raw(a.e, _canon(a.e, raw.items()))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = Cyclotomic.integer(1, self.e)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, n):
        """Divide by a non-zero integer; ``ArithmeticError`` unless the quotient is integral."""
        n = int(n)
        if not n:
            raise ZeroDivisionError
        out = []
        for k, c in self.terms:
            q, r = divmod(c, n)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {n}")
            out.append((k, q))
        return Cyclotomic._raw(self.e, tuple(out))

    def galois(self, t):
        """Image under ``zeta -> zeta^t`` (``t`` coprime to ``e``)."""
        if gcd(t, self.e) != 1:
            raise ValueError(f"{t} is not a unit modulo {self.e}")
        if self.is_integer():
            return self
        return Cyclotomic._raw(self.e, _canon(self.e, ((k * t, c) for k, c in self.terms)))

    def conjugate(self):
        return self.galois(-1)

    # -- comparison

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(int(self)) if self.is_integer() else hash((self.e, self.terms))
        return self._hash

    def sort_key(self):
        return (self.e, self.terms)

    def __repr__(self):
        return f"Cyclotomic({self.e}, {dict(self.terms)})"

    def __str__(self):
        if self.is_integer():
            return str(int(self))
        parts = []
        for k, c in self.terms:
            mono = "1" if k == 0 else f"E({self.e})" + (f"^{k}" if k > 1 else "")
            if k == 0:
                text = str(abs(c))
            elif abs(c) == 1:
                text = mono
            else:
                text = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(s + t for s, t in parts[1:])


def unit_group_generators(e):
    """A small generating set of ``(Z/e)^*``, chosen greedily in increasing order."""
    units = [t for t in range(1, e) if gcd(t, e) == 1] or [0]
    span = {1 % e}
    gens = []
    for t in units:
        if t in span:
            continue
        gens.append(t)
        frontier = list(span)
        for x in frontier:
            y = x * t % e
            if y not in span:
                span.add(y)
                frontier.append(y)
        if len(span) == len(units):
            break
    return gens
