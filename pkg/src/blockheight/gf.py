"""Finite fields: linear algebra over F_q and small extension fields F_{p^f}."""

from functools import lru_cache
from math import isqrt

import numpy as np
from sympy import factorint, isprime, primitive_root
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from . import kernels
from .errors import NoSuitablePrime

PRIME_SEARCH_BOUND = 2**63


def primes_congruent_one(e, above, count=1, bound=PRIME_SEARCH_BOUND):
    """The ``count`` smallest primes ``q = 1 (mod e)`` with ``q > above``."""
    q = (above // e + 1) * e + 1
    out = []
    while len(out) < count:
        if q >= bound:
            raise NoSuitablePrime(f"no prime = 1 mod {e} above {above} below {bound}")
        if isprime(q):
            out.append(q)
        q += e
    return out


def dixon_primes(exponent, order, count=1):
    """Primes admissible for the character table: ``q = 1 mod e``, ``q > 2*ceil(sqrt|G|)``."""
    root = isqrt(order)
    if root * root < order:
        root += 1
    return primes_congruent_one(exponent, 2 * root, count)


@lru_cache(maxsize=None)
def root_of_unity_mod(e, q):
    """A fixed primitive ``e``-th root of unity in F_q (``e | q-1``)."""
    if (q - 1) % e:
        raise ValueError(f"{e} does not divide {q}-1")
    return pow(primitive_root(q), (q - 1) // e, q)


# --- linear algebra over F_q -------------------------------------------------

def matmul_mod(a, b, q):
    """``a @ b mod q`` for reduced operands; float64 BLAS whenever that is exact."""
    inner = a.shape[-1]
    if q * q * max(inner, 1) < 2**53:
        return (np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64) % q).astype(np.int64)
    if q * q * max(inner, 1) < 2**63:
        return np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64) % q
    out = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object) % q
    return out.astype(np.int64)


def rref_mod(a, q):
    return kernels.rref_mod(np.asarray(a, dtype=np.int64), q)


def nullspace_mod(a, q):
    """Basis (rows, in reduced echelon form) of ``{v : a @ v = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref_mod(a, q)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for n, f in enumerate(free):
        basis[n, f] = 1
        for row, pc in enumerate(pivots):
            basis[n, pc] = (-r[row, f]) % q
    if len(basis):
        basis, _ = rref_mod(basis, q)
    return basis


def charpoly_mod(a, q):
    """Characteristic polynomial over F_q, constant term first, via Hessenberg form."""
    h = np.array(a, dtype=np.int64) % q
    k = h.shape[0]
    for m in range(1, k - 1):
        nz = np.flatnonzero(h[m:, m - 1])
        if not len(nz):
            continue
        i = m + nz[0]
        if i != m:
            h[[i, m]] = h[[m, i]]
            h[:, [i, m]] = h[:, [m, i]]
        tinv = pow(int(h[m, m - 1]), -1, q)
        u = h[m + 1:, m - 1] * tinv % q
        if not u.any():
            continue
        h[m + 1:] = (h[m + 1:] - np.outer(u, h[m])) % q
        h[:, m] = (h[:, m] + matmul_mod(h[:, m + 1:], u, q)) % q
    polys = np.zeros((k + 1, k + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, k + 1):
        prev = polys[m - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - int(h[m - 1, m - 1]) * prev) % q
        t = 1
        for i in range(1, m):
            t = t * int(h[m - i, m - i - 1]) % q
            if not t:
                break
            w = t * int(h[m - i - 1, m - 1]) % q
            if w:
                cur = (cur - w * polys[m - i - 1]) % q
        polys[m] = cur
    return [int(c) for c in polys[k]]


def roots_mod(coeffs, q):
    """Distinct roots in F_q of a polynomial given constant term first."""
    coeffs = [c % q for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    if q * len(coeffs) <= 50_000_000:
        xs = np.arange(q, dtype=np.int64)
        val = np.zeros(q, dtype=np.int64)
        for c in reversed(coeffs):
            val = (val * xs + c) % q
        return [int(x) for x in np.flatnonzero(val == 0)]
    from sympy.polys.galoistools import gf_factor_sqf

    _, factors = gf_factor_sqf([int(c) for c in reversed(coeffs)], q, ZZ)
    return sorted((-int(f[1])) % q for f in factors if len(f) == 2)


# --- extension fields --------------------------------------------------------

class ExtensionField:
    """F_{p^f} as F_p[x]/(g) with ``g`` the first monic irreducible of degree ``f``.

    Elements are tuples of ``f`` coefficients, constant term first.
    """

    def __init__(self, p, f):
        if not isprime(p) or f < 1:
            raise ValueError("need a prime p and f >= 1")
        self.p = p
        self.f = f
        self.size = p**f
        self.modulus = self._first_irreducible()
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    def _first_irreducible(self):
        p, f = self.p, self.f
        if f == 1:
            return (0, 1)
        for code in range(p**f):
            low = [(code // p**i) % p for i in range(f)]
            if low[0] == 0:
                continue
            if gf_irreducible_p([1] + low[::-1], p, ZZ):
                return tuple(low) + (1,)
        raise AssertionError("no irreducible polynomial found")

    def element(self, code):
        return tuple((code // self.p**i) % self.p for i in range(self.f))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def scale(self, a, c):
        p = self.p
        return tuple(x * c % p for x in a)

    def mul(self, a, b):
        p, f, g = self.p, self.f, self.modulus
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for d in range(2 * f - 2, f - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(f + 1):
                    prod[d - f + i] -= c * g[i]
        return tuple(c % p for c in prod[:f])

    def pow(self, a, n):
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def primitive_root_of_unity(self, m):
        """First element (in code order) of multiplicative order exactly ``m``."""
        if (self.size - 1) % m:
            raise ValueError(f"{m} does not divide {self.size}-1")
        cofactor = (self.size - 1) // m
        primes = list(factorint(m))
        for code in range(1, self.size):
            w = self.pow(self.element(code), cofactor)
            if all(self.pow(w, m // r) != self.one for r in primes):
                return w
        raise AssertionError("multiplicative group is not cyclic?")
