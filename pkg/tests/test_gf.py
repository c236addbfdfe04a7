import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import isprime

from blockheight.errors import NoSuitablePrime
from blockheight.gf import (
    ExtensionField,
    charpoly_mod,
    dixon_primes,
    matmul_mod,
    nullspace_mod,
    primes_congruent_one,
    rref_mod,
    root_of_unity_mod,
    roots_mod,
)


def test_dixon_prime_conditions():
    for e, n in ((12, 24), (60, 60), (1320, 95040), (1, 1)):
        (q,) = dixon_primes(e, n)
        assert isprime(q) and (q - 1) % e == 0 and q > 2 * n**0.5
    assert primes_congruent_one(4, 10, count=3) == [13, 17, 29]
    with pytest.raises(NoSuitablePrime):
        primes_congruent_one(4, 10, bound=12)


def test_root_of_unity():
    for e, q in ((12, 13), (60, 61), (8, 17)):
        z = root_of_unity_mod(e, q)
        assert pow(z, e, q) == 1
        assert all(pow(z, e // r, q) != 1 for r in (2, 3, 5) if e % r == 0)


@pytest.mark.parametrize("q", [7, 101, 94906249, 2**31 - 1])
def test_matmul_mod_exact_in_every_regime(q):
    rng = np.random.default_rng(q % 1000)
    a = rng.integers(0, q, size=(5, 40), dtype=np.int64)
    b = rng.integers(0, q, size=(40, 3), dtype=np.int64)
    expected = (a.astype(object) @ b.astype(object)) % q
    assert np.array_equal(matmul_mod(a, b, q), expected.astype(np.int64))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([2, 5, 13, 101]), st.data())
def test_rref_and_nullspace(rows, cols, q, data):
    a = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)), dtype=np.int64)
    r, pivots = rref_mod(a, q)
    assert len(r) == len(pivots)
    for i, c in enumerate(pivots):
        assert r[i, c] == 1 and np.count_nonzero(r[:, c]) == 1
    null = nullspace_mod(a, q)
    assert len(null) + len(pivots) == cols
    if len(null):
        assert not (a @ np.asarray(null).T % q).any()


def test_charpoly_and_roots():
    q = 101
    m = np.array([[2, 1, 0], [0, 2, 0], [0, 0, 7]])
    cp = charpoly_mod(m, q)
    # (x-2)^2 (x-7), constant term first
    assert cp == [(-28) % q, 32, (-11) % q, 1]
    assert roots_mod(cp, q) == [2, 7]


def test_extension_field():
    f = ExtensionField(3, 2)
    assert f.size == 9
    w = f.primitive_root_of_unity(8)
    powers = {f.pow(w, k) for k in range(8)}
    assert len(powers) == 8 and f.pow(w, 8) == f.one
    a, b = f.element(5), f.element(7)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(a, f.scale(a, 2)) == f.zero
