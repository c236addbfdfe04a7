"""Pure numpy implementations of the hot kernels.

These are the reference versions; ``_kernels_c`` mirrors them one to one and
the test-suite checks that both produce identical arrays.
"""

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._hashing import perm_codes
from .errors import CapExceeded, HashCollision

NAME = "python"


def closure(gens, cap):
    """All products of ``gens`` in breadth-first order, identity first.

    Element ``i`` is expanded by right multiplication with each generator in
    turn; new products receive the next free id.
    """
    gens = np.ascontiguousarray(gens, dtype=np.int32)
    n = gens.shape[1]
    identity = np.arange(n, dtype=np.int32)
    found = {int(perm_codes(identity[None, :])[0]): 0}
    layers = [identity[None, :]]
    frontier = layers[0]
    count = 1
    while len(frontier):
        # prods[f, k] = frontier[f] * gens[k]  (apply frontier[f] first)
        prods = gens[:, frontier].transpose(1, 0, 2).reshape(-1, n)
        codes = perm_codes(prods).tolist()
        fresh = []
        hit_rows = []
        hit_ids = []
        for row, code in enumerate(codes):
            old = found.get(code)
            if old is None:
                found[code] = count
                count += 1
                if count > cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                fresh.append(row)
            else:
                hit_rows.append(row)
                hit_ids.append(old)
        frontier = prods[fresh]
        layers.append(frontier)
        if hit_rows:
            known = np.concatenate(layers)
            if not np.array_equal(known[hit_ids], prods[hit_rows]):
                raise HashCollision("distinct permutations share a code")
    return np.concatenate(layers)


class PermIndex:
    """Lookup from permutation to its row in ``elements``."""

    def __init__(self, elements):
        self.elements = np.ascontiguousarray(elements, dtype=np.int32)
        codes = perm_codes(self.elements)
        self._order = np.argsort(codes, kind="stable")
        self._sorted = codes[self._order]
        if len(self._sorted) > 1 and np.any(self._sorted[1:] == self._sorted[:-1]):
            raise HashCollision("distinct permutations share a code")

    def __len__(self):
        return len(self.elements)

    def find(self, perms):
        """Ids of the rows of ``perms``; -1 where absent."""
        perms = np.ascontiguousarray(perms, dtype=np.int32).reshape(-1, self.elements.shape[1])
        codes = perm_codes(perms)
        pos = np.searchsorted(self._sorted, codes)
        pos = np.minimum(pos, len(self._sorted) - 1)
        hit = self._sorted[pos] == codes
        ids = np.where(hit, self._order[pos], -1).astype(np.int64)
        if hit.any():
            if not np.array_equal(self.elements[ids[hit]], perms[hit]):
                raise HashCollision("distinct permutations share a code")
        return ids


def orbit_labels(images):
    """Union-find over the edges ``x -> images[g, x]``; label = least id in the orbit."""
    images = np.asarray(images, dtype=np.int64)
    g, size = images.shape
    rows = np.tile(np.arange(size), g)
    graph = coo_matrix((np.ones(g * size, dtype=np.int8), (rows, images.ravel())), shape=(size, size))
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    least = np.full(ncomp, size, dtype=np.int64)
    np.minimum.at(least, comp, np.arange(size))
    return least[comp]


def class_matrix(index, class_of, inverse_members, rep_ids, h):
    """``M[i, k] = #{x in K : x^-1 * z_k in K_i}`` for one class ``K``.

    ``inverse_members`` holds the ids of ``x^-1`` for ``x`` in ``K`` and
    ``rep_ids`` the ids of the class representatives ``z_k``.
    """
    elements = index.elements
    xinv = elements[np.asarray(inverse_members, dtype=np.int64)]
    class_of = np.asarray(class_of, dtype=np.int64)
    out = np.zeros((h, h), dtype=np.int64)
    for k, r in enumerate(rep_ids):
        z = elements[r]
        ids = index.find(z[xinv])
        out[:, k] = np.bincount(class_of[ids], minlength=h)
    return out


def rref_mod(a, q):
    """Reduced row echelon form over F_q; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % q
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if not len(nz):
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, q) % q
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % q
        pivots.append(c)
        r += 1
    return a[:r], pivots
