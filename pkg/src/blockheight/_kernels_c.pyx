# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_kernels_py``; same contracts, same output."""

import numpy as np

from cython.operator cimport dereference as deref
from libc.stdint cimport int32_t, int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from ._hashing import perm_weights
from .errors import CapExceeded, HashCollision
from . import _kernels_py

NAME = "cython"


cdef inline uint64_t _code(const int32_t* perm, const uint64_t* w, Py_ssize_t n) noexcept nogil:
    cdef uint64_t c = 0
    cdef Py_ssize_t i
    for i in range(n):
        c += w[i] * <uint64_t>perm[i]
    return c


cdef inline bint _same(const int32_t* a, const int32_t* b, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


def closure(gens, long long cap):
    cdef const int32_t[:, ::1] g = np.ascontiguousarray(gens, dtype=np.int32)
    cdef Py_ssize_t ng = g.shape[0], n = g.shape[1]
    cdef uint64_t[::1] w = np.array(perm_weights(n), dtype=np.uint64)
    cdef vector[int32_t] buf
    cdef vector[int32_t] tmp = vector[int32_t](max(n, 1))
    cdef unordered_map[uint64_t, int64_t] seen
    cdef unordered_map[uint64_t, int64_t].iterator it
    cdef Py_ssize_t head = 0, count = 1, k, i, base
    cdef uint64_t code
    cdef int64_t old

    for i in range(n):
        buf.push_back(<int32_t>i)
    seen[_code(buf.data(), &w[0], n) if n else 0] = 0
    while head < count:
        base = head * n
        for k in range(ng):
            for i in range(n):
                tmp[i] = g[k, buf[base + i]]
            code = _code(tmp.data(), &w[0], n)
            it = seen.find(code)
            if it == seen.end():
                if count >= cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                seen[code] = count
                for i in range(n):
                    buf.push_back(tmp[i])
                count += 1
            else:
                old = deref(it).second
                if not _same(buf.data() + old * n, tmp.data(), n):
                    raise HashCollision("distinct permutations share a code")
        head += 1
    out = np.empty((count, n), dtype=np.int32)
    cdef int32_t[:, ::1] o = out
    for k in range(count):
        for i in range(n):
            o[k, i] = buf[k * n + i]
    return out


cdef class PermIndex:
    cdef unordered_map[uint64_t, int64_t] table
    cdef public object elements
    cdef const int32_t[:, ::1] _el
    cdef uint64_t[::1] _w
    cdef Py_ssize_t _n

    def __init__(self, elements):
        self.elements = np.ascontiguousarray(elements, dtype=np.int32)
        self._el = self.elements
        self._n = self.elements.shape[1]
        self._w = np.array(perm_weights(self._n), dtype=np.uint64)
        cdef Py_ssize_t r
        cdef uint64_t code
        for r in range(self._el.shape[0]):
            code = _code(&self._el[r, 0], &self._w[0], self._n) if self._n else 0
            if self.table.count(code):
                raise HashCollision("distinct permutations share a code")
            self.table[code] = r

    def __len__(self):
        return self._el.shape[0]

    cdef int64_t _lookup(self, const int32_t* perm) except -2:
        cdef uint64_t code = _code(perm, &self._w[0], self._n) if self._n else 0
        cdef unordered_map[uint64_t, int64_t].iterator it = self.table.find(code)
        if it == self.table.end():
            return -1
        cdef int64_t r = deref(it).second
        if not _same(&self._el[r, 0], perm, self._n):
            raise HashCollision("distinct permutations share a code")
        return r

    def find(self, perms):
        cdef const int32_t[:, ::1] p = np.ascontiguousarray(perms, dtype=np.int32).reshape(-1, self._n)
        out = np.empty(p.shape[0], dtype=np.int64)
        cdef int64_t[::1] o = out
        cdef Py_ssize_t r
        for r in range(p.shape[0]):
            o[r] = self._lookup(&p[r, 0])
        return out


cdef inline int64_t _root(int64_t[::1] parent, int64_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def orbit_labels(images):
    cdef const int64_t[:, ::1] im = np.ascontiguousarray(images, dtype=np.int64)
    cdef Py_ssize_t g = im.shape[0], size = im.shape[1], k, x
    parent_arr = np.arange(size, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    cdef int64_t a, b
    for k in range(g):
        for x in range(size):
            a = _root(parent, x)
            b = _root(parent, im[k, x])
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
    for x in range(size):
        parent[x] = _root(parent, x)
    return parent_arr


def class_matrix(PermIndex index, class_of, inverse_members, rep_ids, Py_ssize_t h):
    cdef const int32_t[:, ::1] el = index._el
    cdef Py_ssize_t n = index._n
    cdef const int64_t[::1] cls = np.ascontiguousarray(class_of, dtype=np.int64)
    cdef const int64_t[::1] xs = np.ascontiguousarray(inverse_members, dtype=np.int64)
    cdef const int64_t[::1] reps = np.ascontiguousarray(rep_ids, dtype=np.int64)
    out = np.zeros((h, h), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef vector[int32_t] tmp = vector[int32_t](max(n, 1))
    cdef Py_ssize_t k, s, i
    cdef int64_t z, x, found
    for k in range(reps.shape[0]):
        z = reps[k]
        for s in range(xs.shape[0]):
            x = xs[s]
            for i in range(n):
                tmp[i] = el[z, el[x, i]]
            found = index._lookup(tmp.data())
            if found < 0:
                raise ValueError("product left the element set")
            o[cls[found], k] += 1
    return out


def rref_mod(a, q):
    if q >= 2**31:
        return _kernels_py.rref_mod(a, q)
    arr = np.array(a, dtype=np.int64) % q
    cdef int64_t[:, ::1] m = arr
    cdef int64_t Q = q
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef int64_t inv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[p, j]
                m[p, j] = t
        inv = pow(int(m[r, c]), -1, q)
        for j in range(c, cols):
            m[r, j] = m[r, j] * inv % Q
        for i in range(rows):
            if i == r:
                continue
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                m[i, j] = (m[i, j] - f * m[r, j]) % Q
                if m[i, j] < 0:
                    m[i, j] += Q
        pivots.append(c)
        r += 1
    return arr[:r].copy(), pivots
