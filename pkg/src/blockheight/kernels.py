"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy versions
take over.  ``BLOCKHEIGHT_KERNELS=python`` forces the fallback.
"""

import os

from . import _kernels_py

try:
    from . import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

_BACKENDS = {"python": _kernels_py}
if _kernels_c is not None:
    _BACKENDS["cython"] = _kernels_c

_active = _kernels_py
if _kernels_c is not None and os.environ.get("BLOCKHEIGHT_KERNELS", "").lower() != "python":
    _active = _kernels_c


def available():
    return sorted(_BACKENDS)


def backend():
    return _active.NAME


def set_backend(name):
    """Switch implementation; returns the previous backend name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"kernel backend {name!r} unavailable (have {available()})")
    previous = _active.NAME
    _active = _BACKENDS[name]
    return previous


def closure(gens, cap):
    return _active.closure(gens, cap)


def perm_index(elements):
    return _active.PermIndex(elements)


def orbit_labels(images):
    return _active.orbit_labels(images)


def class_matrix(index, class_of, inverse_members, rep_ids, h):
    if not isinstance(index, _active.PermIndex):
        return _kernels_py.class_matrix(index, class_of, inverse_members, rep_ids, h)
    return _active.class_matrix(index, class_of, inverse_members, rep_ids, h)


def rref_mod(a, q):
    return _active.rref_mod(a, q)
