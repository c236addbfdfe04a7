"""64-bit codes for permutations stored as image arrays.

Both kernel backends hash with the same weights, so element ids agree between
them.  Codes are only ever used as a lookup key: every hit is confirmed by
comparing the actual image arrays.
"""

from functools import lru_cache

import numpy as np

_SEED = 0x5EED_B10C


@lru_cache(maxsize=None)
def perm_weights(degree: int) -> np.ndarray:
    rng = np.random.default_rng(_SEED)
    w = rng.integers(0, 2**64, size=max(degree, 1), dtype=np.uint64, endpoint=False)
    w |= np.uint64(1)
    w.setflags(write=False)
    return w[:degree]


def perm_codes(perms: np.ndarray) -> np.ndarray:
    """Codes of a 2-d array of permutations (one per row); wraps modulo 2**64."""
    perms = np.asarray(perms)
    return perms.astype(np.uint64) @ perm_weights(perms.shape[-1])
