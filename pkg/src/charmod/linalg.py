"""Dense linear algebra over GF(p) on numpy int64 matrices.

Used for degreewise computations (graded pieces of modules and maps), where
matrices are small and dense.  Entries are canonical representatives in
``[0, p)``; products fit int64 for any p below 2^31.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, list]:
    """Reduced row echelon form and pivot column indices."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    _, piv = rref(a, p)
    return len(piv)


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel, as columns."""
    m, piv = rref(a, p)
    rows, cols = a.shape
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, c in enumerate(free):
        basis[c, idx] = 1
        for r, pc in enumerate(piv):
            basis[pc, idx] = (-int(m[r, c])) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """A particular solution of ``a x = b``, or None if inconsistent."""
    rows, cols = a.shape
    aug = np.concatenate([np.array(a, dtype=np.int64) % p,
                          (np.array(b, dtype=np.int64) % p).reshape(rows, -1)], axis=1)
    m, piv = rref(aug, p)
    nb = aug.shape[1] - cols
    for r in range(len(piv)):
        if piv[r] >= cols:
            return None
    x = np.zeros((cols, nb), dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = m[r, cols:]
    return x
