"""Lattice basis quality improvement: size reduction and exchange steps.

The transformation applied to the rows is always integral and unimodular,
so the output generates exactly the same lattice as the input no matter
what; the Gram-Schmidt data used to choose the operations is float and
only influences how good (short / near-orthogonal) the result is.  The
exact enumeration downstream does not depend on it for correctness, only
for speed.
"""

from __future__ import annotations

import numpy as np


def _gso(b: list[list[int]]):
    arr = np.array(b, dtype=float)
    n = len(b)
    mu = np.zeros((n, n))
    bstar = np.zeros_like(arr)
    norms = np.zeros(n)
    for i in range(n):
        v = arr[i].copy()
        for j in range(i):
            mu[i, j] = (arr[i] @ bstar[j]) / norms[j] if norms[j] > 0 else 0.0
            v -= mu[i, j] * bstar[j]
        bstar[i] = v
        norms[i] = float(v @ v)
    return mu, norms


def reduce_basis_rows(rows, delta: float = 0.99, max_rounds: int = 400) -> np.ndarray:
    """LLL-style reduction of integer basis rows (same lattice, shorter rows)."""
    b = [[int(x) for x in r] for r in np.asarray(rows)]
    n = len(b)
    for _ in range(max_rounds):
        mu, _ = _gso(b)
        changed = False
        for k in range(1, n):
            for j in range(k - 1, -1, -1):
                q = round(mu[k, j])
                if q:
                    b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                    mu[k, : j + 1] -= q * mu[j, : j + 1]
                    changed = True
        mu, norms = _gso(b)
        swapped = False
        for k in range(1, n):
            if norms[k] < (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
                b[k - 1], b[k] = b[k], b[k - 1]
                swapped = True
                break
        if not (changed or swapped):
            break
    return np.array(b, dtype=np.int64)


def shorten_against(vec, basis_rows) -> np.ndarray:
    """Subtract a rounded projection of `vec` onto the lattice of
    `basis_rows` (coset representative stays in the same coset)."""
    k = np.asarray(basis_rows, dtype=np.int64)
    v = np.asarray(vec, dtype=np.int64).copy()
    gram = (k @ k.T).astype(float)
    for _ in range(4):
        coeff = np.linalg.solve(gram, k @ v.astype(float))
        q = np.rint(coeff).astype(np.int64)
        if not q.any():
            break
        v = v - q @ k
    return v
