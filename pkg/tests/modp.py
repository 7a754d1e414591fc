"""Dense mod-p linear algebra, used as an independent oracle in tests."""

from __future__ import annotations

import numpy as np


def rref(A, p):
    """Reduced row echelon form mod p; returns (R, pivot_columns)."""
    A = np.array(A, dtype=np.int64) % p
    nr, nc = A.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if A[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        for i in range(nr):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_dense(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p):
    """Basis of ker(A) mod p, as columns of the returned matrix."""
    A = np.asarray(A, dtype=np.int64)
    nr, nc = A.shape
    if nc == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if nr == 0:
        return np.eye(nc, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(nc) if c not in pivots]
    basis = np.zeros((nc, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-R[i, fc]) % p
    return basis
