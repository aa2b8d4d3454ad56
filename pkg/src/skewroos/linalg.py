"""Exact linear algebra over finite fields.

Two flavours: generic routines over any field object exposing scalar
``add/sub/mul/inv`` (matrices are lists of lists of packed ints), and numpy
routines over a prime field GF(p) used by the rank-metric search kernels.
Vectors are rows; ``left_kernel(M)`` is ``{v : v M = 0}``.
"""

from __future__ import annotations

import numpy as np


def rref(F, M):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        pr = R[r]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(R[i], pr)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, M) -> int:
    return len(rref(F, M)[1])


def nullspace(F, M, ncols: int | None = None):
    """Basis of the right kernel ``{x : M x = 0}``, one vector per free column."""
    if not M:
        n = ncols or 0
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(F, M)
    n = len(M[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def transpose(M):
    return [list(col) for col in zip(*M)]


def left_kernel(F, M, nrows: int | None = None):
    if not M or not M[0]:
        n = len(M) if M else (nrows or 0)
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return nullspace(F, transpose(M))


def matmul(F, A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def vecmat(F, v, M):
    return matmul(F, [v], M)[0]


def inverse(F, M):
    n = len(M)
    aug = [list(row) + [1 if j == i else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def solve_left(F, M, b):
    """Some ``x`` with ``x M = b`` or None."""
    rows = len(M)
    aug = transpose(M)
    aug = [row + [bi] for row, bi in zip(aug, b)]
    R, pivots = rref(F, aug)
    if rows in pivots:
        return None
    x = [0] * rows
    for i, pc in enumerate(pivots):
        x[pc] = R[i][rows]
    return x


# ---------------------------------------------------------------- GF(p), numpy

def rank_mod_p(A: np.ndarray, p: int) -> int:
    if p == 2:
        return gf2_rank(pack_rows(A))
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        below = M[r + 1:, c]
        if below.any():
            M[r + 1:] = (M[r + 1:] - np.outer(below, M[r])) % p
        r += 1
    return r


def rref_mod_p(A: np.ndarray, p: int):
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        if col.any():
            M = (M - np.outer(col, M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Right kernel basis as rows of an array (free-column construction)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref_mod_p(A, p)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-R[i, f]) % p
    return out


def left_kernel_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    return nullspace_mod_p(np.asarray(A).T, p)


def pack_rows(A: np.ndarray) -> list[int]:
    """Rows of a 0/1 matrix as Python ints (bit j = column j)."""
    A = np.asarray(A, dtype=np.uint8) & 1
    if A.shape[1] == 0:
        return [0] * A.shape[0]
    packed = np.packbits(A, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def gf2_rank(rows: list[int]) -> int:
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)
