"""Exact linear algebra mod p on numpy arrays.

Everything here is deterministic and exact. The fast paths lean on two
overflow-free facts:

- int64: with all values reduced to [0, p) and p < 2**31, any single product
  plus one subtraction stays inside int64.
- float64: products of nonnegative ints are exact while partial sums stay
  below 2**53, so a matmul with inner dimension w is exact when w*(p-1)^2 <
  2**53. Large inner dimensions are chunked to keep that bound.

Primes >= 2**31 fall back to object-dtype arrays (Python ints, slow, exact),
which only tiny instances use.

Pivoting is "lowest current row index first", which makes every echelon
form, kernel basis, and solution bit-reproducible.
"""

from __future__ import annotations

import numpy as np

from .field import ValidationError

_F64_BITS = 1 << 53
_INT64_PRIME_LIMIT = 1 << 31


def storage_dtype(p: int):
    """Smallest signed integer dtype that holds values in [0, p)."""
    if p <= (1 << 15):
        return np.int16
    if p <= (1 << 31):
        return np.int32
    return np.int64


def mod_matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact (A @ B) % p; supports stacked (batched) operands like np.matmul."""
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1]
    if p >= _INT64_PRIME_LIMIT:
        out = np.matmul(A.astype(object) % p, B.astype(object) % p) % p
        return out
    Ar = A.astype(np.int64) % p
    Br = B.astype(np.int64) % p
    chunk = _F64_BITS // (p * p)
    use_float = chunk >= 1
    if not use_float:
        # float64 can no longer hold even one product exactly; single int64
        # products still fit for p < 2**31, so accumulate in int64 instead
        chunk = ((1 << 63) - 1) // (p * p)
    if inner <= chunk and use_float:
        return np.matmul(Ar.astype(np.float64), Br.astype(np.float64)).astype(np.int64) % p
    acc = np.zeros(np.broadcast_shapes(Ar.shape[:-2], Br.shape[:-2]) + (Ar.shape[-2], Br.shape[-1]),
                   dtype=np.int64)
    for lo in range(0, inner, chunk):
        hi = min(inner, lo + chunk)
        if use_float:
            part = np.matmul(Ar[..., :, lo:hi].astype(np.float64),
                             Br[..., lo:hi, :].astype(np.float64)).astype(np.int64) % p
        else:
            part = np.matmul(Ar[..., :, lo:hi], Br[..., lo:hi, :]) % p
        acc = (acc + part) % p
    return acc


def _echelon_inplace(A: np.ndarray, p: int) -> list[int]:
    """Unblocked forward echelon with unit pivots; returns pivot columns.

    Works for int64 (p < 2**31) and object dtype alike.
    """
    rows, cols = A.shape
    rank = 0
    pivot_cols: list[int] = []
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            A[[rank, pr]] = A[[pr, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank, c:] = A[rank, c:] * inv % p
        below = A[rank + 1 :, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = rank + 1 + nzb
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], A[rank, c:])) % p
        pivot_cols.append(c)
        rank += 1
    return pivot_cols


def _echelon_blocked(A: np.ndarray, p: int, bw: int) -> list[int]:
    """Panel echelon: unblocked inside a column panel, one exact float64
    matmul per panel for the trailing Schur update."""
    rows, cols = A.shape
    rank = 0
    pivot_cols: list[int] = []
    c0 = 0
    while c0 < cols and rank < rows:
        c1 = min(c0 + bw, cols)
        nsub = rows - rank
        mult = np.zeros((nsub, c1 - c0), dtype=np.int64)  # row ops applied below `rank`
        scales: list[int] = []
        local_pivs: list[int] = []
        for c in range(c0, c1):
            r = rank + len(local_pivs)
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                A[[r, pr]] = A[[pr, r]]
                mult[[r - rank, pr - rank]] = mult[[pr - rank, r - rank]]
            t = len(local_pivs)
            inv = pow(int(A[r, c]), -1, p)
            scales.append(inv)
            A[r, c0:c1] = A[r, c0:c1] * inv % p
            f = A[r + 1 :, c].copy()
            nzb = np.nonzero(f)[0]
            if nzb.size:
                idx = r + 1 + nzb
                mult[idx - rank, t] = f[nzb]
                A[idx, c0:c1] = (A[idx, c0:c1] - np.outer(f[nzb], A[r, c0:c1])) % p
            local_pivs.append(c)
        npiv = len(local_pivs)
        if npiv and c1 < cols:
            trail = A[rank : rank + npiv, c1:]
            # pivot rows first, sequentially (each depends on the previous ones)
            for t in range(npiv):
                row = trail[t]
                if t:
                    row = (row - mult[t, :t] @ trail[:t]) % p
                trail[t] = row * scales[t] % p
            below = A[rank + npiv :, c1:]
            if below.size:
                fl = mult[npiv:, :npiv]
                prod = np.matmul(fl.astype(np.float64), trail.astype(np.float64))
                below -= prod.astype(np.int64) % p
                below %= p
        pivot_cols.extend(local_pivs)
        rank += npiv
        c0 = c1
    return pivot_cols


def echelon(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon form with unit pivots (forward pass only).

    Returns (U, pivot_cols); rows 0..len(pivot_cols)-1 of U are the nonzero
    echelon rows, in pivot order.
    """
    if p >= _INT64_PRIME_LIMIT:
        M = np.array(A, dtype=object) % p
        return M, _echelon_inplace(M, p)
    M = np.array(A, dtype=np.int64) % p
    bw = min(128, _F64_BITS // (p * p))
    if M.size <= (1 << 18) or bw < 16:
        return M, _echelon_inplace(M, p)
    return M, _echelon_blocked(M, p, int(bw))


def _row_dot_block(u: np.ndarray, X: np.ndarray, p: int) -> np.ndarray:
    """Exact (u @ X) % p for a single row; chunks the inner dimension."""
    n = u.shape[0]
    if n == 0:
        return np.zeros(X.shape[1], dtype=X.dtype)
    if p >= _INT64_PRIME_LIMIT:
        return (u @ X) % p  # object dtype, exact
    chunk = max(1, _F64_BITS // (p * p))
    if n <= chunk:
        return (u.astype(np.float64) @ X.astype(np.float64)).astype(np.int64) % p
    acc = np.zeros(X.shape[1], dtype=np.int64)
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        part = (u[lo:hi].astype(np.float64) @ X[lo:hi].astype(np.float64)).astype(np.int64)
        acc = (acc + part % p) % p
    return acc


def _backsolve_block(U: np.ndarray, pivot_cols: list[int], X: np.ndarray, p: int) -> np.ndarray:
    """Given X fixed on free rows (columns of U), fill pivot rows of X so
    that U @ X = 0. X has one column per right-hand side."""
    for t in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[t]
        X[c] = (p - _row_dot_block(U[t, c + 1 :], X[c + 1 :], p)) % p
    return X


def kernel_basis(A, p: int) -> np.ndarray:
    """Deterministic kernel basis: one vector per free column, ascending,
    each with 1 in its free column and 0 in the other free columns."""
    A = np.asarray(A)
    U, pivot_cols = echelon(A, p)
    cols = A.shape[1]
    dt = object if p >= _INT64_PRIME_LIMIT else np.int64
    free = [c for c in range(cols) if c not in set(pivot_cols)]
    X = np.zeros((cols, len(free)), dtype=dt)
    for i, fc in enumerate(free):
        X[fc, i] = 1
    _backsolve_block(U, pivot_cols, X, p)
    return X.T.copy()


def solve_linear(A, b, p: int) -> tuple[np.ndarray | None, np.ndarray]:
    """Solve A x = b mod p.

    Returns (particular, kernel_basis); particular is None when the system
    is inconsistent. Deterministic: free variables of the particular
    solution are 0, and the kernel basis is as in kernel_basis().
    """
    A = np.asarray(A)
    b = np.asarray(b)
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise ValidationError("right-hand side shape mismatch")
    aug = np.concatenate([np.asarray(A), b.reshape(-1, 1)], axis=1)
    U, pivot_cols = echelon(aug, p)
    cols = A.shape[1]
    dt = object if p >= _INT64_PRIME_LIMIT else np.int64
    consistent = not (pivot_cols and pivot_cols[-1] == cols)
    free = [c for c in range(cols) if c not in set(pivot_cols)]
    nrhs = len(free) + (1 if consistent else 0)
    X = np.zeros((cols + 1, nrhs), dtype=dt)
    for i, fc in enumerate(free):
        X[fc, i] = 1
    if consistent:
        X[cols, len(free)] = p - 1  # U @ X = 0 then encodes A x = b
    _backsolve_block(U, pivot_cols, X, p)
    basis = X[:cols, : len(free)].T.copy()
    particular = X[:cols, len(free)].copy() if consistent else None
    return particular, basis


def rank_mod(A, p: int) -> int:
    return len(echelon(A, p)[1])


def in_row_span(A, v, p: int) -> bool:
    """Whether v lies in the row span of A."""
    A = np.asarray(A)
    v = np.asarray(v)
    if A.shape[0] == 0:
        return bool(np.all(v % p == 0))
    return rank_mod(np.vstack([A, v.reshape(1, -1)]), p) == rank_mod(A, p)
