"""Square matrices with polynomial entries over a prime field.

These show up as the transition matrices that carry one code symbol's
residue vector to the next power of the underlying map. Production decode
paths evaluate at a point first and take numeric powers; the symbolic
power here is the reference the numeric shortcut is checked against
(entrywise evaluation is a ring homomorphism, so both must agree).
"""

from __future__ import annotations

import numpy as np

from .field import PrimeField, ValidationError
from .poly import Poly, poly_add, poly_eval, poly_mul, trim


class PolyMatrix:
    """Dense square matrix of dense polynomials."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: PrimeField, entries: list[list[Poly]]):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValidationError("matrix must be square")
        self.field = field
        self.n = n
        self.entries = [[trim([c % field.p for c in e]) for e in row] for row in entries]

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "PolyMatrix":
        return cls(field, [[[1] if i == j else [] for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.field.p == other.field.p
                and self.entries == other.entries)

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.n != other.n:
            raise ValidationError("size mismatch")
        F = self.field
        out = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                acc: Poly = []
                for t in range(self.n):
                    a = self.entries[i][t]
                    b = other.entries[t][j]
                    if a and b:
                        acc = poly_add(F, acc, poly_mul(F, a, b))
                row.append(acc)
            out.append(row)
        return PolyMatrix(F, out)

    def eval_at(self, a: int) -> np.ndarray:
        """Entrywise evaluation, returns an int64 matrix."""
        F = self.field
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                e = self.entries[i][j]
                if e:
                    out[i, j] = poly_eval(F, e, a)
        return out

    def max_degree(self) -> int:
        d = -1
        for row in self.entries:
            for e in row:
                d = max(d, len(e) - 1)
        return d

    def shift_plus_constant(self) -> np.ndarray | None:
        """If M = X*I + N with N a constant matrix, return N; else None."""
        N = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                e = self.entries[i][j]
                if i == j:
                    if len(e) != 2 or e[1] != 1:
                        return None
                    N[i, j] = e[0]
                else:
                    if len(e) > 1:
                        return None
                    N[i, j] = e[0] if e else 0
        return N


def binomial_row(p: int, d: int) -> list[int]:
    """[binom(d, b) mod p for b in 0..d] by the Pascal recurrence (no
    division, so valid for any p)."""
    row = [1]
    for _ in range(d):
        nxt = [1] + [(row[b] + row[b + 1]) % p for b in range(len(row) - 1)] + [1]
        row = nxt
    return row


def matrix_poly_power(M: PolyMatrix, d: int) -> PolyMatrix:
    """Symbolic M(X)^d.

    Fast paths: diagonal matrices power entrywise; M = X*I + N with constant
    N expands as sum_b binom(d,b) X^(d-b) N^b, valid because X*I commutes
    with N. Everything else goes through square-and-multiply.
    """
    if d < 0:
        raise ValidationError("negative power")
    F = M.field
    if M.is_diagonal():
        out = PolyMatrix.identity(F, M.n)
        for i in range(M.n):
            acc: Poly = [1]
            base = M.entries[i][i]
            e = d
            while e:
                if e & 1:
                    acc = poly_mul(F, acc, base)
                base = poly_mul(F, base, base)
                e >>= 1
            out.entries[i][i] = acc
        return out
    N = M.shift_plus_constant()
    if N is not None:
        from .linalg import mod_matmul

        binom = binomial_row(F.p, d)
        coeffs = np.zeros((M.n, M.n, d + 1), dtype=np.int64)
        Nb = np.eye(M.n, dtype=np.int64)
        for b in range(d + 1):
            coeffs[:, :, d - b] = Nb * binom[b] % F.p
            if b < d:
                Nb = mod_matmul(Nb, N, F.p)
                if not Nb.any():
                    break
        return PolyMatrix(F, [[list(coeffs[i, j]) for j in range(M.n)] for i in range(M.n)])
    result = PolyMatrix.identity(F, M.n)
    base = M
    e = d
    while e:
        if e & 1:
            result = result.mul(base)
        base = base.mul(base)
        e >>= 1
    return result


def numeric_matrix_power_sequence(M0: np.ndarray, d: int, p: int) -> list[np.ndarray]:
    """[I, M0, M0^2, ..., M0^d] mod p for a numeric square matrix."""
    from .linalg import mod_matmul

    n = M0.shape[0]
    out = [np.eye(n, dtype=np.int64)]
    cur = np.eye(n, dtype=np.int64)
    for _ in range(d):
        cur = mod_matmul(cur, M0, p)
        out.append(cur)
    return out
