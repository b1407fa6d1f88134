"""Bivariate polynomials (dense 2-D coefficient grid) and weighted-degree
monomial counting. Used by the interpolation decoder, so X-degrees can reach
a few hundred while Y-degrees stay small.
"""

from __future__ import annotations

import numpy as np

from .field import PrimeField, ValidationError
from .poly import Poly, lagrange_coeffs, poly_add, poly_mul, poly_scale, trim


def weighted_monomial_count(a: int, b: int) -> int:
    """Number of monomials X^i Y^j with i + a*j <= b (a >= 1, b >= -1).

    Closed form: sum_{j=0}^{floor(b/a)} (b - a*j + 1) = (t+1)(2b + 2 - a*t)/2
    with t = floor(b/a). For a | b this is (b+a)(b+2)/(2a).
    """
    if a < 1:
        raise ValidationError("weight must be >= 1")
    if b < 0:
        return 0
    t = b // a
    num = (t + 1) * (2 * b + 2 - a * t)
    assert num % 2 == 0
    return num // 2


def weighted_monomials(a: int, b: int) -> list[tuple[int, int]]:
    """All (i, j) with i + a*j <= b, ordered by (j, i)."""
    out = []
    j = 0
    while a * j <= b:
        out.extend((i, j) for i in range(b - a * j + 1))
        j += 1
    return out


class BivarPoly:
    """Q(X, Y) as a trimmed (degX+1) x (degY+1) int64 grid; zero is 1x1."""

    __slots__ = ("field", "c")

    def __init__(self, field: PrimeField, coeffs):
        self.field = field
        arr = np.atleast_2d(np.asarray(coeffs, dtype=np.int64)) % field.p
        self.c = _trim2d(arr)

    @classmethod
    def zero(cls, field: PrimeField) -> "BivarPoly":
        return cls(field, [[0]])

    @classmethod
    def from_dict(cls, field: PrimeField, d: dict[tuple[int, int], int]) -> "BivarPoly":
        if not d:
            return cls.zero(field)
        dx = max(i for i, _ in d)
        dy = max(j for _, j in d)
        arr = np.zeros((dx + 1, dy + 1), dtype=np.int64)
        for (i, j), v in d.items():
            arr[i, j] = v % field.p
        return cls(field, arr)

    @classmethod
    def from_x_poly(cls, field: PrimeField, f: Poly) -> "BivarPoly":
        if not f:
            return cls.zero(field)
        return cls(field, np.asarray(f, dtype=np.int64).reshape(-1, 1))

    @classmethod
    def from_y_poly(cls, field: PrimeField, f: Poly) -> "BivarPoly":
        if not f:
            return cls.zero(field)
        return cls(field, np.asarray(f, dtype=np.int64).reshape(1, -1))

    # --- basic structure ---

    def is_zero(self) -> bool:
        return self.c.shape == (1, 1) and self.c[0, 0] == 0

    @property
    def degx(self) -> int:
        return -1 if self.is_zero() else self.c.shape[0] - 1

    @property
    def degy(self) -> int:
        return -1 if self.is_zero() else self.c.shape[1] - 1

    def weighted_degree(self, wx: int, wy: int) -> int:
        """Max of wx*i + wy*j over the support; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        ii, jj = np.nonzero(self.c)
        return int(np.max(wx * ii + wy * jj))

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and other.field == self.field
            and other.c.shape == self.c.shape
            and bool(np.all(other.c == self.c))
        )

    def __repr__(self):
        return f"BivarPoly(p={self.field.p}, degx={self.degx}, degy={self.degy})"

    # --- arithmetic ---

    def add(self, other: "BivarPoly") -> "BivarPoly":
        return self._combine(other, 1)

    def sub(self, other: "BivarPoly") -> "BivarPoly":
        return self._combine(other, -1)

    def _combine(self, other: "BivarPoly", sign: int) -> "BivarPoly":
        nx = max(self.c.shape[0], other.c.shape[0])
        ny = max(self.c.shape[1], other.c.shape[1])
        out = np.zeros((nx, ny), dtype=np.int64)
        out[: self.c.shape[0], : self.c.shape[1]] = self.c
        out[: other.c.shape[0], : other.c.shape[1]] += sign * other.c
        return BivarPoly(self.field, out % self.field.p)

    def scale(self, s: int) -> "BivarPoly":
        return BivarPoly(self.field, self.c * (s % self.field.p) % self.field.p)

    def mul(self, other: "BivarPoly") -> "BivarPoly":
        if self.is_zero() or other.is_zero():
            return BivarPoly.zero(self.field)
        p = self.field.p
        a, b = self.c, other.c
        if a.size < b.size:
            a, b = b, a
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=np.int64)
        for i, j in zip(*np.nonzero(b)):
            out[i : i + a.shape[0], j : j + a.shape[1]] += a * int(b[i, j]) % p
            out %= p
        return BivarPoly(self.field, out)

    def pow(self, e: int) -> "BivarPoly":
        if e < 0:
            raise ValidationError("negative power")
        out = BivarPoly(self.field, [[1]])
        base = self
        while e:
            if e & 1:
                out = out.mul(base)
            base = base.mul(base)
            e >>= 1
        return out

    # --- evaluation / substitution ---

    def eval(self, x: int, y: int) -> int:
        p = self.field.p
        acc = 0
        for row in reversed(range(self.c.shape[0])):
            col_val = 0
            for col in reversed(range(self.c.shape[1])):
                col_val = (col_val * y + int(self.c[row, col])) % p
            acc = (acc * x + col_val) % p
        return acc

    def at_y(self, y0: int) -> Poly:
        """Q(X, y0) as a univariate polynomial in X."""
        p = self.field.p
        pows = [1]
        for _ in range(self.c.shape[1] - 1):
            pows.append(pows[-1] * y0 % p)
        v = (self.c @ np.asarray(pows, dtype=np.int64)) % p
        return trim([int(t) for t in v])

    def compose_y(self, f: Poly) -> Poly:
        """Q(X, f(X)) by Horner in Y."""
        F = self.field
        acc: Poly = []
        for j in reversed(range(self.c.shape[1])):
            col = trim([int(t) for t in self.c[:, j]])
            acc = poly_add(F, poly_mul(F, acc, f), col)
        return acc


def _trim2d(arr: np.ndarray) -> np.ndarray:
    nz = np.nonzero(arr)
    if len(nz[0]) == 0:
        return np.zeros((1, 1), dtype=np.int64)
    return np.ascontiguousarray(arr[: nz[0].max() + 1, : nz[1].max() + 1])


def lagrange_bivariate(F: PrimeField, moduli: list[Poly], points: list[int]) -> BivarPoly:
    """E(X, Y) with E(X, a_i) = moduli[i], interpolated coefficient-wise in Y.

    All moduli must share one degree s and be monic, so E is monic of degree
    s in X with deg_Y < len(points).
    """
    n = len(points)
    if n == 0 or len(moduli) != n:
        raise ValidationError("need one modulus per point")
    if len(set(points)) != n:
        raise ValidationError("interpolation points must be distinct")
    s = len(moduli[0]) - 1
    for i, e in enumerate(moduli):
        if len(e) - 1 != s or not e or e[-1] != 1:
            raise ValidationError(f"modulus {i} is not monic of shared degree {s}")
    basis = lagrange_coeffs(F, points)  # basis[i] = prod_{j!=i}(Y-a_j)/(a_i-a_j)
    grid = np.zeros((s + 1, n), dtype=np.int64)
    for i in range(n):
        for d, coef in enumerate(moduli[i]):
            if coef:
                lag = poly_scale(F, basis[i], coef)
                grid[d, : len(lag)] = (grid[d, : len(lag)] + np.asarray(lag, dtype=np.int64)) % F.p
    return BivarPoly(F, grid)
