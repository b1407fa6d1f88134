"""Dense univariate polynomials over a prime field.

A polynomial is a plain list of ints in [0, p), ascending degree, with no
trailing zeros; [] is the zero polynomial. Keeping the representation bare
(no wrapper class) matches how these get consumed: as rows and columns of
integer matrices.
"""

from __future__ import annotations

import numpy as np

from .field import LinearForm, PrimeField, ValidationError

Poly = list  # alias for signatures; contents are ints


def trim(c: list[int]) -> list[int]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def degree(a: list[int]) -> int:
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def poly_add(F: PrimeField, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % F.p
    return trim(out)


def poly_sub(F: PrimeField, a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % F.p
    return trim(out)


def poly_neg(F: PrimeField, a: list[int]) -> list[int]:
    return [-c % F.p for c in a]


def poly_scale(F: PrimeField, a: list[int], s: int) -> list[int]:
    s %= F.p
    if s == 0:
        return []
    return [c * s % F.p for c in a]


# numpy convolution is exact while accumulated products stay below 2**63
_NUMPY_MUL_PRIME_LIMIT = 1 << 26


def poly_mul(F: PrimeField, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) * len(b) > 1024 and F.p < _NUMPY_MUL_PRIME_LIMIT:
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return trim([int(v) for v in out % F.p])
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % F.p
    return trim(out)


def poly_divmod(F: PrimeField, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """(quotient, remainder) with deg(remainder) < deg(b)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], trim(a)
    inv_lead = F.inv(b[-1])
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        coef = a[i + db] * inv_lead % F.p
        if coef:
            q[i] = coef
            for j in range(db + 1):
                a[i + j] = (a[i + j] - coef * b[j]) % F.p
    return trim(q), trim(a[:db])


def poly_mod(F: PrimeField, a: list[int], b: list[int]) -> list[int]:
    return poly_divmod(F, a, b)[1]


def poly_gcd(F: PrimeField, a: list[int], b: list[int]) -> list[int]:
    """Monic gcd."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, poly_mod(F, a, b)
    if a:
        a = poly_scale(F, a, F.inv(a[-1]))
    return a


def poly_xgcd(F: PrimeField, a: list[int], b: list[int]) -> tuple[list[int], list[int], list[int]]:
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if r0:
        lead_inv = F.inv(r0[-1])
        r0 = poly_scale(F, r0, lead_inv)
        s0 = poly_scale(F, s0, lead_inv)
        t0 = poly_scale(F, t0, lead_inv)
    return r0, s0, t0


def poly_eval(F: PrimeField, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % F.p
    return acc


def poly_eval_many(F: PrimeField, a: list[int], xs) -> np.ndarray:
    """Horner over a vector of points; int64, requires p < 2**31."""
    pts = np.asarray(xs, dtype=np.int64)
    acc = np.zeros_like(pts)
    for c in reversed(a):
        acc = (acc * pts + c) % F.p
    return acc


def poly_derivative(F: PrimeField, a: list[int], j: int = 1) -> list[int]:
    """Standard j-th formal derivative (not the Hasse variant).

    Coefficients e*(e-1)*...*(e-j+1) are reduced mod p; callers needing the
    analytic meaning must ensure the characteristic is large enough.
    """
    if j < 0:
        raise ValidationError("derivative order must be nonnegative")
    out = list(a)
    for _ in range(j):
        out = [i * out[i] % F.p for i in range(1, len(out))]
        if not out:
            break
    return trim(out)


def poly_compose_linear(F: PrimeField, f: list[int], ell: "LinearForm") -> list[int]:
    """f(ell(X)) for a linear form ell(X) = a*X + b, by Horner."""
    p = F.p
    a = ell.a % p
    b = ell.b % p
    out: list[int] = []
    for c in reversed(f):
        # out = out*(aX+b) + c
        nxt = [0] * (len(out) + 1)
        for i, ci in enumerate(out):
            nxt[i] = (nxt[i] + ci * b) % p
            nxt[i + 1] = (nxt[i + 1] + ci * a) % p
        nxt[0] = (nxt[0] + c) % p
        out = nxt
    return trim(out)


def poly_from_roots(F: PrimeField, roots: list[int], multiplicity: int = 1) -> list[int]:
    out = [1]
    for r in roots:
        for _ in range(multiplicity):
            out = poly_mul(F, out, [-r % F.p, 1])
    return out


def lagrange_coeffs(F: PrimeField, xs: list[int]) -> list[list[int]]:
    """Lagrange basis polynomials l_i with l_i(xs[j]) = [i == j]."""
    if len(set(x % F.p for x in xs)) != len(xs):
        raise ValidationError("interpolation points must be distinct")
    full = poly_from_roots(F, xs)
    out = []
    for xi in xs:
        num, rem = poly_divmod(F, full, [-xi % F.p, 1])
        assert not rem
        out.append(poly_scale(F, num, F.inv(poly_eval(F, num, xi))))
    return out


def lagrange_interpolate(F: PrimeField, xs: list[int], ys: list[int]) -> list[int]:
    """The unique polynomial of degree < len(xs) through the given points."""
    out: list[int] = []
    for li, y in zip(lagrange_coeffs(F, xs), ys):
        out = poly_add(F, out, poly_scale(F, li, y))
    return out


def poly_crt(F: PrimeField, residues: list[list[int]], moduli: list[list[int]]) -> list[int]:
    """Unique f mod prod(moduli) with f = residues[i] mod moduli[i].

    Incremental pairwise merge via extended gcd; moduli must be pairwise
    coprime (checked as each merge demands gcd 1).
    """
    if len(residues) != len(moduli):
        raise ValidationError("residue/modulus count mismatch")
    if not moduli:
        return []
    M = trim(list(moduli[0]))
    f = poly_mod(F, trim(list(residues[0])), M)
    for res, mod in zip(residues[1:], moduli[1:]):
        g, u, v = poly_xgcd(F, M, mod)
        if g != [1]:
            raise ValidationError("moduli are not pairwise coprime (gcd has positive degree)")
        # f_new = f + M*u*(res - f)  == f mod M, == res mod mod
        delta = poly_sub(F, res, f)
        lift = poly_mul(F, poly_mul(F, M, u), delta)
        M = poly_mul(F, M, mod)
        f = poly_mod(F, poly_add(F, f, lift), M)
    return f
