"""List decoding up to the Johnson radius.

The decoder interpolates a nonzero bivariate Q(X, Y) of bounded
(1, k-1)-weighted degree that is forced, at every coordinate i, to satisfy

    Q(X, Y) = (Y - c_i)^r * B_i(X, Y) - sum_{j=1..r} E_i(X)^j (Y - c_i)^{r-j} A_{i,j}(X)

where c_i is the received residue and E_i the coordinate's modulus. Any
message polynomial agreeing with the received word on more than D/(rs)
coordinates is then a Y-root of Q: each agreeing coordinate contributes an
E_i^r divisor of Q(X, f(X)), and the total degree of those divisors
exceeds the weighted degree bound, forcing Q(X, f(X)) to vanish.

Root extraction peels coefficients: branch on the roots of the lowest
X-slice, substitute Y -> X*Y + root, recurse to depth k, then keep the
candidates that actually satisfy Q(X, f(X)) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    BivarPoly,
    GuaranteeViolation,
    Poly,
    UnsupportedRegimeError,
    ValidationError,
    degree,
    echelon,
    kernel_basis,
    poly_eval_many,
    poly_mul,
    trim,
    weighted_monomial_count,
    weighted_monomials,
)
from .codes import PolyIdealCode, check_received, hamming_agreement
from .operators import pascal_table

_ROOT_SCAN_LIMIT = 1 << 22  # slice roots come from a full field sweep
_ROOT_NODE_BUDGET = 100_000
_MAX_MULTIPLICITY = 4096


@dataclass(frozen=True)
class JohnsonParams:
    """Interpolation parameters: multiplicity r, degree bounds, agreement cutoff.

    D is the (1, k-1)-weighted degree bound on Q, sitting in the unit
    interval above sqrt(n*s*r*(r+1)*k); D_prime rounds it up to a multiple
    of s; decoding succeeds for agreement >= t_min = floor(D/(r*s)) + 1.
    """

    r: int
    D: int
    D_prime: int
    t_min: int


def johnson_params(code: PolyIdealCode, r: int | None = None, epsilon: float | None = None) -> JohnsonParams:
    """Pick interpolation parameters from a multiplicity or a slack epsilon.

    With epsilon, r becomes the smallest multiplicity whose guaranteed
    agreement fraction D/(n*r*s) is within epsilon of the sqrt(k/sn) radius.
    """
    n, s, k = code.n, code.s, code.k
    if s >= k - 1:
        raise UnsupportedRegimeError(f"decoder needs s < k - 1, got s={s}, k={k}")
    if (r is None) == (epsilon is None):
        raise ValidationError("give exactly one of r and epsilon")
    if r is None:
        if epsilon <= 0:
            raise ValidationError("epsilon must be positive")
        base = math.sqrt(k / (s * n))
        r = 1
        while 1.0 / (n * r * s) + base * math.sqrt(1.0 + 1.0 / r) > base + epsilon:
            r += 1
            if r > _MAX_MULTIPLICITY:
                raise UnsupportedRegimeError(
                    f"epsilon={epsilon} needs multiplicity beyond {_MAX_MULTIPLICITY}"
                )
    if r < 1:
        raise ValidationError(f"multiplicity must be >= 1, got {r}")
    D = math.isqrt(n * s * r * (r + 1) * k) + 1
    D_prime = -(-D // s) * s
    t_min = D // (r * s) + 1
    # the interpolation system must be underdetermined, with room n*s*r(r+1)/2
    if weighted_monomial_count(k - 1, D) <= n * s * r * (r + 1) // 2:
        raise GuaranteeViolation("interpolation accounting failed: not enough monomials under D")
    return JohnsonParams(r=r, D=D, D_prime=D_prime, t_min=t_min)


def _equation_index(s: int, D_prime: int) -> tuple[np.ndarray, int]:
    """Flat numbering of the monomials X^x Y^y with x + s*y <= D_prime; -1 outside."""
    ymax = D_prime // s
    eqid = -np.ones((D_prime + 1, ymax + 1), dtype=np.int64)
    cnt = 0
    for y in range(ymax + 1):
        w = D_prime - s * y
        eqid[: w + 1, y] = np.arange(cnt, cnt + w + 1)
        cnt += w + 1
    return eqid, cnt


def _local_columns(code: PolyIdealCode, i: int, c: np.ndarray, params: JohnsonParams,
                   eqid: np.ndarray, NE: int, bmon: list[tuple[int, int]], na: int) -> np.ndarray:
    """Coefficient columns of the B_i and A_{i,j} unknowns at coordinate i.

    Every nonzero entry of the shifted grids lands inside the equation
    support, so the windows below never touch a -1 slot with a nonzero value.
    """
    F = code.field
    p = F.p
    r = params.r
    W = len(bmon) + r * na
    C = np.zeros((NE, W), dtype=np.int64)
    ym_grid = np.zeros((max(len(c), 1), 2), dtype=np.int64)
    ym_grid[: len(c), 0] = (-c) % p
    ym_grid[0, 1] = (ym_grid[0, 1] + 1) % p
    ym = BivarPoly(F, ym_grid)  # Y - c_i(X)
    zpow = [BivarPoly(F, [[1]])]
    for _ in range(r):
        zpow.append(zpow[-1].mul(ym))
    col = 0
    Zr = zpow[r].c
    zx, zy = Zr.shape
    for g, h in bmon:
        win = eqid[g : g + zx, h : h + zy]
        m = Zr != 0
        C[win[m], col] = (p - Zr[m]) % p
        col += 1
    epow: Poly = [1]
    for j in range(1, r + 1):
        epow = poly_mul(F, epow, code.moduli[i])
        G = BivarPoly.from_x_poly(F, epow).mul(zpow[r - j]).c
        gx, gy = G.shape
        m = G != 0
        for g in range(na):
            win = eqid[g : g + gx, 0:gy]
            C[win[m], col] = G[m]
            col += 1
    return C


def interpolate_johnson_Q(code: PolyIdealCode, received, params: JohnsonParams) -> BivarPoly:
    """A nonzero Q of (1, k-1)-weighted degree <= D satisfying every local identity.

    The global system is solved blockwise: at each coordinate the local
    unknowns are eliminated by echelon reduction and only the surviving
    constraints on Q's coefficients (at most s*r*(r+1)/2 of them) are kept.
    """
    F = code.field
    p = F.p
    n, s, k = code.n, code.s, code.k
    r, D, Dp = params.r, params.D, params.D_prime
    rec = check_received(code, received)
    qmon = weighted_monomials(k - 1, D)
    NQ = len(qmon)
    eqid, NE = _equation_index(s, Dp)
    R = np.zeros((NE, NQ), dtype=np.int64)
    for t, (u, v) in enumerate(qmon):
        R[eqid[u, v], t] = 1
    bmon = weighted_monomials(s, Dp - r * s)
    na = Dp - r * s + 1
    W = len(bmon) + r * na
    deficit = s * r * (r + 1) // 2
    blocks = []
    for i in range(n):
        C = _local_columns(code, i, rec[i], params, eqid, NE, bmon, na)
        U, piv = echelon(np.concatenate([C, R], axis=1), p)
        qrows = [t for t, pc in enumerate(piv) if pc >= W]
        if len(piv) - len(qrows) != W:
            raise GuaranteeViolation(f"local unknowns lost rank at coordinate {i}")
        if len(qrows) > deficit:
            raise GuaranteeViolation("parameter accounting violated")
        if qrows:
            blocks.append(U[np.asarray(qrows), W:])
    Mq = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, NQ), dtype=np.int64)
    kb = kernel_basis(Mq, p)
    if kb.shape[0] == 0:
        raise GuaranteeViolation("parameter accounting violated")
    grid = np.zeros((D + 1, D // (k - 1) + 1), dtype=np.int64)
    for t, (u, v) in enumerate(qmon):
        grid[u, v] = kb[0][t]
    Q = BivarPoly(F, grid)
    if Q.is_zero():
        raise GuaranteeViolation("parameter accounting violated")
    return Q


def _monolithic_system(code: PolyIdealCode, received, params: JohnsonParams):
    """One flat homogeneous system over all unknowns; cross-check for the
    blockwise path. Columns: [B_0, A_0 | B_1, A_1 | ... | Q]."""
    p = code.field.p
    n, s, k = code.n, code.s, code.k
    r, D, Dp = params.r, params.D, params.D_prime
    rec = check_received(code, received)
    qmon = weighted_monomials(k - 1, D)
    NQ = len(qmon)
    eqid, NE = _equation_index(s, Dp)
    R = np.zeros((NE, NQ), dtype=np.int64)
    for t, (u, v) in enumerate(qmon):
        R[eqid[u, v], t] = 1
    bmon = weighted_monomials(s, Dp - r * s)
    na = Dp - r * s + 1
    W = len(bmon) + r * na
    M = np.zeros((n * NE, n * W + NQ), dtype=np.int64)
    for i in range(n):
        C = _local_columns(code, i, rec[i], params, eqid, NE, bmon, na)
        M[i * NE : (i + 1) * NE, i * W : (i + 1) * W] = C
        M[i * NE : (i + 1) * NE, n * W :] = R
    return M, n * W, NQ


def _sub_shift(Q: BivarPoly, rho: int) -> BivarPoly:
    """Q(X, X*Y + rho)."""
    F = Q.field
    p = F.p
    g = Q.c
    dx1, dy1 = g.shape
    tab = pascal_table(p, dy1 + 1)
    rp = np.array([pow(rho, t, p) for t in range(dy1)], dtype=np.int64)
    out = np.zeros((dx1 + dy1 - 1, dy1), dtype=np.int64)
    for t in range(dy1):
        w = tab[np.arange(t, dy1), t] * rp[: dy1 - t] % p
        h = (g[:, t:dy1].astype(object) @ w.astype(object)) % p if p * p * dy1 >= (1 << 62) \
            else (g[:, t:dy1] @ w) % p
        out[t : t + dx1, t] = h
    return BivarPoly(F, out)


def y_roots(Q: BivarPoly, k: int) -> list[Poly]:
    """All f with deg(f) < k and Q(X, f(X)) identically zero.

    Depth-k coefficient peeling; every surviving candidate is re-checked
    against the original Q, so the enumeration only needs to be complete,
    not sound. Candidates are returned as length-k coefficient vectors.
    """
    if Q.is_zero():
        raise ValidationError("Y-root extraction needs a nonzero polynomial")
    F = Q.field
    p = F.p
    if p >= _ROOT_SCAN_LIMIT:
        raise UnsupportedRegimeError(f"slice root scan over F_{p} is out of range")
    if k <= 0:
        return []
    allx = np.arange(p, dtype=np.int64)
    budget = _ROOT_NODE_BUDGET
    out: list[Poly] = []
    stack: list[tuple[BivarPoly, list[int]]] = [(Q, [])]
    while stack:
        cur, prefix = stack.pop()
        budget -= 1
        if budget < 0:
            raise UnsupportedRegimeError("root search exceeded its node budget")
        g = cur.c
        lead = int(np.nonzero(np.any(g != 0, axis=1))[0][0])
        if lead:  # strip the content X^lead; roots are unchanged
            g = g[lead:]
        ys = trim([int(t) for t in g[0]])
        if degree(ys) <= 0:
            continue  # nonzero constant slice: no root can pass through here
        vals = poly_eval_many(F, ys, allx)
        for rho in allx[vals == 0]:
            nxt = prefix + [int(rho)]
            if len(nxt) == k:
                out.append(nxt)
            else:
                stack.append((_sub_shift(BivarPoly(F, g), int(rho)), nxt))
    return [f for f in out if not trim(Q.compose_y(f))]


def list_decode_johnson(code: PolyIdealCode, received, params: JohnsonParams) -> list[Poly]:
    """Every message polynomial whose encoding agrees with `received` on at
    least t_min coordinates, best agreement first (ties lexicographic).

    Each output is a length-k coefficient vector.
    """
    rec = check_received(code, received)
    Q = interpolate_johnson_Q(code, rec, params)
    scored = []
    for f in y_roots(Q, code.k):
        agr = hamming_agreement(code.encode(f), rec)
        if agr >= params.t_min:
            scored.append((agr, f))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [f for _, f in scored]
