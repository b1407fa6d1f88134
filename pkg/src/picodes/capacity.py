"""Capacity-regime list decoding via operator composition schemes.

The decoder fixes two sub-families of the code's operators: m combined
operators G_0..G_{m-1} (each degree-preserving, with jointly MDS leading
coefficients) and r tracking operators T_0..T_{r-1} (linearly extendible
on their own, cutting out degree-r pairwise coprime ideals). The glue is
the numeric matrix h_{i,a} turning a received symbol c_a into the values
T(G_i(f))(a); it is derived by evaluation and verified for every message
degree, never transcribed from a closed form.

Decoding interpolates nonzero Q_0..Q_{m-1} of degree <= D = floor(nr/m)
with sum_i Q_i(M_T)(a) h_{i,a} c_a = 0 at every point, then solves the
residual system sum_i Q_i * G_i(f) = 0 for f. Every message agreeing
with the received word on more than (D+k-1)/r coordinates contributes a
degree-r ideal divisor per agreeing point and is forced into the kernel,
whose dimension the MDS property caps at m-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import (
    GuaranteeViolation,
    LinearForm,
    Poly,
    PolyMatrix,
    UnsupportedRegimeError,
    ValidationError,
    kernel_basis,
    mod_matmul,
    poly_gcd,
    solve_linear,
    trim,
)
from .codes import PolyIdealCode, check_received
from .operators import (
    ActionTerm,
    ExtensionMatrix,
    Operator,
    OperatorFamily,
    build_operator_family,
    diag_matrix,
    ideal_generator,
    pascal_table,
    verify_diag_mds,
)

_ENUM_DEFAULT_CAP = 10**6
_ENUM_CHUNK = 1 << 14

STRATEGIES = ("generic", "diagonal", "shifted_nilpotent")


@dataclass
class CompositionScheme:
    """Everything decode-time needs: (G, T, h) plus cached structure.

    h has shape (n, m, r, s): h[ai, i] maps the residue coefficients at
    point ai to the values (T_0(G_i f), ..., T_{r-1}(G_i f)) at that point.
    gdiag rows are the leading coefficients [X^e] G_i(X^e); gmats holds the
    full (k, k) coefficient matrices only when some G_i is non-diagonal.
    """

    code: PolyIdealCode
    m: int
    r: int
    G: OperatorFamily
    T: OperatorFamily
    M_T: ExtensionMatrix
    h: np.ndarray
    t_ideal_degree: int
    constraint_rows: str
    gdiag: np.ndarray
    gmats: np.ndarray | None
    D: int

    @property
    def t_min(self) -> int:
        """Smallest agreement that forces a message into the decoded span."""
        return (self.D + self.code.k - 1) // self.r + 1


@dataclass
class DecodeResult:
    """The decoded affine space: particular + span(kernel_basis).

    enumerated is filled only when the span is small enough to list; it
    holds the agreement-filtered candidates, best agreement first.
    """

    particular: Poly
    kernel_basis: list[Poly]
    enumerated: list[Poly] | None
    t_min: int

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


def _vandermonde_combos(F, values: list[int], m: int) -> list[list[int]]:
    """Rows b_0..b_{m-1} with sum_c b_i[c] * values[c]^j = delta_{ij} (j < m).

    values must be m distinct field elements; each row solves against their
    Vandermonde matrix.
    """
    p = F.p
    vals = [v % p for v in values]
    if len(set(vals)) != m:
        raise UnsupportedRegimeError(
            "combination anchors coincide; the moment system is singular"
        )
    B = np.array([[pow(v, j, p) for v in vals] for j in range(m)], dtype=np.int64)
    rows = []
    for i in range(m):
        e = np.zeros(m, dtype=np.int64)
        e[i] = 1
        x, _ = solve_linear(B, e, p)
        if x is None:
            raise UnsupportedRegimeError("combination moment system is singular")
        rows.append([int(c) for c in x])
    return rows


def _first_ops_T(code: PolyIdealCode, fam: OperatorFamily, em: ExtensionMatrix,
                 r: int) -> tuple[OperatorFamily, ExtensionMatrix]:
    """The first r family operators with the matching top-left extension block.

    Valid because every family's extension matrix is lower triangular, so
    X*T_j(f) only involves T_0..T_j.
    """
    sub = [row[:r] for row in em.matrix.entries[:r]]
    T = OperatorFamily(code.field, fam.ops[:r], bound=fam.bound)
    return T, ExtensionMatrix(PolyMatrix(code.field, sub))


def _t_value_tensor(scheme_points, M_T: ExtensionMatrix, T: OperatorFamily,
                    bound: int) -> np.ndarray:
    """(n, r, bound) tensor of T_j(X^e)(a), by the extension recurrence.

    v_{e+1}(a) = M_T(a) v_e(a), seeded with the values of T on the
    constant polynomial 1.
    """
    p = T.field.p
    pts = np.asarray(scheme_points, dtype=np.int64) % p
    n = len(pts)
    r = T.size
    Ma = M_T.eval_at_points(pts)
    out = np.empty((n, r, bound), dtype=np.int64)
    cur = np.stack([op.apply_at([1], pts) for op in T.ops], axis=1)  # (n, r)
    for e in range(bound):
        out[:, :, e] = cur
        if e + 1 < bound:
            cur = mod_matmul(Ma, cur[:, :, None], p)[:, :, 0]
    return out


def _derive_h_points(code: PolyIdealCode, G: OperatorFamily, T: OperatorFamily,
                     M_T: ExtensionMatrix, points, gdiag: np.ndarray,
                     gmats: np.ndarray | None) -> np.ndarray:
    """h for every listed point, verified against every message degree.

    T(G_i(X^e))(a) = sum_w Gmat_i[w, e] T(X^w)(a), and for e < min(s, k)
    the residue of X^e is the unit vector e_e, so those columns ARE h.
    Degrees e in [s, k) are then checked against h applied to the actual
    residues; any mismatch falsifies the composition property.  Columns
    c in [k, s), if any, stay zero: every residue of a message is zero
    there, so they never enter the identity.
    """
    p = code.p
    n, s, k = len(points), code.s, code.k
    m, r = G.size, T.size
    TE = _t_value_tensor(points, M_T, T, k)  # (n, r, k)
    V = np.empty((m, n, r, k), dtype=np.int64)
    for i in range(m):
        if gmats is None:
            V[i] = TE * gdiag[i][None, None, :] % p
        else:
            V[i] = mod_matmul(TE, gmats[i], p)
    h = np.zeros((m, n, r, s), dtype=np.int64)
    h[:, :, :, : min(s, k)] = V[:, :, :, : min(s, k)]
    if tuple(points) != tuple(code.points):
        raise ValidationError("h derivation expects the code's own evaluation points")
    want = mod_matmul(h, code.residue_tensor[None, :, :, :], p)  # (m, n, r, k)
    if not np.array_equal(want, V):
        bad = np.nonzero(np.any(want != V, axis=2))
        i0, a0, e0 = int(bad[0][0]), int(bad[1][0]), int(bad[2][0])
        raise GuaranteeViolation(
            f"scheme does not list-compose at point {code.points[a0]}, exponent {e0}"
            f" (combined operator {i0})"
        )
    return h.transpose(1, 0, 2, 3).copy()  # (n, m, r, s)


def derive_h(code: PolyIdealCode, G: OperatorFamily, T: OperatorFamily,
             M_T: ExtensionMatrix, a: int) -> list[np.ndarray]:
    """The m matrices h_{i,a} for one evaluation point, verified to degree k."""
    try:
        ai = code.points.index(a)
    except ValueError:
        raise ValidationError(f"{a} is not an evaluation point of this code")
    gdiag, gmats = _g_coefficients(code, G)
    h = _derive_h_points(code, G, T, M_T, code.points, gdiag, gmats)
    return [h[ai, i] for i in range(G.size)]


def _g_coefficients(code: PolyIdealCode, G: OperatorFamily) -> tuple[np.ndarray, np.ndarray | None]:
    """Leading-coefficient rows of G, plus full matrices when G is not diagonal.

    A single term c * X^d f^(d)(a*X) maps X^e to a multiple of X^e, so such
    families never need the full matrices.
    """
    k = code.k
    gdiag = diag_matrix(G, k)
    diagonal = all(
        op.terms is not None and len(op.terms) <= 1
        and all(t.b == 0 and t.dorder == t.xshift for t in op.terms)
        for op in G.ops
    )
    gmats = None if diagonal else np.stack([op.matrix_block(0, k, k) for op in G.ops])
    return gdiag, gmats


def build_scheme(code: PolyIdealCode, m: int) -> CompositionScheme:
    """Construct and fully verify the composition scheme for a code.

    Dispatch: frs keeps its first m operators; derivative-style families
    use G_i = (X^i/i!) d^i/dX^i; translation-style families use moment
    combinations G_i = X^i sum_c b_i(c) L_c; an affine map of order >= k
    decodes like frs, and the remaining affine regimes follow the v >= sqrt(s)
    derivative route or the sqrt(s) < u substitution route. Everything the
    decoding guarantee relies on is checked here: degree preservation,
    leading-coefficient MDS, tracking-ideal degrees and coprimality, and
    the list-composition identity at every point and degree.
    """
    spec = code.spec
    F = code.field
    p, s, k, n = code.p, code.s, code.k, code.n
    if not 1 <= m < s:
        raise ValidationError(f"need 1 <= m < s, got m={m}, s={s}")
    fam, em = build_operator_family(spec, bound=k)
    style, r = _dispatch_style(code, m)
    G = _build_G(code, fam, style, m)
    T, M_T = _first_ops_T(code, fam, em, r)
    for i, op in enumerate(G.ops):
        ok, bad_e = op.is_degree_preserving(k)
        if not ok:
            raise GuaranteeViolation(
                f"combined operator {i} raises degree at exponent {bad_e}; "
                "no degree-preserving combination exists in this regime"
            )
    gdiag, gmats = _g_coefficients(code, G)
    if not verify_diag_mds(gdiag, p):
        raise GuaranteeViolation(
            "leading coefficients of the combined operators are not MDS; "
            "the reconstruction dimension bound would not hold"
        )
    gens = []
    for a in code.points:
        gen = ideal_generator(T, a)
        if len(gen) - 1 != r:
            raise GuaranteeViolation(
                f"tracking ideal at point {a} has degree {len(gen) - 1}, expected {r}"
            )
        gens.append(gen)
    for (i1, g1), (i2, g2) in combinations(enumerate(gens), 2):
        if len(poly_gcd(F, g1, g2)) != 1:
            raise GuaranteeViolation(
                f"tracking ideals at points {code.points[i1]} and {code.points[i2]} share a factor"
            )
    h = _derive_h_points(code, G, T, M_T, code.points, gdiag, gmats)
    if M_T.matrix.is_diagonal():
        strategy = "diagonal"
    elif M_T.matrix.shift_plus_constant() is not None and _strictly_lower(M_T):
        strategy = "shifted_nilpotent"
    else:
        strategy = "generic"
    return CompositionScheme(
        code=code, m=m, r=r, G=G, T=T, M_T=M_T, h=h, t_ideal_degree=r,
        constraint_rows=strategy, gdiag=gdiag, gmats=gmats, D=n * r // m,
    )


def _strictly_lower(M_T: ExtensionMatrix) -> bool:
    N = M_T.matrix.shift_plus_constant()
    return N is not None and not np.any(np.triu(N))


def _dispatch_style(code: PolyIdealCode, m: int) -> tuple[str, int]:
    """Choose the combination style and tracking count r for a family."""
    spec = code.spec
    F = code.field
    p, s, k = code.p, code.s, code.k
    fam = spec.family
    if fam == "rs":
        raise ValidationError("no composition scheme exists for s = 1")
    if fam == "frs":
        if F.element_order(spec.gamma) < k:
            raise UnsupportedRegimeError(
                f"multiplier order {F.element_order(spec.gamma)} is below k={k}; "
                "leading coefficients would repeat"
            )
        return "frs", s - m + 1
    if fam == "mult":
        if p < max(s, k):
            raise UnsupportedRegimeError(
                f"characteristic {p} below max(s, k) = {max(s, k)}"
            )
        return "mult", s - m + 1
    if fam == "additive_frs":
        if p < max(s, k):
            raise UnsupportedRegimeError(
                f"characteristic {p} below max(s, k) = {max(s, k)}"
            )
        return "additive", s - m + 1
    # affine_frs
    alpha, beta = spec.alpha % p, spec.beta % p
    if alpha == 1 and beta == 0:
        if p < max(s, k):
            raise UnsupportedRegimeError(
                f"characteristic {p} below max(s, k) = {max(s, k)}"
            )
        return "mult", s - m + 1
    if alpha == 1:
        # pure translation: every operator has leading coefficient 1, so the
        # multiplier route can never be MDS; the additive combinations apply
        if p < max(s, k):
            raise UnsupportedRegimeError(
                f"characteristic {p} below max(s, k) = {max(s, k)}"
            )
        return "additive", s - m + 1
    ell = LinearForm(F, alpha, beta)
    t = ell.order()
    if t >= k:
        return "frs", s - m + 1
    if p <= k:
        raise UnsupportedRegimeError(
            f"affine map of order {t} < k needs characteristic > k, got {p}"
        )
    u = F.element_order(alpha)
    v = s // t if t <= s else 0
    if v * v >= s:
        if v <= m:
            raise UnsupportedRegimeError(
                f"derivative reach v={v} does not exceed m={m}; no tracking operators remain"
            )
        return "affine_mult", (v - m) * u
    if u * u > s:
        return "affine_subst", s - m + 1
    raise UnsupportedRegimeError(
        f"affine regime not covered: order u={u} and derivative reach v={v} "
        f"both fall below sqrt(s) for s={s}"
    )


def _build_G(code: PolyIdealCode, fam: OperatorFamily, style: str, m: int) -> OperatorFamily:
    F = code.field
    p, s, k = code.p, code.s, code.k
    spec = code.spec
    if style == "frs":
        ops = fam.ops[:m]
    elif style in ("mult", "affine_mult"):
        # G_i = (X^i / i!) * (d/dX)^i; leading coefficient binom(e, i)
        ops = []
        factinv = 1
        for i in range(m):
            if i:
                factinv = factinv * pow(i, -1, p) % p
            ops.append(Operator(F, terms=(ActionTerm(factinv, i, i, 1, 0),),
                                name=f"(X^{i}/{i}!) f^({i})"))
    elif style == "additive":
        beta = spec.beta % p
        combos = _vandermonde_combos(F, list(range(m)), m)
        ops = []
        for i in range(m):
            terms = tuple(
                ActionTerm(combos[i][c], 0, i, 1, c * beta % p)
                for c in range(m) if combos[i][c]
            )
            ops.append(Operator(F, terms=terms, name=f"X^{i} moment{i}"))
    elif style == "affine_subst":
        ell = LinearForm(F, spec.alpha, spec.beta)
        u = F.element_order(spec.alpha % p)
        if m > u:
            raise UnsupportedRegimeError(
                f"only {u} distinct substitutions available for m={m} combinations"
            )
        deltas = []
        iterates = []
        for j in range(m):
            aj, bj = ell.iterate_coeffs(j)
            iterates.append((aj, bj))
            # anchor proportional to beta*(alpha^j - 1)/alpha^j, distinct while j < order
            deltas.append(bj * pow(aj, -1, p) % p)
        combos = _vandermonde_combos(F, deltas, m)
        ops = []
        for i in range(m):
            terms = tuple(
                ActionTerm(combos[i][j], 0, i, iterates[j][0], iterates[j][1])
                for j in range(m) if combos[i][j]
            )
            ops.append(Operator(F, terms=terms, name=f"X^{i} subst-moment{i}"))
    else:
        raise ValidationError(f"unknown combination style {style!r}")
    return OperatorFamily(F, tuple(ops), bound=k, degree_preserving=True)


def constraint_matrix(scheme: CompositionScheme, received, strategy: str | None = None) -> np.ndarray:
    """The (n*r) x m*(D+1) interpolation system; column (i, d) holds the
    coefficient of q_{i,d} in each constraint row.

    Row block a says sum_i Q_i(M_T)(a) h_{i,a} c_a = 0. All strategies
    produce identical matrices; diagonal and shifted_nilpotent are closed
    forms available when M_T commutes nicely, generic runs the power
    recurrence z_{d+1} = M_T(a) z_d.
    """
    code = scheme.code
    p = code.p
    n, r, m, D = code.n, scheme.r, scheme.m, scheme.D
    strategy = strategy or scheme.constraint_rows
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown constraint strategy {strategy!r}")
    rec = check_received(code, received)
    # hc[a, i] = h_{i,a} @ c_a, the values T(G_i f)(a) would take if c_a were honest
    hc = mod_matmul(scheme.h, rec[:, None, :, None], p)[:, :, :, 0]  # (n, m, r)
    pts = np.asarray(code.points, dtype=np.int64) % p
    A = np.empty((n, r, m, D + 1), dtype=np.int64)
    if strategy == "diagonal":
        if not scheme.M_T.matrix.is_diagonal():
            raise ValidationError("diagonal strategy needs a diagonal extension matrix")
        lam = np.diagonal(scheme.M_T.eval_at_points(pts), axis1=1, axis2=2)  # (n, r)
        base = hc.transpose(0, 2, 1)  # (n, r, m)
        pw = np.ones((n, r), dtype=np.int64)
        for d in range(D + 1):
            A[:, :, :, d] = base * pw[:, :, None] % p
            pw = pw * lam % p
    elif strategy == "shifted_nilpotent":
        N = scheme.M_T.matrix.shift_plus_constant()
        if N is None or np.any(np.triu(N)):
            raise ValidationError("shifted_nilpotent strategy needs M_T = X*I + nilpotent N")
        # (a*I + N)^d = sum_t C(d,t) a^(d-t) N^t, N^r = 0
        tab = pascal_table(p, D + 2)
        w = hc.transpose(0, 2, 1).copy()  # N^t applied to hc, starting t=0
        A[:] = 0
        ds = np.arange(D + 1, dtype=np.int64)
        for t in range(min(r, D + 1)):
            apow = np.ones((n, D + 1), dtype=np.int64)
            cur = np.ones(n, dtype=np.int64)
            for d in range(t, D + 1):
                apow[:, d] = cur
                cur = cur * pts % p
            coef = tab[ds, t][None, :] * apow % p  # (n, D+1); zero for d < t via C(d,t)
            A += w[:, :, :, None] * coef[:, None, None, :] % p
            A %= p
            if t + 1 < r:
                w = mod_matmul(N[None, :, :], w, p)
    else:
        Ma = scheme.M_T.eval_at_points(pts)  # (n, r, r)
        cur = hc.transpose(0, 2, 1).copy()  # (n, r, m)
        for d in range(D + 1):
            A[:, :, :, d] = cur
            if d < D:
                cur = mod_matmul(Ma, cur, p)
    return A.reshape(n * r, m * (D + 1))


def interpolate_linear_Q(scheme: CompositionScheme, code: PolyIdealCode, received) -> list[Poly]:
    """Nonzero Q_0..Q_{m-1}, deg <= D, killing every point's constraint rows.

    m*(D+1) unknowns against n*r constraints with m*(D+1) > n*r, so the
    kernel is never empty; the first basis vector is returned.
    """
    if code is not scheme.code:
        raise ValidationError("scheme was built for a different code")
    p = code.p
    m, D = scheme.m, scheme.D
    if m * (D + 1) <= code.n * scheme.r:
        raise GuaranteeViolation("interpolation accounting failed: system is not underdetermined")
    A = constraint_matrix(scheme, received)
    kb = kernel_basis(A, p)
    if kb.shape[0] == 0:
        raise GuaranteeViolation("parameter accounting violated")
    q = kb[0]
    return [trim([int(c) for c in q[i * (D + 1) : (i + 1) * (D + 1)]]) for i in range(m)]


def reconstruct_space(scheme: CompositionScheme, Q: list[Poly], k: int) -> DecodeResult:
    """All f of degree < k with sum_i Q_i * G_i(f) identically zero.

    The residual's coefficient matrix stacks a Toeplitz band per Q_i times
    G_i's coefficient matrix; its kernel dimension is capped by the MDS
    property of the leading coefficients.
    """
    code = scheme.code
    p = code.p
    m, D = scheme.m, scheme.D
    if k != code.k:
        raise ValidationError(f"scheme carries k={code.k}, got {k}")
    if all(not qi for qi in Q):
        raise ValidationError("Q must be nonzero")
    rows = D + k
    cols = np.arange(k)
    widx = np.arange(rows)[:, None] - cols[None, :]  # w - v
    S = np.zeros((rows, k), dtype=np.int64)
    for i in range(m):
        qi = np.zeros(D + 1, dtype=np.int64)
        qc = Q[i]
        qi[: len(qc)] = qc
        qext = np.concatenate([qi, np.zeros(k, dtype=np.int64)])
        T_i = np.where(widx >= 0, qext[np.clip(widx, 0, None)], 0)
        if scheme.gmats is None:
            S = (S + T_i * scheme.gdiag[i][None, :]) % p
        else:
            S = (S + mod_matmul(T_i, scheme.gmats[i], p)) % p
    kb = kernel_basis(S, p)
    if kb.shape[0] > m - 1:
        raise GuaranteeViolation("Diag distance hypothesis violated")
    basis = [[int(c) for c in row] for row in kb]
    return DecodeResult(
        particular=[0] * k, kernel_basis=basis, enumerated=None, t_min=scheme.t_min,
    )


def list_decode_capacity(code: PolyIdealCode, scheme: CompositionScheme, received,
                         enumeration_cap: int = _ENUM_DEFAULT_CAP) -> DecodeResult:
    """Decode to the affine candidate space; enumerate it when small.

    Guarantee: every message whose encoding agrees with the received word
    on at least t_min coordinates lies in the returned span. When
    p^dimension <= enumeration_cap the span is expanded, re-encoded, and
    agreement-filtered into `enumerated` (best agreement first).
    """
    rec = check_received(code, received)
    Q = interpolate_linear_Q(scheme, code, received)
    result = reconstruct_space(scheme, Q, code.k)
    p, k = code.p, code.k
    dim = result.dimension
    if p**dim <= enumeration_cap:
        basis = np.array(result.kernel_basis, dtype=np.int64).reshape(dim, k)
        total = p**dim
        flat_res = code.residue_tensor.reshape(code.n * code.s, k)
        scored = []
        for lo in range(0, total, _ENUM_CHUNK):
            hi = min(lo + _ENUM_CHUNK, total)
            idx = np.arange(lo, hi, dtype=np.int64)
            coeffs = np.empty((hi - lo, dim), dtype=np.int64)
            for t in range(dim):
                coeffs[:, t] = idx % p
                idx //= p
            msgs = mod_matmul(coeffs, basis, p) if dim else np.zeros((hi - lo, k), np.int64)
            encs = mod_matmul(msgs, flat_res.T, p).reshape(-1, code.n, code.s)
            agr = np.sum(np.all(encs == rec[None, :, :], axis=2), axis=1)
            for row in np.nonzero(agr >= result.t_min)[0]:
                scored.append((int(agr[row]), [int(c) for c in msgs[row]]))
        scored.sort(key=lambda t: (-t[0], t[1]))
        result.enumerated = [f for _, f in scored]
    return result
