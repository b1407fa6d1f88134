"""Operator view of the code families.

Every family in `codes` can be described by a tuple of linear maps
L_0..L_{s-1} on F_p[X]: the symbol at evaluation point a is
(L_0(f)(a), ..., L_{s-1}(f)(a)), and that vector carries exactly the same
information as the residue f mod E_a. All maps built here have the shape

    f  ->  coef * X^xshift * f^(d)(a*X + b)

stored as ActionTerm(coef, d, xshift, a, b); on a monomial X^e this is
coef * e(e-1)...(e-d+1) * X^xshift * (a*X + b)^(e-d). Operators obtained
by converting explicit moduli (pic_to_lelo) carry a dense table of
monomial images instead.

The property everything leans on is linear extendibility: a matrix M(X)
of polynomials with L(X*f) = M(X)*L(f) componentwise. It makes
{f : L(f)(a) = 0} an ideal whose monic generator is the code modulus at
a, and it is what lets a decoder apply polynomials in M to received
symbols without seeing the message.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    GuaranteeViolation,
    LinearForm,
    Poly,
    PolyMatrix,
    PrimeField,
    ValidationError,
    degree,
    kernel_basis,
    mod_matmul,
    poly_add,
    poly_compose_linear,
    poly_derivative,
    poly_eval,
    poly_eval_many,
    poly_mul,
    poly_scale,
    rank_mod,
    trim,
)
from .codes import FamilySpec, check_family_params
from .rng import SplitMix64

# Entrywise products below are int64; two factors < p must not overflow.
_TABLE_PRIME_LIMIT = 1 << 31

_PASCAL: dict[int, np.ndarray] = {}


def pascal_table(p: int, size: int) -> np.ndarray:
    """Binomial coefficients mod p, tab[n, r] = C(n, r) for n, r < size.

    Cached per prime and grown on demand; callers index, never rely on shape.
    """
    tab = _PASCAL.get(p)
    if tab is None or tab.shape[0] < size:
        size = max(size, 128)
        tab = np.zeros((size, size), dtype=np.int64)
        tab[:, 0] = 1
        for n in range(1, size):
            tab[n, 1 : n + 1] = (tab[n - 1, 1 : n + 1] + tab[n - 1, 0:n]) % p
        _PASCAL[p] = tab
    return tab


def _pow_seq(p: int, base: int, count: int) -> np.ndarray:
    """[base^0, base^1, ..., base^(count-1)] mod p."""
    out = np.empty(max(count, 0), dtype=np.int64)
    cur = 1
    base %= p
    for i in range(count):
        out[i] = cur
        cur = cur * base % p
    return out


def _ffact_vec(p: int, d: int, es: np.ndarray) -> np.ndarray:
    """Falling factorial e(e-1)...(e-d+1) mod p per entry; zero when e < d."""
    out = np.ones(len(es), dtype=np.int64)
    for t in range(d):
        out = out * ((es - t) % p) % p
    return out


@dataclass(frozen=True)
class ActionTerm:
    """One building block f -> coef * X^xshift * f^(dorder)(a*X + b)."""

    coef: int
    dorder: int
    xshift: int
    a: int
    b: int


class Operator:
    """A linear map on F_p[X], as a sum of ActionTerms or a monomial table.

    A table has shape (rows, bound): column e holds the coefficients of the
    image of X^e, so the operator is only defined for exponents below bound.
    Term-backed operators work at any exponent.
    """

    def __init__(self, field: PrimeField, terms=None, table=None, name: str = ""):
        if (terms is None) == (table is None):
            raise ValidationError("operator needs either terms or a table")
        if field.p >= _TABLE_PRIME_LIMIT:
            raise ValidationError(f"operator arithmetic needs p < 2^31, got p={field.p}")
        self.field = field
        self.name = name
        self.table = None
        self.terms = None
        p = field.p
        if terms is not None:
            norm = []
            for t in terms:
                if t.dorder < 0 or t.xshift < 0:
                    raise ValidationError("term orders and shifts must be nonnegative")
                if t.coef % p:
                    norm.append(ActionTerm(t.coef % p, t.dorder, t.xshift, t.a % p, t.b % p))
            self.terms = tuple(norm)
        else:
            tab = np.asarray(table, dtype=np.int64) % p
            if tab.ndim != 2:
                raise ValidationError("operator table must be 2-dimensional")
            self.table = tab

    def __repr__(self):
        return f"Operator({self.name or ('table' if self.table is not None else 'terms')})"

    @property
    def bound(self) -> int | None:
        return None if self.table is None else self.table.shape[1]

    def row_excess(self) -> int:
        """Worst-case image degree minus input degree (0 means degree cannot grow)."""
        if self.table is not None:
            return max(0, self.table.shape[0] - self.table.shape[1])
        return max((t.xshift - t.dorder for t in self.terms), default=0) if self.terms else 0

    def image_rows(self, upto: int) -> int:
        """Rows needed to hold every image coefficient for exponents <= upto."""
        if self.table is not None:
            return self.table.shape[0]
        return upto + 1 + max(0, self.row_excess())

    def matrix_block(self, lo: int, hi: int, rows: int) -> np.ndarray:
        """Dense (rows, hi-lo) slab: column e-lo = coefficients of the image of X^e.

        Coefficients of X^w with w >= rows are silently dropped for term
        operators (pick rows via image_rows to keep everything); a table
        operator refuses to drop nonzero entries.
        """
        p = self.field.p
        width = hi - lo
        out = np.zeros((rows, width), dtype=np.int64)
        if self.table is not None:
            if hi > self.table.shape[1]:
                raise ValidationError(
                    f"operator table covers exponents < {self.table.shape[1]}, asked for {hi - 1}"
                )
            avail = min(rows, self.table.shape[0])
            out[:avail] = self.table[:avail, lo:hi]
            if self.table.shape[0] > rows and np.any(self.table[rows:, lo:hi]):
                raise ValidationError("table image does not fit the requested row count")
            return out
        es = np.arange(lo, hi, dtype=np.int64)
        for t in self.terms:
            scale = t.coef * _ffact_vec(p, t.dorder, es) % p
            d, xs, a, b = t.dorder, t.xshift, t.a, t.b
            if a == 0 and b == 0:
                # (0)^(e-d) survives only at e = d
                if lo <= d < hi and xs < rows:
                    out[xs, d - lo] = (out[xs, d - lo] + scale[d - lo]) % p
                continue
            if b == 0:
                # single monomial a^(e-d) * X^(xs + e - d)
                ridx = xs + es - d
                ok = (es >= d) & (ridx < rows)
                if np.any(ok):
                    pw = _pow_seq(p, a, hi - d)
                    vals = scale[ok] * pw[es[ok] - d] % p
                    cols = (es - lo)[ok]
                    out[ridx[ok], cols] = (out[ridx[ok], cols] + vals) % p
                continue
            if a == 0:
                # constant b^(e-d) parked at row xshift
                if xs < rows:
                    ok = es >= d
                    pw = _pow_seq(p, b, hi - d)
                    vals = np.zeros(width, dtype=np.int64)
                    vals[ok] = scale[ok] * pw[es[ok] - d] % p
                    out[xs, :] = (out[xs, :] + vals) % p
                continue
            # dense case: coefficient binom(e-d, w) a^w b^(e-d-w) at row xs + w
            avail = rows - xs
            if avail <= 0:
                continue
            wd = min(avail, hi - d)
            if wd <= 0:
                continue
            tab = pascal_table(p, hi)
            nidx = np.clip(es - d, 0, None)
            block = tab[nidx, :wd].T.copy()  # (wd, width); e < d columns die via scale
            rowscale = _pow_seq(p, a, wd) * _pow_seq(p, self.field.inv(b), wd) % p
            bcol = np.zeros(width, dtype=np.int64)
            ok = es >= d
            bpow = _pow_seq(p, b, hi - d)
            bcol[ok] = bpow[es[ok] - d]
            colscale = bcol * scale % p
            block = block * rowscale[:, None] % p * colscale[None, :] % p
            out[xs : xs + wd] = (out[xs : xs + wd] + block) % p
        return out

    def monomial_image(self, e: int) -> Poly:
        """Image of X^e as a coefficient list."""
        blk = self.matrix_block(e, e + 1, self.image_rows(e))
        return trim([int(c) for c in blk[:, 0]])

    def apply(self, f: Poly) -> Poly:
        """Image of an arbitrary polynomial."""
        F = self.field
        p = F.p
        f = [c % p for c in f]
        if self.table is not None:
            if degree(f) >= self.table.shape[1]:
                raise ValidationError("polynomial degree exceeds the operator table bound")
            acc = np.zeros(self.table.shape[0], dtype=np.int64)
            for e, c in enumerate(f):
                if c:
                    acc = (acc + c * self.table[:, e]) % p
            return trim([int(c) for c in acc])
        res: Poly = [0]
        for t in self.terms:
            g = poly_derivative(F, f, t.dorder)
            if t.a == 0:
                g = [poly_eval(F, g, t.b)]
            else:
                g = poly_compose_linear(F, g, LinearForm(F, t.a, t.b))
            g = poly_scale(F, g, t.coef)
            res = poly_add(F, res, [0] * t.xshift + g)
        return trim(res)

    def apply_at(self, f: Poly, points) -> np.ndarray:
        """Values of the image at many points, without expanding the image."""
        F = self.field
        p = F.p
        pts = np.asarray(points, dtype=np.int64) % p
        if self.table is not None:
            img = self.apply(f)
            return poly_eval_many(F, img if img != [0] else [0], pts)
        acc = np.zeros(len(pts), dtype=np.int64)
        for t in self.terms:
            g = poly_derivative(F, f, t.dorder)
            vals = poly_eval_many(F, g, (t.a * pts + t.b) % p)
            xp = np.ones(len(pts), dtype=np.int64)
            for _ in range(t.xshift):
                xp = xp * pts % p
            acc = (acc + t.coef * xp % p * vals) % p
        return acc

    def monomial_values(self, points, bound: int) -> np.ndarray:
        """(len(points), bound) array of image-of-X^e values at each point."""
        F = self.field
        p = F.p
        pts = np.asarray(points, dtype=np.int64) % p
        npts = len(pts)
        if self.table is not None:
            if bound > self.table.shape[1]:
                raise ValidationError("bound exceeds the operator table")
            vand = np.empty((npts, self.table.shape[0]), dtype=np.int64)
            cur = np.ones(npts, dtype=np.int64)
            for w in range(self.table.shape[0]):
                vand[:, w] = cur
                cur = cur * pts % p
            return mod_matmul(vand, self.table[:, :bound], p)
        out = np.zeros((npts, bound), dtype=np.int64)
        es = np.arange(bound, dtype=np.int64)
        for t in self.terms:
            d = t.dorder
            if d >= bound:
                continue
            z = (t.a * pts + t.b) % p
            zp = np.zeros((npts, bound), dtype=np.int64)
            cur = np.ones(npts, dtype=np.int64)
            zp[:, d] = cur
            for e in range(d + 1, bound):
                cur = cur * z % p
                zp[:, e] = cur
            ff = _ffact_vec(p, d, es)
            xp = np.ones(npts, dtype=np.int64)
            for _ in range(t.xshift):
                xp = xp * pts % p
            out = (out + (t.coef * xp % p)[:, None] * ff[None, :] % p * zp) % p
        return out

    def diag(self, bound: int) -> np.ndarray:
        """Coefficient of X^e in the image of X^e, for e < bound."""
        p = self.field.p
        if self.table is not None:
            if bound > self.table.shape[1]:
                raise ValidationError("bound exceeds the operator table")
            n = min(bound, self.table.shape[0])
            out = np.zeros(bound, dtype=np.int64)
            out[:n] = np.diagonal(self.table[:n, :n])
            return out
        es = np.arange(bound, dtype=np.int64)
        out = np.zeros(bound, dtype=np.int64)
        for t in self.terms:
            kk = t.xshift - t.dorder
            if kk < 0 or (kk > 0 and t.b == 0):
                continue  # image of X^e has no X^e coefficient
            bk = pow(t.b, kk, p) if kk else 1
            ff = _ffact_vec(p, t.dorder, es)
            tab = pascal_table(p, bound + 1)
            bcol = tab[np.clip(es - t.dorder, 0, None), kk]
            apw = np.zeros(bound, dtype=np.int64)
            if t.xshift < bound:
                apw[t.xshift :] = _pow_seq(p, t.a, bound - t.xshift)
            out = (out + t.coef * bk % p * ff % p * bcol % p * apw) % p
        return out

    def is_degree_preserving(self, bound: int) -> tuple[bool, int | None]:
        """Whether deg(image of X^e) <= e for all e < bound; returns first bad e."""
        if self.terms is not None and all(t.xshift <= t.dorder for t in self.terms):
            return True, None
        rows = self.image_rows(bound - 1)
        blk = self.matrix_block(0, bound, rows)
        # degree grows at e when the image of X^e has a coefficient below the diagonal
        bad = np.nonzero(np.any(np.tril(blk, -1) != 0, axis=0))[0]
        if len(bad) == 0:
            return True, None
        return False, int(bad[0])


@dataclass
class OperatorFamily:
    """An ordered tuple of operators sharing a field and a table bound."""

    field: PrimeField
    ops: tuple[Operator, ...]
    bound: int
    degree_preserving: bool = False

    @property
    def size(self) -> int:
        return len(self.ops)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(op.name for op in self.ops)

    def image_rows(self, upto: int) -> int:
        return max(op.image_rows(upto) for op in self.ops)

    def apply(self, f: Poly) -> list[Poly]:
        return [op.apply(f) for op in self.ops]

    def apply_at(self, f: Poly, points) -> np.ndarray:
        """(len(points), size) value matrix of all images at all points."""
        cols = [op.apply_at(f, points) for op in self.ops]
        return np.stack(cols, axis=1)

    def stack_block(self, lo: int, hi: int, rows: int) -> np.ndarray:
        """(size, rows, hi-lo) stack of per-operator coefficient slabs."""
        return np.stack([op.matrix_block(lo, hi, rows) for op in self.ops])

    def monomial_values_tensor(self, points, bound: int) -> np.ndarray:
        """(size, len(points), bound) tensor of op(X^e)(point) values."""
        return np.stack([op.monomial_values(points, bound) for op in self.ops])


class ExtensionMatrix:
    """The matrix M(X) certifying L(X*f) = M(X)*L(f) for a family."""

    def __init__(self, matrix: PolyMatrix):
        self.matrix = matrix
        self._coeffs: list[np.ndarray] | None = None

    @property
    def size(self) -> int:
        return self.matrix.n

    @property
    def field(self) -> PrimeField:
        return self.matrix.field

    def coeff_matrices(self) -> list[np.ndarray]:
        """M as a list of numeric matrices A_d with M(X) = sum_d X^d * A_d."""
        if self._coeffs is None:
            p = self.field.p
            n = self.size
            deg = max(self.matrix.max_degree(), 0)
            mats = [np.zeros((n, n), dtype=np.int64) for _ in range(deg + 1)]
            for i, row in enumerate(self.matrix.entries):
                for j, ent in enumerate(row):
                    for d, c in enumerate(ent):
                        mats[d][i, j] = c % p
            self._coeffs = mats
        return self._coeffs

    def eval_at_points(self, points) -> np.ndarray:
        """(len(points), size, size) numeric matrices M(a)."""
        p = self.field.p
        pts = np.asarray(points, dtype=np.int64) % p
        out = np.zeros((len(pts), self.size, self.size), dtype=np.int64)
        pw = np.ones(len(pts), dtype=np.int64)
        for A in self.coeff_matrices():
            out = (out + pw[:, None, None] * A[None, :, :]) % p
            pw = pw * pts % p
        return out

    def apply_columns(self, V: np.ndarray) -> np.ndarray:
        """M applied to a vector of polynomials given as a coefficient slab.

        V has shape (size, w) with column c the X^c coefficients; the result
        gains max_degree extra columns.
        """
        p = self.field.p
        mats = self.coeff_matrices()
        w = V.shape[1]
        out = np.zeros((self.size, w + len(mats) - 1), dtype=np.int64)
        for d, A in enumerate(mats):
            out[:, d : d + w] = (out[:, d : d + w] + mod_matmul(A, V, p)) % p
        return out


@dataclass
class ExtendReport:
    """Outcome of an extendibility check; falsy with the first counterexample."""

    ok: bool
    exponent: int | None = None
    op_index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def build_operator_family(spec: FamilySpec, bound: int) -> tuple[OperatorFamily, ExtensionMatrix]:
    """The s operators and extension matrix attached to a family spec.

    An affine map of multiplicative order u gets the mixed tower
    L_j = (compose with the j mod u iterate) of (d/dX)^(j div u); its two
    degenerate cases reuse the translation tower (alpha = 1, beta != 0) and
    the derivative tower (alpha = 1, beta = 0) outright.
    """
    F = PrimeField(spec.p)
    check_family_params(F, spec)
    p, s = spec.p, spec.s
    x = [0, 1]
    ops: list[Operator] = []
    entries: list[list[Poly]] = [[[] for _ in range(s)] for _ in range(s)]

    def translations(step: int):
        for i in range(s):
            c = i * step % p
            ops.append(Operator(F, terms=(ActionTerm(1, 0, 0, 1, c),), name=f"f(X+{c})"))
            entries[i][i] = trim([c, 1])

    def derivatives():
        for i in range(s):
            ops.append(Operator(F, terms=(ActionTerm(1, i, 0, 1, 0),), name=f"f^({i})"))
            entries[i][i] = x
            if i:
                entries[i][i - 1] = [i % p]

    if spec.family == "rs":
        ops.append(Operator(F, terms=(ActionTerm(1, 0, 0, 1, 0),), name="f"))
        entries[0][0] = x
    elif spec.family == "frs":
        g = spec.gamma % p
        for i in range(s):
            gi = pow(g, i, p)
            ops.append(Operator(F, terms=(ActionTerm(1, 0, 0, gi, 0),), name=f"f({gi}X)"))
            entries[i][i] = [0, gi]
    elif spec.family == "additive_frs":
        translations(spec.beta % p)
    elif spec.family == "mult":
        derivatives()
    else:  # affine_frs
        alpha, beta = spec.alpha % p, spec.beta % p
        if alpha == 1 and beta != 0:
            translations(beta)
        elif alpha == 1:
            derivatives()
        else:
            ell = LinearForm(F, alpha, beta)
            u = F.element_order(alpha)
            for j in range(s):
                j1, j0 = divmod(j, u)
                aj, bj = ell.iterate_coeffs(j0)
                ops.append(
                    Operator(F, terms=(ActionTerm(1, j1, 0, aj, bj),), name=f"f^({j1})(l^{j0})")
                )
                entries[j][j] = trim([bj, aj])
                if j1:
                    entries[j][j - u] = [j1 % p]
    fam = OperatorFamily(F, tuple(ops), bound=bound, degree_preserving=True)
    return fam, ExtensionMatrix(PolyMatrix(F, entries))


def verify_linear_extendibility(
    fam: OperatorFamily, M: ExtensionMatrix, bound: int | None = None
) -> ExtendReport:
    """Exact check of L(X^(e+1)) = M(X) * L(X^e) for all e < bound - 1.

    Works on coefficient slabs a block of exponents at a time, so the whole
    thing is a handful of modular matrix products per block.
    """
    K = fam.bound if bound is None else bound
    if M.size != fam.size:
        raise ValidationError(f"matrix is {M.size}x{M.size} for a family of size {fam.size}")
    p = fam.field.p
    coeffs = M.coeff_matrices()
    degm = len(coeffs) - 1
    size = fam.size
    blk = 128
    for lo in range(0, K - 1, blk):
        hi = min(lo + blk, K - 1)  # exponents e in [lo, hi) checked
        rows_in = fam.image_rows(hi)
        T = fam.stack_block(lo, hi + 1, rows_in)  # (size, rows_in, hi-lo+1)
        width = hi - lo
        V = np.ascontiguousarray(T[:, :, :-1]).reshape(size, rows_in * width)
        out = np.zeros((size, rows_in + degm, width), dtype=np.int64)
        for d, A in enumerate(coeffs):
            prod = mod_matmul(A, V, p).reshape(size, rows_in, width)
            out[:, d : d + rows_in, :] = (out[:, d : d + rows_in, :] + prod) % p
        target = T[:, :, 1:]
        bad = np.any(out[:, :rows_in, :] != target, axis=1)
        if degm:
            bad |= np.any(out[:, rows_in:, :] != 0, axis=1)
        if np.any(bad):
            ops_idx, cols = np.nonzero(bad)
            e = int(cols.min())
            op_at = int(ops_idx[cols == e].min())
            return ExtendReport(False, exponent=lo + e, op_index=op_at)
    return ExtendReport(True)


def pic_to_lelo(E, s: int, k: int) -> tuple[OperatorFamily, ExtensionMatrix]:
    """Operators equivalent to reduction mod a bivariate modulus family.

    E(X, Y) must be monic in X of X-degree exactly s; Y stands for the
    evaluation point. Writing E = X^s - sum_i H_i(Y) X^i, operator i maps
    X^e to the i-th X-coefficient of X^e mod E, a polynomial in Y that we
    rename back to X. The companion-style matrix (subdiagonal ones, last
    column H_i) extends the family, and the construction is checked before
    returning.
    """
    F = E.field
    p = F.p
    if p >= _TABLE_PRIME_LIMIT:
        raise ValidationError(f"operator arithmetic needs p < 2^31, got p={p}")
    grid = E.c
    if E.degx != s:
        raise ValidationError(f"modulus has X-degree {E.degx}, expected {s}")
    if trim([int(c) for c in grid[s]]) != [1]:
        raise ValidationError("modulus must be monic in X")
    H = [trim([(-int(c)) % p for c in grid[i]]) if i < grid.shape[0] else [0] for i in range(s)]

    cols: list[list[Poly]] = [[] for _ in range(s)]
    state: list[Poly] = [[1] if i == 0 else [0] for i in range(s)]
    for _ in range(k):
        for i in range(s):
            cols[i].append(state[i])
        top = state[s - 1]
        nxt = [poly_mul(F, top, H[i]) for i in range(s)]
        for i in range(1, s):
            nxt[i] = poly_add(F, nxt[i], state[i - 1])
        state = nxt

    ops = []
    for i in range(s):
        rows = max(len(c) for c in cols[i])
        tab = np.zeros((rows, k), dtype=np.int64)
        for e, c in enumerate(cols[i]):
            tab[: len(c), e] = c
        ops.append(Operator(F, table=tab, name=f"xcoef{i}"))

    entries: list[list[Poly]] = [[[] for _ in range(s)] for _ in range(s)]
    for i in range(s):
        if i >= 1:
            entries[i][i - 1] = [1]
        entries[i][s - 1] = poly_add(F, entries[i][s - 1] or [0], H[i])
    fam = OperatorFamily(F, tuple(ops), bound=k, degree_preserving=False)
    em = ExtensionMatrix(PolyMatrix(F, entries))
    rep = verify_linear_extendibility(fam, em, k)
    if not rep:
        raise GuaranteeViolation(
            f"reduction operators fail the extension identity at exponent {rep.exponent}"
        )
    return fam, em


def ideal_generator(fam: OperatorFamily, a: int) -> Poly:
    """Monic generator of {f : every operator kills f at a}, degree <= family size.

    Minimal-degree monic kernel element of the (size x size+1) value matrix
    [op_i(X^e)(a)]; minimality makes it the generator whenever the kernel is
    an ideal, which linear extendibility guarantees.
    """
    size = fam.size
    p = fam.field.p
    pts = np.asarray([a], dtype=np.int64)
    vals = np.stack([op.monomial_values(pts, size + 1)[0] for op in fam.ops])
    kb = kernel_basis(vals, p)
    if kb.shape[0] == 0:
        raise GuaranteeViolation(
            f"no annihilating polynomial of degree <= {size} at point {a}"
        )
    gen = trim([int(c) for c in kb[0]])
    if gen[-1] != 1:  # kernel vectors are 1 at their free column, so this is already monic
        gen = poly_scale(fam.field, gen, fam.field.inv(gen[-1]))
    return gen


def operator_encode(fam: OperatorFamily, points, f: Poly) -> np.ndarray:
    """(n, size) matrix of symbol vectors (op_0(f)(a), ..., op_last(f)(a))."""
    if degree(f) >= fam.bound:
        raise ValidationError(
            f"message degree {degree(f)} is outside the family bound {fam.bound}"
        )
    return fam.apply_at(f, points)


def diag_matrix(fam: OperatorFamily, k: int) -> np.ndarray:
    """(size, k) matrix whose (i, e) entry is [X^e] op_i(X^e).

    Only meaningful for degree-preserving families, where it is the leading
    behaviour of the family on each degree.
    """
    if not fam.degree_preserving:
        raise ValidationError("Diag is only defined for degree-preserving families")
    return np.stack([op.diag(k) for op in fam.ops])


def verify_diag_mds(D: np.ndarray, p: int, trials: int = 200, seed: int = 0xD1A6) -> bool:
    """Spot-check that every m columns of D are independent.

    Exhaustive minor checking is exponential, so this checks `trials` random
    m-column subsets plus every disjoint block of m consecutive columns (the
    last one possibly narrower). Deterministic for a fixed seed.
    """
    D = np.asarray(D, dtype=np.int64)
    m, k = D.shape
    if m > k:
        raise ValidationError(f"need at least as many columns as rows, got {m}x{k}")
    for start in range(0, k, m):
        colset = D[:, start : min(start + m, k)]
        if rank_mod(colset, p) != colset.shape[1]:
            return False
    rng = SplitMix64(seed)
    for _ in range(trials):
        cols = rng.sample(k, m)
        if rank_mod(D[:, cols], p) != m:
            return False
    return True
