"""Code families built from pairwise coprime polynomial moduli.

A message is a polynomial f of degree < k over F_p; its codeword is the
vector of residues (f mod E_0, ..., f mod E_{n-1}) where each E_i is a
monic degree-s polynomial attached to an evaluation point a_i. Every
family here chooses its E_i so that the residue carries the structure its
decoder needs:

- rs            E_i = X - a_i                       (s = 1, plain evaluation)
- frs           E_i = prod_j (X - gamma^j a_i)       j < s
- additive_frs  E_i = prod_j (X - a_i - j*beta)      j < s
- mult          E_i = (X - a_i)^s
- affine_frs    E_i = prod_{j<r0} (X - l_j(a_i))^(v+1) * prod_{r0<=j<t} (X - l_j(a_i))^v
                where l_j is the j-th iterate of l(X) = alpha*X + beta,
                t is the order of l, and s = v*t + r0.

Rate is k / (s*n); any two codewords agree on fewer than k/s of the n
symbols, so the codes are MDS over the symbol alphabet.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .algebra import (
    LinearForm,
    Poly,
    PrimeField,
    ValidationError,
    mod_matmul,
    poly_from_roots,
    poly_mod,
    poly_mul,
    storage_dtype,
    trim,
)

FAMILIES = ("rs", "frs", "additive_frs", "mult", "affine_frs")

_BRUTE_FORCE_MESSAGES = 1 << 24
_BRUTE_FORCE_BYTES = 1 << 28


@dataclass(frozen=True)
class FamilySpec:
    """Wire-level description of a code instance."""

    family: str
    p: int
    n: int
    s: int
    k: int
    gamma: int | None = None
    beta: int | None = None
    alpha: int | None = None
    points: tuple[int, ...] | None = None

    def to_obj(self) -> dict:
        obj = {"family": self.family, "p": self.p, "n": self.n, "s": self.s, "k": self.k}
        if self.gamma is not None:
            obj["gamma"] = self.gamma
        if self.beta is not None:
            obj["beta"] = self.beta
        if self.alpha is not None:
            obj["alpha"] = self.alpha
        if self.points is not None:
            obj["points"] = list(self.points)
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "FamilySpec":
        if not isinstance(obj, dict):
            raise ValidationError("family spec must be an object")
        missing = [key for key in ("family", "p", "n", "s", "k") if key not in obj]
        if missing:
            raise ValidationError(f"family spec missing keys: {', '.join(missing)}")
        points = obj.get("points")
        return cls(
            family=obj["family"],
            p=int(obj["p"]),
            n=int(obj["n"]),
            s=int(obj["s"]),
            k=int(obj["k"]),
            gamma=None if obj.get("gamma") is None else int(obj["gamma"]),
            beta=None if obj.get("beta") is None else int(obj["beta"]),
            alpha=None if obj.get("alpha") is None else int(obj["alpha"]),
            points=None if points is None else tuple(int(a) for a in points),
        )


def affine_orbit_length(F: PrimeField, alpha: int, beta: int) -> int:
    """Order of X -> alpha*X + beta under composition."""
    return LinearForm(F, alpha, beta).order()


def _orbit_roots(F: PrimeField, spec: FamilySpec, a: int) -> list[tuple[int, int]]:
    """(root, multiplicity) pairs of the modulus attached to point a."""
    fam, s = spec.family, spec.s
    if fam == "rs":
        return [(a % F.p, 1)]
    if fam == "mult":
        return [(a % F.p, s)]
    if fam == "frs":
        g = spec.gamma
        return [(a * pow(g, j, F.p) % F.p, 1) for j in range(s)]
    if fam == "additive_frs":
        b = spec.beta
        return [((a + j * b) % F.p, 1) for j in range(s)]
    if fam == "affine_frs":
        ell = LinearForm(F, spec.alpha, spec.beta)
        t = ell.order()
        v, r0 = divmod(s, t) if t <= s else (0, s)
        out = []
        x = a % F.p
        for j in range(min(t, s) if v == 0 else t):
            mult = (v + 1) if j < r0 else v
            if mult > 0:
                out.append((x, mult))
            x = ell.apply(x)
        return out
    raise ValidationError(f"unknown family {fam!r}")


def _expected_distinct_roots(F: PrimeField, spec: FamilySpec) -> int:
    fam, s = spec.family, spec.s
    if fam in ("rs", "mult"):
        return 1
    if fam in ("frs", "additive_frs"):
        return s
    ell = LinearForm(F, spec.alpha, spec.beta)
    return min(ell.order(), s)


def pick_evaluation_points(spec: FamilySpec) -> tuple[int, ...]:
    """Greedy smallest-first choice of n points with pairwise coprime moduli.

    A point is admissible only when its modulus has the full number of
    distinct roots for the family (degenerate orbits are skipped) and none
    of those roots already belongs to an earlier point's modulus.
    """
    F = PrimeField(spec.p)
    want = _expected_distinct_roots(F, spec)
    used: set[int] = set()
    pts: list[int] = []
    for a in range(spec.p):
        roots = {r for r, _ in _orbit_roots(F, spec, a)}
        if len(roots) != want or roots & used:
            continue
        pts.append(a)
        used |= roots
        if len(pts) == spec.n:
            return tuple(pts)
    raise ValidationError(
        f"field of size {spec.p} does not admit {spec.n} pairwise coprime moduli "
        f"for family {spec.family!r} with s={spec.s}"
    )


class PolyIdealCode:
    """A concrete instance: field, points, moduli, and the encode map."""

    def __init__(self, spec: FamilySpec, field: PrimeField, points: tuple[int, ...],
                 moduli: list[Poly]):
        self.spec = spec
        self.field = field
        self.points = points
        self.moduli = moduli
        self.p = field.p
        self.n = spec.n
        self.s = spec.s
        self.k = spec.k
        self._rmat: np.ndarray | None = None
        self._codebook: np.ndarray | None = None
        self._packed_book: np.ndarray | None = None

    @property
    def rate(self) -> float:
        return self.k / (self.s * self.n)

    @property
    def residue_tensor(self) -> np.ndarray:
        """R with shape (n, s, k): R[i, :, e] = coefficients of X^e mod E_i.

        Built once by the multiply-by-X recurrence; encoding is then a
        batched matrix product R @ message.
        """
        if self._rmat is None:
            n, s, k, p = self.n, self.s, self.k, self.p
            elow = np.array([[m[j] for j in range(s)] for m in self.moduli], dtype=np.int64)
            R = np.zeros((n, s, k), dtype=np.int64)
            col = np.zeros((n, s), dtype=np.int64)
            col[:, 0] = 1
            R[:, :, 0] = col
            for e in range(1, k):
                top = col[:, s - 1 : s]
                nxt = np.zeros_like(col)
                nxt[:, 1:] = col[:, :-1]
                col = (nxt - top * elow) % p
                R[:, :, e] = col
            self._rmat = R.astype(storage_dtype(p))
        return self._rmat

    def encode(self, message) -> np.ndarray:
        """Message coefficients (length k, ascending degree) -> (n, s) symbols."""
        msg = np.asarray(list(message), dtype=np.int64) % self.p
        if msg.shape != (self.k,):
            raise ValidationError(f"message must have exactly {self.k} coefficients")
        out = mod_matmul(self.residue_tensor, msg.reshape(self.k, 1), self.p)
        return out.reshape(self.n, self.s)

    def encode_poly(self, f: Poly) -> np.ndarray:
        """Encode an arbitrary-degree polynomial by direct residue reduction."""
        out = np.zeros((self.n, self.s), dtype=np.int64)
        for i, E in enumerate(self.moduli):
            r = poly_mod(self.field, trim(list(f)), E)
            for j, c in enumerate(r):
                out[i, j] = c
        return out

    def message_codeword(self, message) -> tuple[np.ndarray, np.ndarray]:
        msg = np.asarray(list(message), dtype=np.int64) % self.p
        return msg, self.encode(msg)

    def codebook(self) -> np.ndarray:
        """All p^k codewords, flattened to shape (p^k, n*s); message index
        idx encodes coefficients c_e = (idx // p^e) % p."""
        if self._codebook is not None:
            return self._codebook
        p, k, n, s = self.p, self.k, self.n, self.s
        total = p**k
        if total > _BRUTE_FORCE_MESSAGES or total * n * s * 2 > _BRUTE_FORCE_BYTES:
            raise ValidationError(
                f"codebook of {total} messages exceeds the exhaustive-search budget"
            )
        idx = np.arange(total, dtype=np.int64)
        msgs = np.empty((total, k), dtype=np.int64)
        for e in range(k):
            msgs[:, e] = idx % p
            idx //= p
        flat = self.residue_tensor.reshape(n * s, k).astype(np.int64)
        cw = mod_matmul(msgs, flat.T, p)
        self._codebook = cw.astype(storage_dtype(p))
        return self._codebook

    def message_from_index(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(idx % self.p)
            idx //= self.p
        return out


def check_family_params(F: PrimeField, spec: FamilySpec) -> None:
    """Family-specific parameter constraints, shared with the operator builders."""
    if spec.family not in FAMILIES:
        raise ValidationError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
    if spec.n < 1 or spec.s < 1 or spec.k < 1:
        raise ValidationError("n, s, k must be positive")
    if spec.k >= spec.s * spec.n:
        raise ValidationError(f"need k < s*n, got k={spec.k}, s*n={spec.s * spec.n}")
    if spec.family == "rs":
        if spec.s != 1:
            raise ValidationError("rs requires s = 1")
    elif spec.family == "mult":
        if spec.p < spec.s * spec.n:
            raise ValidationError(
                f"mult requires characteristic >= s*n, got p={spec.p}, s*n={spec.s * spec.n}"
            )
    elif spec.family == "frs":
        if spec.gamma is None or not 1 <= spec.gamma % spec.p < spec.p:
            raise ValidationError("frs requires a nonzero gamma")
        if F.element_order(spec.gamma) < spec.s:
            raise ValidationError(
                f"gamma has multiplicative order {F.element_order(spec.gamma)} < s={spec.s}"
            )
    elif spec.family == "additive_frs":
        if spec.beta is None or spec.beta % spec.p == 0:
            raise ValidationError("additive_frs requires a nonzero beta")
        if spec.s > spec.p:
            raise ValidationError("additive_frs requires s <= p")
    elif spec.family == "affine_frs":
        if spec.alpha is None or spec.beta is None:
            raise ValidationError("affine_frs requires alpha and beta")
        if spec.alpha % spec.p == 0:
            raise ValidationError("affine_frs requires a nonzero alpha")


def build_code(spec: FamilySpec) -> PolyIdealCode:
    """Validate a family spec and construct the instance.

    Raises ValidationError with the offending pair when two moduli share a
    root, and when any family parameter is out of range.
    """
    F = PrimeField(spec.p)
    check_family_params(F, spec)
    points = spec.points
    if points is None:
        points = pick_evaluation_points(spec)
        spec = dataclasses.replace(spec, points=points)
    if len(points) != spec.n:
        raise ValidationError(f"expected {spec.n} points, got {len(points)}")
    want = _expected_distinct_roots(F, spec)
    seen: dict[int, int] = {}
    moduli: list[Poly] = []
    for i, a in enumerate(points):
        pairs = _orbit_roots(F, spec, a)
        roots = {r for r, _ in pairs}
        if len(roots) != want:
            raise ValidationError(
                f"point {a} (index {i}) has a degenerate orbit: "
                f"{len(roots)} distinct roots, expected {want}"
            )
        for r in roots:
            if r in seen:
                raise ValidationError(
                    f"moduli at indices {seen[r]} and {i} share the root {r}; "
                    "evaluation points must have disjoint orbits"
                )
            seen[r] = i
        E: Poly = [1]
        for r, m in pairs:
            E = poly_mul(F, E, poly_from_roots(F, [r], m))
        moduli.append(E)
        if len(E) != spec.s + 1:
            raise ValidationError(f"modulus at point {a} has degree {len(E) - 1}, expected {spec.s}")
    return PolyIdealCode(spec, F, tuple(points), moduli)


def hamming_agreement(cw1: np.ndarray, cw2: np.ndarray) -> int:
    """Number of symbol positions (rows) where the two words coincide."""
    a = np.asarray(cw1)
    b = np.asarray(cw2)
    if a.shape != b.shape:
        raise ValidationError("codeword shape mismatch")
    return int(np.sum(np.all(a == b, axis=1)))


def check_received(code: PolyIdealCode, received) -> np.ndarray:
    """Validate a received word's shape and reduce it mod p."""
    arr = np.asarray(received, dtype=np.int64)
    if arr.shape != (code.n, code.s):
        raise ValidationError(
            f"received word must be {code.n} rows of {code.s} symbols, got shape {arr.shape}"
        )
    return arr % code.p


def brute_force_list(code: PolyIdealCode, received: np.ndarray,
                     min_agreement: int) -> list[tuple[tuple[int, ...], int]]:
    """Exhaustive list decoding oracle.

    Returns every message whose codeword agrees with `received` on at least
    min_agreement symbols, as (coefficients, agreement) sorted by agreement
    descending then coefficients ascending. Only valid when p^k fits the
    enumeration budget.
    """
    n, s, p = code.n, code.s, code.p
    rec = np.asarray(received, dtype=np.int64).reshape(n, s) % p
    if p**s < (1 << 62):
        # pack each s-coefficient symbol into one integer; one compare per symbol
        if code._packed_book is None:
            w = p ** np.arange(s, dtype=np.int64)
            packed = (code.codebook().reshape(-1, n, s).astype(np.int64) * w).sum(axis=2)
            code._packed_book = packed.astype(storage_dtype(p**s))
        rp = (rec * p ** np.arange(s, dtype=np.int64)).sum(axis=1)
        agree = np.sum(code._packed_book == rp.astype(code._packed_book.dtype)[None, :], axis=1)
    else:
        book = code.codebook()
        eq = book.reshape(-1, n, s) == rec.astype(book.dtype)[None, :, :]
        agree = np.sum(np.all(eq, axis=2), axis=1)
    hits = np.nonzero(agree >= min_agreement)[0]
    out = [(tuple(code.message_from_index(int(i))), int(agree[i])) for i in hits]
    out.sort(key=lambda pair: (-pair[1], pair[0]))
    return out
