"""Prime-field arithmetic context.

Elements are plain Python ints reduced to [0, p). All operations are exact;
intermediates use Python's arbitrary precision, so any prime 2 < p < 2**61
is safe even where products need 128 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class ValidationError(ValueError):
    """A structural precondition failed (bad parameters, bad object)."""


class UnsupportedRegimeError(ValidationError):
    """Parameters fall outside every supported construction regime."""


class GuaranteeViolation(RuntimeError):
    """A proven property of the construction failed at runtime."""


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set is exact below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Fine for the field sizes used
    here (group orders up to ~2**40 factor quickly; worst cases are a
    documented practical limit, not a correctness one)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


MAX_PRIME = 1 << 61


class PrimeField:
    """Arithmetic mod a prime p, 2 < p < 2**61."""

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise ValidationError(f"modulus must be an int, got {type(p).__name__}")
        if p <= 2 or p >= MAX_PRIME:
            raise ValidationError(f"modulus {p} out of range (need 2 < p < 2**61)")
        if not is_prime(p):
            raise ValidationError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    # --- scalar ops ---

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a % self.p, e, self.p)

    # --- multiplicative structure ---

    def element_order(self, a: int) -> int:
        """Order of a in the multiplicative group."""
        a %= self.p
        if a == 0:
            raise ValidationError("0 has no multiplicative order")
        order = self.p - 1
        for q in factorize(self.p - 1):
            while order % q == 0 and pow(a, order // q, self.p) == 1:
                order //= q
        return order

    def primitive_root(self) -> int:
        return _primitive_root(self.p)

    def element_of_order(self, d: int) -> int:
        """Deterministic element of multiplicative order d (d | p-1)."""
        if d <= 0 or (self.p - 1) % d != 0:
            raise ValidationError(f"no element of order {d} in F_{self.p}^*")
        g = self.primitive_root()
        return pow(g, (self.p - 1) // d, self.p)


def field_ops(p: int) -> PrimeField:
    """Construct the arithmetic context for F_p (alias for PrimeField)."""
    return PrimeField(p)


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise GuaranteeViolation(f"no primitive root found mod {p}")  # unreachable for prime p


@dataclass(frozen=True)
class LinearForm:
    """An affine map l(X) = a*X + b over a prime field, a != 0.

    Iterates compose: l^(i)(X) = a^i * X + b * (1 + a + ... + a^(i-1)).
    """

    field: PrimeField
    a: int
    b: int

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "a", self.a % p)
        object.__setattr__(self, "b", self.b % p)
        if self.a == 0:
            raise ValidationError("linear form needs a != 0")

    def apply(self, x: int) -> int:
        return (self.a * x + self.b) % self.field.p

    def iterate_coeffs(self, i: int) -> tuple[int, int]:
        """(a_i, b_i) of the i-fold composite, by the closed form."""
        if i < 0:
            raise ValidationError("iterate count must be >= 0")
        p = self.field.p
        ai = pow(self.a, i, p)
        if self.a == 1:
            bi = self.b * i % p
        else:
            # geometric sum (a^i - 1) / (a - 1)
            bi = self.b * (ai - 1) % p * pow(self.a - 1, -1, p) % p
        return ai, bi

    def iterate(self, i: int) -> "LinearForm":
        ai, bi = self.iterate_coeffs(i)
        if ai == 0:  # cannot happen: a != 0
            raise GuaranteeViolation("iterate lost invertibility")
        return LinearForm(self.field, ai, bi)

    def compose(self, other: "LinearForm") -> "LinearForm":
        """self after other: x -> self(other(x))."""
        p = self.field.p
        return LinearForm(self.field, self.a * other.a % p, (self.a * other.b + self.b) % p)

    def order(self) -> int:
        """Smallest t >= 1 with l^(t) = identity.

        Closed form: identity iff a^t = 1 and the geometric sum vanishes;
        for a != 1 the sum is b*(a^t - 1)/(a - 1) which vanishes exactly when
        a^t = 1, so t = ord(a). For a = 1: t = 1 if b = 0 else char(F).
        """
        if self.a == 1:
            return 1 if self.b == 0 else self.field.p
        t = self.field.element_order(self.a)
        # direct-iteration cross-check at small t
        if t <= 4096:
            x = self.apply(1)
            for _ in range(t - 1):
                x = self.apply(x)
            if x != 1:
                raise GuaranteeViolation("order closed form disagrees with iteration")
        return t

    def fixed_point(self) -> int | None:
        """Solution of l(x) = x, or None when a = 1, b != 0."""
        if self.a == 1:
            return None if self.b != 0 else 0
        p = self.field.p
        return -self.b * pow(self.a - 1, -1, p) % p
