import numpy as np
import pytest

from picodes import PrimeField, ValidationError
from picodes.algebra.bivar import (
    BivarPoly,
    lagrange_bivariate,
    weighted_monomial_count,
    weighted_monomials,
)
from picodes.algebra.poly import poly_eval, poly_from_roots, poly_mul, trim
from picodes.rng import SplitMix64

F7 = PrimeField(7)
F29 = PrimeField(29)


def test_monomial_count_small_case():
    # x + y <= 2 admits 1, X, Y, X^2, XY, Y^2
    assert weighted_monomial_count(1, 2) == 6


def test_monomial_count_matches_listing():
    for a in (1, 2, 3, 5):
        for b in (0, 1, 4, 9, 17):
            mons = weighted_monomials(a, b)
            assert len(mons) == weighted_monomial_count(a, b)
            assert len(set(mons)) == len(mons)
            assert all(x + a * y <= b for x, y in mons)


def test_monomial_count_telescoping_identity():
    # N(a,b) - N(a, b-a*eta) - eta*(b - a*eta + 1) = a*eta*(eta+1)/2 when a | b
    rng = SplitMix64(23)
    for _ in range(40):
        a = rng.next_below(6) + 1
        q = rng.next_below(8) + 1
        b = a * q
        eta = rng.next_below(q + 1)
        lhs = (
            weighted_monomial_count(a, b)
            - weighted_monomial_count(a, b - a * eta)
            - eta * (b - a * eta + 1)
        )
        assert lhs == a * eta * (eta + 1) // 2


def test_bivar_constructors_agree():
    Q = BivarPoly.from_dict(F7, {(2, 0): 1, (1, 1): 4, (0, 3): 6})
    assert Q.degx == 2 and Q.degy == 3
    assert BivarPoly.from_x_poly(F7, [3, 0, 1]).degy == 0
    assert BivarPoly.from_y_poly(F7, [3, 0, 1]).degx == 0
    assert BivarPoly.zero(F7).is_zero()


def test_bivar_ring_ops_match_pointwise():
    rng = SplitMix64(3)
    for _ in range(10):
        A = BivarPoly.from_dict(
            F29, {(rng.next_below(3), rng.next_below(3)): rng.next_below(29) for _ in range(4)}
        )
        B = BivarPoly.from_dict(
            F29, {(rng.next_below(3), rng.next_below(3)): rng.next_below(29) for _ in range(4)}
        )
        for x in range(0, 29, 7):
            for y in range(0, 29, 5):
                assert A.add(B).eval(x, y) == (A.eval(x, y) + B.eval(x, y)) % 29
                assert A.sub(B).eval(x, y) == (A.eval(x, y) - B.eval(x, y)) % 29
                assert A.mul(B).eval(x, y) == A.eval(x, y) * B.eval(x, y) % 29
                assert A.pow(3).eval(x, y) == pow(A.eval(x, y), 3, 29)
                assert A.scale(11).eval(x, y) == 11 * A.eval(x, y) % 29


def test_weighted_degree():
    Q = BivarPoly.from_dict(F29, {(3, 0): 1, (0, 2): 5})
    assert Q.weighted_degree(1, 1) == 3
    assert Q.weighted_degree(1, 3) == 6
    assert BivarPoly.zero(F29).weighted_degree(1, 1) == -1


def test_at_y_and_compose_y():
    # Q(X, Y) = Y^2 - X at Y = f keeps only the X-variable
    Q = BivarPoly.from_dict(F29, {(0, 2): 1, (1, 0): 28})
    assert trim(Q.at_y(4)) == trim([16, 28])
    f = [0, 1]  # f(X) = X
    comp = Q.compose_y(f)
    for x in range(29):
        assert poly_eval(F29, comp, x) == (x * x - x) % 29
    # composing with an actual y-root gives the zero polynomial
    root = Q.compose_y([0, 0, 1])  # not a root: X^4 - X
    assert root != []


def test_lagrange_bivariate_matches_moduli():
    points = [1, 3]
    moduli = [
        poly_mul(F29, [28, 1], [27, 1]),  # (X-1)(X-2), orbit of 1 under gamma=2
        poly_mul(F29, [26, 1], [23, 1]),  # (X-3)(X-6)
    ]
    E = lagrange_bivariate(F29, moduli, points)
    for a, Ei in zip(points, moduli):
        assert trim(E.at_y(a)) == trim(Ei)


def test_lagrange_bivariate_single_point_is_constant_in_y():
    E = lagrange_bivariate(F29, [poly_from_roots(F29, [5], 2)], [5])
    assert E.degy == 0


def test_lagrange_bivariate_identical_moduli_constant_in_y():
    mod = poly_from_roots(F29, [0], 2)
    E = lagrange_bivariate(F29, [mod, mod, mod], [1, 2, 3])
    assert E.degy == 0


def test_lagrange_bivariate_rejects_repeated_points():
    with pytest.raises(ValidationError):
        lagrange_bivariate(F29, [[1], [1]], [4, 4])
