import numpy as np
import pytest

from picodes import (
    FamilySpec,
    PrimeField,
    ValidationError,
    affine_orbit_length,
    brute_force_list,
    build_code,
    check_received,
    hamming_agreement,
    pick_evaluation_points,
)
from picodes.algebra.poly import degree, poly_eval, poly_mod, trim
from picodes.rng import SplitMix64

from helpers import additive_code, affine_code, frs_code, mult_code, rs_code


# ---------- parameter validation ----------

def test_rejects_unknown_family():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("turbo", p=29, n=4, s=1, k=2))


def test_rejects_composite_p():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("rs", p=30, n=4, s=1, k=2))


def test_rejects_message_length_at_block_length():
    # k must stay below s*n
    with pytest.raises(ValidationError):
        build_code(FamilySpec("rs", p=29, n=4, s=1, k=4))


def test_rs_requires_unit_folding():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("rs", p=29, n=4, s=2, k=2))


def test_frs_requires_multiplier_order_at_least_s():
    # 28 has order 2 mod 29
    with pytest.raises(ValidationError):
        build_code(FamilySpec("frs", p=29, n=4, s=3, k=4, gamma=28))
    build_code(FamilySpec("frs", p=29, n=4, s=2, k=4, gamma=28))


def test_frs_requires_multiplier():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("frs", p=29, n=4, s=2, k=4))
    with pytest.raises(ValidationError):
        build_code(FamilySpec("frs", p=29, n=4, s=2, k=4, gamma=0))


def test_additive_requires_nonzero_step_and_small_s():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("additive_frs", p=29, n=4, s=2, k=4, beta=0))
    with pytest.raises(ValidationError):
        build_code(FamilySpec("additive_frs", p=5, n=1, s=6, k=3, beta=1))


def test_mult_requires_large_characteristic():
    # needs p >= s*n so that enough repeated-root moduli stay coprime
    with pytest.raises(ValidationError):
        build_code(FamilySpec("mult", p=7, n=4, s=2, k=3))
    build_code(FamilySpec("mult", p=11, n=4, s=2, k=3))


def test_affine_requires_invertible_scale():
    with pytest.raises(ValidationError):
        build_code(FamilySpec("affine_frs", p=29, n=2, s=4, k=4, alpha=0, beta=1))


# ---------- evaluation points ----------

def test_frs_greedy_points_reference():
    spec = FamilySpec("frs", p=29, n=8, s=2, k=4, gamma=2)
    points = pick_evaluation_points(spec)
    assert list(points) == [1, 3, 4, 5, 7, 9, 11, 12]
    # the 16 orbit elements {a, 2a} are pairwise distinct
    orbit = [a * pow(2, j, 29) % 29 for a in points for j in range(2)]
    assert len(set(orbit)) == 16


def test_explicit_points_validated():
    # orbits {1,2} and {2,4} overlap
    with pytest.raises(ValidationError):
        build_code(FamilySpec("frs", p=29, n=2, s=2, k=3, gamma=2, points=(1, 2)))
    # zero is a fixed point of X -> 2X, so its orbit collapses
    with pytest.raises(ValidationError):
        build_code(FamilySpec("frs", p=29, n=2, s=2, k=3, gamma=2, points=(0, 1)))
    with pytest.raises(ValidationError):
        build_code(FamilySpec("rs", p=29, n=3, s=1, k=2, points=(1, 2)))  # wrong count
    with pytest.raises(ValidationError):
        build_code(FamilySpec("rs", p=29, n=2, s=1, k=1, points=(3, 3)))  # repeated


def test_affine_orbit_length():
    F = PrimeField(29)
    assert affine_orbit_length(F, 12, 1) == 4
    assert affine_orbit_length(F, 1, 1) == 29
    assert affine_orbit_length(F, 1, 0) == 1
    assert affine_orbit_length(F, 28, 0) == 2


# ---------- moduli ----------

def test_moduli_expansions():
    code = mult_code(p=29, n=2, s=2, k=3, points=(3, 5))
    assert code.moduli[0] == [9, 23, 1]  # (X-3)^2
    code2 = frs_code(p=29, n=2, s=2, k=3, gamma=2, points=(1, 3))
    assert code2.moduli[0] == [2, 26, 1]  # (X-1)(X-2)
    code3 = rs_code(p=29, n=3, k=2, points=(1, 2, 3))
    assert [trim(E) for E in code3.moduli] == [[28, 1], [27, 1], [26, 1]]


def test_moduli_monic_degree_s_coprime():
    from picodes.algebra.poly import poly_gcd

    for code in (rs_code(), frs_code(), additive_code(), mult_code(), affine_code()):
        assert len(code.moduli) == code.n
        for E in code.moduli:
            assert degree(E) == code.s and E[-1] == 1
        for i in range(code.n):
            for j in range(i + 1, code.n):
                g = poly_gcd(code.field, code.moduli[i], code.moduli[j])
                assert degree(g) == 0


# ---------- encoding ----------

def test_rs_symbols_are_evaluations():
    code = rs_code(p=29, n=3, k=2, points=(1, 2, 3))
    word = code.encode([1, 1])  # f = X + 1
    assert word.tolist() == [[2], [3], [4]]


def test_symbols_are_residue_coefficients():
    rng = SplitMix64(99)
    for code in (rs_code(), frs_code(), additive_code(), mult_code(), affine_code()):
        f = [rng.next_below(code.p) for _ in range(code.k)]
        word = code.encode(f)
        assert word.shape == (code.n, code.s)
        for i, E in enumerate(code.moduli):
            res = poly_mod(code.field, f, E)
            res = res + [0] * (code.s - len(res))
            assert word[i].tolist() == res


def test_mult_symbol_determines_derivative_values():
    # the residue mod (X-a)^s shares all derivatives below order s with f at a
    from picodes.algebra.poly import poly_derivative

    code = mult_code(p=29, n=2, s=3, k=5, points=(4, 7))
    f = [3, 1, 0, 2, 6]
    word = code.encode(f)
    F = code.field
    for i, a in enumerate(code.points):
        res = [int(c) for c in word[i]]
        for j in range(code.s):
            assert poly_eval(F, poly_derivative(F, res, j), a) == poly_eval(
                F, poly_derivative(F, f, j), a
            )


def test_distinct_messages_encode_distinctly():
    code = frs_code()
    rng = SplitMix64(7)
    for _ in range(25):
        f = [rng.next_below(29) for _ in range(4)]
        g = [rng.next_below(29) for _ in range(4)]
        if f == g:
            continue
        assert not np.array_equal(code.encode(f), code.encode(g))


def test_encode_message_conventions():
    code = rs_code()
    with pytest.raises(ValidationError):
        code.encode([1, 2, 3])  # wrong length
    # values are reduced mod p, not rejected
    assert np.array_equal(code.encode([29, 0, 0, 0]), code.encode([0, 0, 0, 0]))


def test_rate():
    assert rs_code(p=29, n=16, k=4).rate == 4 / 16
    assert frs_code(p=29, n=8, s=2, k=4).rate == 4 / 16


# ---------- codebook and brute force ----------

def test_codebook_roundtrip():
    code = rs_code(p=5, n=4, k=2, points=(0, 1, 2, 3))
    book = code.codebook()
    assert book.shape == (25, 4)  # rows are flattened (n*s) codewords
    seen = {tuple(book[i].tolist()) for i in range(25)}
    assert len(seen) == 25
    for idx in (0, 7, 24):
        msg = code.message_from_index(idx)
        assert np.array_equal(code.encode(msg).ravel(), book[idx])


def test_hamming_agreement_counts_rows():
    a = np.array([[1, 2], [3, 4], [5, 6]])
    b = np.array([[1, 2], [0, 4], [5, 6]])
    assert hamming_agreement(a, b) == 2


def test_check_received_shapes_and_ranges():
    code = frs_code()
    word = code.encode([1, 2, 3, 4])
    assert np.array_equal(check_received(code, word), word)
    assert np.array_equal(check_received(code, word.tolist()), word)
    with pytest.raises(ValidationError):
        check_received(code, word[:, :1])
    with pytest.raises(ValidationError):
        check_received(code, word.ravel())
    # values are normalized, not rejected
    bad = np.array(word, dtype=np.int64)
    bad[0, 0] += 29
    assert np.array_equal(check_received(code, bad), word)


def test_brute_force_list_exact():
    code = rs_code(p=5, n=4, k=2, points=(0, 1, 2, 3))
    f = [2, 3]
    word = code.encode(f)
    word[1, 0] = (word[1, 0] + 1) % 5
    out = brute_force_list(code, word, 3)
    assert (tuple(f), 3) in out
    # agreements are correct and sorted best-first
    last = None
    for coeffs, agr in out:
        assert hamming_agreement(code.encode(list(coeffs)), word) == agr >= 3
        if last is not None:
            assert agr <= last
        last = agr
    # nothing with agreement >= 3 is missing
    book = code.codebook()
    want = sum(
        1 for i in range(25) if hamming_agreement(book[i].reshape(4, 1), word) >= 3
    )
    assert len(out) == want
