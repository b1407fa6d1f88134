"""Release acceptance runs, one test per numbered criterion.

Each test prints a single [PASS]/[FAIL] summary line straight to the
terminal (bypassing capture) so the verdicts are visible in any pytest
run.  Two affine regimes in criterion 3 are strict expected failures;
the analysis lines printed by those tests explain why the stated error
budget is out of reach for the construction.
"""

import math

import numpy as np
import pytest

from picodes import (
    FamilySpec,
    build_code,
    build_operator_family,
    build_scheme,
    brute_force_list,
    derive_h,
    ideal_generator,
    johnson_params,
    list_decode_capacity,
    list_decode_johnson,
    verify_diag_mds,
    verify_linear_extendibility,
)
from picodes.algebra.bivar import weighted_monomial_count
from picodes.algebra.poly import poly_crt, poly_gcd, trim
from picodes.harness import _capacity_contains, run_sweep
from picodes.rng import SplitMix64

from helpers import (
    additive_code,
    affine_code,
    frs_code,
    mult_code,
    pad_tuple,
    random_message,
    rs_code,
)

BIG = dict(p=12289, n=50, s=64, k=1600)
BIG_ERRORS = 15
BIG_TRIALS = 20

FRS_N6_POINTS = (1, 16, 24, 7, 25, 23)  # six disjoint gamma=2 orbits mod 29


def report(capsys, label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}"
    if detail:
        line += f": {detail}"
    with capsys.disabled():
        print(line)


def plant_errors(code, rng, msg, e):
    word = code.encode(msg)
    for i in rng.sample(code.n, e):
        j = rng.next_below(code.s)
        word[i, j] = (word[i, j] + 1 + rng.next_below(code.p - 1)) % code.p
    return word


def span_trials(code, scheme, trials, seed):
    """Plant BIG_ERRORS errors, decode, return per-trial (in_span, dim)."""
    out = []
    for t in range(trials):
        rng = SplitMix64(seed + t)
        msg = random_message(rng, code.p, code.k)
        word = plant_errors(code, rng, msg, BIG_ERRORS)
        res = list_decode_capacity(code, scheme, word, enumeration_cap=0)
        out.append((_capacity_contains(res, msg, code.p), res.dimension))
    return out


# ---------------------------------------------------------------------------
# criterion 1: Johnson decoder output equals exhaustive search

def test_criterion_1_johnson_oracle_equivalence(capsys):
    cases = [
        (rs_code(p=29, n=16, k=4), 11),
        (frs_code(p=29, n=8, s=2, k=4, gamma=2), 6),
        (additive_code(p=29, n=8, s=2, k=4, beta=1), 6),
        (mult_code(p=29, n=8, s=2, k=4), 6),
    ]
    rng = SplitMix64(0xAC01)
    random_words = planted_words = 0
    for code, t_min in cases:
        params = johnson_params(code, r=2)
        assert (params.D, params.D_prime, params.t_min) == (20, 20, t_min)

        def check(word):
            got = {pad_tuple(f, 4) for f in list_decode_johnson(code, word, params)}
            want = {c for c, _ in brute_force_list(code, word, params.t_min)}
            assert got == want
            return got

        for _ in range(13):
            word = np.array([[rng.next_below(29) for _ in range(code.s)]
                             for _ in range(code.n)])
            check(word)
            random_words += 1
        for _ in range(13):
            msg = random_message(rng, 29, 4)
            word = plant_errors(code, rng, msg, 2)
            assert tuple(msg) in check(word)  # 2 errors sit inside the radius
            planted_words += 1
    assert random_words >= 50 and planted_words >= 50
    report(capsys, "criterion 1", True,
           f"johnson == brute force on {random_words} random and "
           f"{planted_words} planted words across 4 families")


# ---------------------------------------------------------------------------
# criterion 2: capacity decoder corrects beyond the Johnson radius

def test_criterion_2_capacity_beyond_johnson(capsys):
    code = build_code(FamilySpec(family="frs", gamma=11, **BIG))
    assert code.field.element_order(11) == 12288  # 11 generates F_12289^*
    scheme = build_scheme(code, 8)
    assert (scheme.r, scheme.D, scheme.t_min) == (57, 356, 35)
    # Johnson radius at rate 1/2 stops at floor(50(1 - sqrt(1/2))) errors
    assert math.floor(50 * (1 - math.sqrt(0.5))) == 14
    assert code.n - scheme.t_min == BIG_ERRORS  # 15 = 0.30 fraction, beyond 14

    results = span_trials(code, scheme, BIG_TRIALS, 0xAC02)
    hits = sum(ok for ok, _ in results)
    max_dim = max(dim for _, dim in results)
    assert hits == BIG_TRIALS
    assert max_dim <= 7
    report(capsys, "criterion 2", True,
           f"frs {BIG_ERRORS} errors: {hits}/{BIG_TRIALS} messages in span, "
           f"max kernel dim {max_dim} (r=57, D=356, t_min=35)")


# ---------------------------------------------------------------------------
# criterion 3: same experiment across the other families

def _criterion_3_case(capsys, label, code, seed):
    scheme = build_scheme(code, 8)
    assert (scheme.r, scheme.D, scheme.t_min) == (57, 356, 35)
    results = span_trials(code, scheme, BIG_TRIALS, seed)
    hits = sum(ok for ok, _ in results)
    max_dim = max(dim for _, dim in results)
    assert hits == BIG_TRIALS
    assert max_dim <= 7
    report(capsys, f"criterion 3 ({label})", True,
           f"{hits}/{BIG_TRIALS} in span, max kernel dim {max_dim}")


def test_criterion_3_mult_at_scale(capsys):
    _criterion_3_case(capsys, "mult", build_code(FamilySpec(family="mult", **BIG)),
                      0xAC31)


def test_criterion_3_additive_at_scale(capsys):
    _criterion_3_case(capsys, "additive",
                      build_code(FamilySpec(family="additive_frs", beta=1, **BIG)),
                      0xAC32)


def test_criterion_3_affine_translation_at_scale(capsys):
    code = build_code(FamilySpec(family="affine_frs", alpha=1, beta=1, **BIG))
    _criterion_3_case(capsys, "affine, translation map", code, 0xAC33)


@pytest.mark.xfail(strict=True, reason=(
    "with a multiplier of order 4 the only degree-preserving combinations "
    "come from the v = s/4 = 16 derivative-style operators, leaving r = "
    "(16 - m)*4 tracking rows; every m trades agreement for rows such that "
    "t_min = (50r/m + 1599)//r + 1 > 46, so the best error budget over all "
    "m is 4 (at m=4), never the 15 this experiment plants; at the stated "
    "m=8 the threshold t_min=57 even exceeds n=50"))
def test_criterion_3_affine_order_4_regime(capsys):
    code = build_code(FamilySpec(family="affine_frs", alpha=1479, beta=1, **BIG))
    assert code.field.element_order(1479) == 4
    scheme = build_scheme(code, 8)
    assert (scheme.r, scheme.D, scheme.t_min) == (32, 200, 57)
    budget = code.n - scheme.t_min
    best = max((code.n - (50 * ((16 - m) * 4) // m + code.k - 1)
                // ((16 - m) * 4) - 1) for m in range(1, 16))
    report(capsys, "criterion 3 (affine, order-4 map)", False,
           f"error budget at m=8 is {budget}; best over all m is {best}, "
           f"required {BIG_ERRORS}")
    assert budget >= BIG_ERRORS, (
        f"threshold t_min={scheme.t_min} leaves budget {budget}, "
        f"cannot plant {BIG_ERRORS} errors")


@pytest.mark.xfail(strict=True, reason=(
    "a multiplier of order 96 > sqrt(64) forces the substitution route, "
    "where every candidate combined operator multiplies arguments by a "
    "non-unit slope and so raises X-degree on some exponent below k; the "
    "scheme builder rejects the family at its degree gate, so no decoder "
    "exists to run the experiment"))
def test_criterion_3_affine_order_96_regime(capsys):
    code = build_code(FamilySpec(family="affine_frs", alpha=5957, beta=1, **BIG))
    assert code.field.element_order(5957) == 96
    report(capsys, "criterion 3 (affine, order-96 map)", False,
           "no degree-preserving operator combination exists; scheme "
           "construction rejects the family")
    build_scheme(code, 8)  # raises GuaranteeViolation at the degree gate


# ---------------------------------------------------------------------------
# criterion 4: capacity decoder output equals exhaustive search

def test_criterion_4_capacity_oracle_equivalence(capsys):
    cases = [
        frs_code(p=29, n=6, s=4, k=4, gamma=2, points=FRS_N6_POINTS),
        additive_code(p=29, n=6, s=4, k=4, beta=1),
        mult_code(p=29, n=6, s=4, k=4),
        affine_code(p=29, n=6, s=4, k=4, alpha=12, beta=1),
    ]
    rng = SplitMix64(0xAC04)
    instances = 0
    for code in cases:
        scheme = build_scheme(code, 2)
        assert (scheme.r, scheme.t_min) == (3, 5)
        for _ in range(8):
            word = np.array([[rng.next_below(29) for _ in range(4)]
                             for _ in range(6)])
            res = list_decode_capacity(code, scheme, word)
            assert res.enumerated is not None
            got = {pad_tuple(f, 4) for f in res.enumerated}
            want = {c for c, _ in brute_force_list(code, word, res.t_min)}
            assert got == want
            instances += 1
    assert instances >= 30
    report(capsys, "criterion 4", True,
           f"enumerated == brute force on {instances} random words "
           f"across 4 families at t_min=5")


# ---------------------------------------------------------------------------
# criterion 5: structural property suite on every family at both desk scales

def _desk_codes():
    return [
        rs_code(p=29, n=16, k=4),
        frs_code(p=29, n=8, s=2, k=4, gamma=2),
        additive_code(p=29, n=8, s=2, k=4, beta=1),
        mult_code(p=29, n=8, s=2, k=4),
        affine_code(p=29, n=8, s=2, k=4, alpha=12, beta=1),
        rs_code(p=29, n=6, k=4),
        frs_code(p=29, n=6, s=4, k=4, gamma=2, points=FRS_N6_POINTS),
        additive_code(p=29, n=6, s=4, k=4, beta=1),
        mult_code(p=29, n=6, s=4, k=4),
        affine_code(p=29, n=6, s=4, k=4, alpha=12, beta=1),
    ]


def _expected_gdiag(code, m):
    p, k = code.p, code.k
    spec = code.spec
    if spec.family == "frs":
        return [[pow(spec.gamma, i * e, p) for e in range(k)] for i in range(m)]
    if spec.family == "mult":
        return [[math.comb(e, i) % p for e in range(k)] for i in range(m)]
    if spec.family == "additive_frs":
        return [[math.comb(e, i) * pow(spec.beta, i, p) % p for e in range(k)]
                for i in range(m)]
    # affine with a multiplier of order >= k composes the map like frs
    return [[pow(spec.alpha, i * e, p) for e in range(k)] for i in range(m)]


def test_criterion_5_structural_properties(capsys):
    rng = SplitMix64(0xAC05)
    codes = _desk_codes()
    for code in codes:
        F, s, k = code.field, code.s, code.k

        # (a) moduli are monic of degree s and pairwise coprime
        for E in code.moduli:
            assert len(E) == s + 1 and E[-1] == 1
        for i in range(code.n):
            for j in range(i + 1, code.n):
                assert poly_gcd(F, code.moduli[i], code.moduli[j]) == [1]

        if s == 1:
            scheme = None
            D = johnson_params(code, r=2).D
        else:
            scheme = build_scheme(code, min(2, s - 1))
            D = johnson_params(code, r=2).D if s < k - 1 else scheme.D

        # (b) operators stay linearly extendible out to degree D + k
        bound = D + k
        fam, M = build_operator_family(code.spec, bound=bound)
        ext = verify_linear_extendibility(fam, M, bound=bound)
        assert ext.ok, (code.spec.family, ext)

        # (c) operator kernels regenerate the moduli exactly
        for i, a in enumerate(code.points):
            assert list(ideal_generator(fam, a)) == list(code.moduli[i])

        if scheme is not None:
            # (d) every point admits the symbol-to-operator-value tables;
            # derive_h re-verifies the composition for all exponents below k
            for ai, a in enumerate(code.points):
                h = derive_h(code, scheme.G, scheme.T, scheme.M_T, a)
                for i in range(scheme.m):
                    assert np.array_equal(h[i], scheme.h[ai, i])

            # (e) combined-operator leading coefficients match closed forms
            want = np.array(_expected_gdiag(code, scheme.m), dtype=np.int64)
            assert np.array_equal(scheme.gdiag, want), code.spec.family
            assert verify_diag_mds(scheme.gdiag, code.p, trials=200)

        # (f) interpolation from residues returns the encoded message
        msg = random_message(rng, code.p, k)
        word = code.encode(msg)
        residues = [[int(x) for x in row] for row in word]
        assert poly_crt(F, residues, [list(E) for E in code.moduli]) == trim(msg)

    # (g) weighted monomial counting obeys the telescoping identity
    for _ in range(200):
        a = 1 + rng.next_below(6)
        b = a * (1 + rng.next_below(40))
        eta = 1 + rng.next_below(b // a)
        lhs = (weighted_monomial_count(a, b)
               - weighted_monomial_count(a, b - a * eta)
               - eta * (b - a * eta + 1))
        assert 2 * lhs == a * eta * (eta + 1)

    report(capsys, "criterion 5", True,
           f"properties (a)-(g) hold on {len(codes)} codes "
           f"(5 families, 2 scales)")


# ---------------------------------------------------------------------------
# criterion 6: sweep shows rate 1.0 through the full error budget

def test_criterion_6_threshold_sweep(capsys):
    code = build_code(FamilySpec(family="frs", gamma=11, **BIG))
    rows = run_sweep(code, "capacity", list(range(18)), trials=2,
                     seed=0xAC06, m=8)
    assert [row["errors"] for row in rows] == list(range(18))
    for row in rows:
        if row["errors"] <= BIG_ERRORS:
            assert row["successes"] == row["trials"], row
    tail = {row["errors"]: f"{row['successes']}/{row['trials']}"
            for row in rows if row["errors"] > BIG_ERRORS}
    report(capsys, "criterion 6", True,
           f"rate 1.0 for e <= {BIG_ERRORS}; beyond the budget (unasserted): {tail}")
