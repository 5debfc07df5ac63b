"""Tests for the representation matrices and their closed evaluations."""

import math
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinesl2.cyclotomic import embed, one, root_of_unity, sqrt_int
from affinesl2.modgroup import ResidueMatrix, STWord, decompose, lift, random_matrix
from affinesl2.wzwrep import (
    RepMatrix,
    conductor,
    dispatch_path,
    evaluate_word,
    g_parity_check,
    gauss_sum,
    gauss_sum_closed,
    kernel_sum,
    kernel_sum_closed,
    rho_closed,
    rho_coprime_closed,
    rho_coprime_legendre,
    rho_float,
    rho_S,
    rho_T,
    rho_theorem1,
    rho_unit_d_closed,
    rho_upper_triangular,
    sin_value,
)


def test_conductor_values():
    assert [conductor(n) for n in (3, 4, 5, 6, 7, 10, 12)] == [24, 16, 40, 24, 56, 40, 48]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_generator_relations(n):
    """rho(S)^2 = Id, (rho(S) rho(T))^3 = rho(S)^2, rho(T)^N = Id."""
    S, T = rho_S(n), rho_T(n)
    assert (S * S).is_identity()
    st_cubed = (S * T) * (S * T) * (S * T)
    assert st_cubed == S * S
    p = RepMatrix.identity(n)
    for _ in range(conductor(n)):
        p = p * T
    assert p.is_identity()


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_generators_are_unitary(n):
    assert rho_S(n).is_unitary()
    assert rho_T(n).is_unitary()


def test_sin_values_embed_correctly():
    for n in (3, 5, 8):
        for m in range(-3, 4 * n):
            assert abs(embed(sin_value(n, m)) - math.sin(math.pi * m / n)) < 1e-12


def test_s_matrix_entries():
    """S entries are sqrt(2/n) sin(pi a b / n), exactly and numerically."""
    for n in (3, 4, 5, 6):
        arr = rho_S(n).to_floats()
        for a in range(1, n):
            for b in range(1, n):
                want = math.sqrt(2 / n) * math.sin(math.pi * a * b / n)
                assert abs(arr[a - 1, b - 1] - want) < 1e-12


def test_t_matrix_phases():
    """T is diagonal with phases e(a^2/4n - 1/8)."""
    for n in (3, 4, 5):
        arr = rho_T(n).to_floats()
        for a in range(1, n):
            want = np.exp(2j * np.pi * (a * a / (4 * n) - 1 / 8))
            assert abs(arr[a - 1, a - 1] - want) < 1e-12
        off = arr[~np.eye(n - 1, dtype=bool)]
        assert np.max(np.abs(off)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_word_evaluation_is_a_homomorphism(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 4, 5])
    toks1 = [STWord.S() if rng.random() < 0.4 else STWord.T(rng.randrange(-5, 6)) for _ in range(4)]
    toks2 = [STWord.S() if rng.random() < 0.4 else STWord.T(rng.randrange(-5, 6)) for _ in range(4)]
    w1 = toks1[0]
    for t in toks1[1:]:
        w1 = w1 * t
    w2 = toks2[0]
    for t in toks2[1:]:
        w2 = w2 * t
    assert evaluate_word(w1 * w2, n) == evaluate_word(w1, n) * evaluate_word(w2, n)


def test_minus_identity_acts_trivially():
    """rho(-Id) = Id, so rho factors through the quotient by +-1."""
    for n in (3, 4, 5, 6):
        w = decompose([[-1, 0], [0, -1]])
        assert evaluate_word(w, n).is_identity()
        r = ResidueMatrix(conductor(n), -1, 0, 0, -1)
        assert rho_closed(r, n).is_identity()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])
def test_dirichlet_gauss_sum(n):
    """S(1, 4n) = 2 sqrt(n) (1 + i) exactly."""
    N = 4 * n
    want = sqrt_int(n, N) * 2 * (one(N) + root_of_unity(N, n))
    assert gauss_sum(1, N) == want


def test_gauss_sum_closed_matches_direct():
    """The Legendre-symbol closed form equals direct summation for odd n."""
    for n in (1, 3, 5, 7, 9, 11):
        for c in range(1, 4 * n, 2):
            if gcd(c, n) != 1:
                continue
            assert gauss_sum_closed(c, n) == gauss_sum(c, 4 * n).promoted(4 * n), (c, n)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 9]), st.data())
def test_kernel_sum_closed_branches(n, data):
    """Each applicable closed branch of the sine-weighted sum is exact."""
    alpha = data.draw(st.integers(1, n - 1))
    gamma = data.draw(st.integers(1, n - 1))
    C = data.draw(st.integers(0, 4 * n - 1))
    got = kernel_sum_closed(alpha, gamma, C, n)
    if gcd(C, 2 * n) == 1:
        assert got is not None and got[0] == "coprime"
    elif C % n == 0:
        assert got is not None and got[0] == "multiple"
    elif C % 2 == 0 and gcd(C // 2, n) == 1:
        assert got is not None and got[0] == "even"
    if got is not None:
        direct = kernel_sum(alpha, gamma, C, n)
        assert got[1].promoted(8 * n) == direct.promoted(8 * n)


def test_dispatch_covers_the_four_cases():
    n = 6
    N = conductor(n)
    assert dispatch_path(ResidueMatrix(N, 1, 0, 1, 1), n) == "theorem1"
    assert dispatch_path(ResidueMatrix(N, 1, 1, 0, 1), n) == "upper"
    assert dispatch_path(ResidueMatrix(N, 7, 1, 6, 1), n) == "unit_d"
    assert dispatch_path(ResidueMatrix(N, 3, 4, 8, 11), n) == "word"


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.integers(0, 10_000))
def test_closed_evaluation_matches_oracle(n, seed):
    """rho_closed agrees bit for bit with the S, T word oracle."""
    r = random_matrix(conductor(n), random.Random(seed))
    assert rho_closed(r, n) == evaluate_word(decompose(lift(r)), n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 6]), st.integers(0, 10_000))
def test_coprime_c_forms_agree(n, seed):
    """Both closed forms for gcd(c, N) = 1 match the general dispatcher."""
    rng = random.Random(seed)
    N = conductor(n)
    while True:
        r = random_matrix(N, rng)
        if gcd(r.c, N) == 1:
            break
    want = rho_closed(r, n)
    assert rho_theorem1(r, n) == want
    assert rho_coprime_closed(r, n) == want
    if n % 2:
        assert rho_coprime_legendre(r, n) == want


def test_upper_triangular_form():
    """c = 0 matrices evaluate to decorated permutations, matching the oracle."""
    for n in (3, 4, 5, 6):
        N = conductor(n)
        for a in range(1, N):
            if gcd(a, N) != 1:
                continue
            d = pow(a, -1, N)
            for b in (0, 1, 5):
                r = ResidueMatrix(N, a, (a * b) % N, 0, d)
                got = rho_upper_triangular(r, n)
                assert got == evaluate_word(decompose(lift(r)), n), (n, a, b)


def test_unit_d_form_spot_checks():
    for n in (3, 4, 5, 6):
        N = conductor(n)
        rng = random.Random(n)
        found = 0
        while found < 6:
            r = random_matrix(N, rng)
            if dispatch_path(r, n) != "unit_d":
                continue
            found += 1
            assert rho_unit_d_closed(r, n) == evaluate_word(decompose(lift(r)), n), (n, r)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_gauss_sum_parity_identity(n):
    assert g_parity_check(n)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5, 6]), st.integers(0, 10_000))
def test_float_evaluation_tracks_exact(n, seed):
    r = random_matrix(conductor(n), random.Random(seed))
    dev = np.max(np.abs(rho_closed(r, n).to_floats() - rho_float(r, n)))
    assert dev < 1e-9


def test_rep_matrix_entry_access_and_serialization():
    S = rho_S(3)
    e = S.entry(0, 0)
    assert abs(embed(e) - 1 / math.sqrt(2)) < 1e-12
    dicts = S.to_dicts()
    assert dicts[0][0] == e.to_dict()
    assert len(dicts) == 2 and len(dicts[0]) == 2


def test_rep_matrix_scalar_and_galois():
    """galois_map is multiplicative over matrix products."""
    n = 5
    S, T = rho_S(n), rho_T(n)
    for L in (3, 7, 11):
        if gcd(L, 8 * n) != 1:
            continue
        assert (S * T).galois_map(L) == S.galois_map(L) * T.galois_map(L)
    assert S.dagger() * S == RepMatrix.identity(n)


def test_large_level_closed_vs_oracle_once():
    """A single large-n check keeps the wide-integer paths honest."""
    n = 12
    r = random_matrix(conductor(n), random.Random(77))
    assert rho_closed(r, n) == evaluate_word(decompose(lift(r)), n)
