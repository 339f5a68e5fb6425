import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonsingular_matrices, random_matrix, random_nonsingular
from oracle import fraction_det, fraction_inverse, is_integral, is_lower_hermite, naive_matmul, smith_by_minors
from smithmult.arith import iroot_ceil, is_prime, length, prime_factors, quo_star, rem_star, smod
from smithmult.errors import DimensionError, InvalidModulusError, SingularMatrixError
from smithmult.fixtures import (
    A4, A7, B7, H7, L4, L4_HERMITE, L4_LIN, L4_LIN_HERMITE, M4, S4, S7, TWO_S7,
)
from smithmult.kernel import (
    IntMat,
    SmithForm,
    colmod,
    det_exact,
    hermite_lower,
    is_zero_colmod,
    matmul,
    rowmod,
    smith_classical,
)


# -- length and signed remainders ----------------------------------------


@pytest.mark.parametrize("a, want", [(0, 1), (2047, 11), (3061969404, 32), (-1, 1), (2048, 12)])
def test_length(a, want):
    assert length(a) == want


def test_length_of_containers():
    assert length([3, -1024, 5]) == 11
    assert length(L4) == 33


def test_rem_star_examples():
    assert rem_star(29821, 8) == 5
    assert rem_star(0, 16) == 0
    assert rem_star(-29821, 8) == -5
    assert quo_star(-29821, 8) == -3727


def test_rem_star_rejects_small_modulus():
    with pytest.raises(InvalidModulusError):
        rem_star(5, 1)
    with pytest.raises(InvalidModulusError):
        quo_star(5, 0)


@given(st.integers(-10**30, 10**30), st.integers(2, 10**6))
def test_rem_star_reconstruction(v, x):
    r, q = rem_star(v, x), quo_star(v, x)
    assert v == r + x * q
    assert abs(r) < x
    assert r == 0 or (r > 0) == (v > 0)


@given(st.integers(-10**20, 10**20), st.integers(1, 10**9))
def test_smod_range(a, m):
    r = smod(a, m)
    assert (a - r) % m == 0
    assert -m < 2 * r <= m


@given(st.integers(0, 10**40), st.integers(1, 9))
def test_iroot_ceil(a, k):
    r = iroot_ceil(a, k)
    assert r**k >= a
    assert r == 0 or (r - 1) ** k < a


def test_primality_and_factoring():
    small = [p for p in range(2, 2000) if all(p % q for q in range(2, int(p**0.5) + 1))]
    assert [p for p in range(2, 2000) if is_prime(p)] == small
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert prime_factors(29088) == [2, 3, 101]
    big = (2**61 - 1) * 1000003
    assert prime_factors(big) == [1000003, 2**61 - 1]


# -- IntMat and SmithForm ---------------------------------------------------


def test_intmat_shape_rules():
    with pytest.raises(DimensionError):
        IntMat([])
    with pytest.raises(DimensionError):
        IntMat([[1, 2], [3]])
    e = IntMat.empty(3, 0)
    assert e.shape == (3, 0)
    assert A4.T.T == A4
    assert A4.submatrix(1, 3, 0, 2) == IntMat([[-4, 19], [-4, 10]])


def test_smith_form_validation():
    with pytest.raises(ValueError):
        SmithForm((2, 3))
    with pytest.raises(ValueError):
        SmithForm((0, 1))
    assert SmithForm((1, 1, 9, 29088)).det == 261792
    assert TWO_S7.halved() == S7


# -- reductions and products -------------------------------------------------


def test_colmod_examples():
    assert colmod(M4, S4) == M4
    z = IntMat.zeros(4, 4)
    assert colmod(z, S4) == z
    junk = IntMat([[x + 3 * s for x, s in zip(r, S4)] for r in M4.rows])
    assert colmod(junk, S4) == M4
    with pytest.raises(DimensionError):
        colmod(M4, SmithForm((1, 2)))


@given(st.lists(st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_colmod_rowmod_idempotent(rows):
    b = IntMat(rows)
    S = SmithForm((2, 6, 12))
    assert colmod(colmod(b, S), S) == colmod(b, S)
    assert rowmod(rowmod(b, S), S) == rowmod(b, S)


def test_matmul_examples(rng):
    assert matmul(A4, IntMat.identity(4)) == A4
    assert is_zero_colmod(A4 @ M4, S4)
    for _ in range(20):
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        assert (a @ b).tolist() == naive_matmul(a, b)
    with pytest.raises(DimensionError):
        matmul(A4, IntMat.identity(3))


# -- determinant -------------------------------------------------------------


def test_det_examples():
    assert det_exact(IntMat.identity(5)) == 1
    assert abs(det_exact(A7)) == S7.det == 1280
    assert abs(det_exact(A4)) == S4.det == 261792
    assert det_exact(IntMat([[1, 2], [2, 4]])) == 0


@given(nonsingular_matrices(max_n=4), nonsingular_matrices(max_n=4))
def test_det_multiplicative(a, b):
    if a.shape != b.shape:
        return
    assert det_exact(a @ b) == det_exact(a) * det_exact(b)


def test_det_matches_oracle(rng):
    for n in range(1, 8):
        a = random_matrix(rng, n)
        assert det_exact(a) == fraction_det(a)


# -- Hermite form -----------------------------------------------------------


def test_hermite_examples():
    assert hermite_lower(IntMat.identity(4)) == IntMat.identity(4)
    assert hermite_lower(L4_LIN) == L4_LIN_HERMITE
    assert [L4_LIN_HERMITE[i, i] for i in range(7)] == [777, 1, 4911, 765492351, 1, 1, 1]
    assert hermite_lower(B7) == H7
    assert H7[0, 0] == 830295
    assert hermite_lower(L4) == L4_HERMITE
    with pytest.raises(SingularMatrixError):
        hermite_lower(IntMat([[1, 2], [2, 4]]))


@given(nonsingular_matrices(max_n=6))
def test_hermite_properties(a):
    h = hermite_lower(a)
    assert is_lower_hermite(h)
    assert abs(det_exact(h)) == abs(det_exact(a))
    # H A^-1 integral and unimodular means H = T A with T unimodular
    t = naive_matmul(h, fraction_inverse(a))
    assert is_integral(t)
    assert abs(fraction_det([[int(x) for x in r] for r in t])) == 1


# -- classical Smith form ---------------------------------------------------


def test_smith_examples():
    S, U0, V0, _ = smith_classical(IntMat.identity(3))
    assert S == SmithForm((1, 1, 1))
    assert U0 @ V0 == IntMat.identity(3)
    assert smith_classical(A4)[0] == SmithForm((1, 1, 9, 29088))
    assert smith_classical(2 * A7)[0] == TWO_S7


@pytest.mark.parametrize("seed", range(8))
def test_smith_classical_certified(seed):
    r = random.Random(seed)
    n = 1 + seed % 7
    a = random_nonsingular(r, n)
    S, U0, V0, V0inv = smith_classical(a)
    assert U0 @ a @ V0 == S.matrix()
    assert abs(det_exact(U0)) == 1 and abs(det_exact(V0)) == 1
    assert V0 @ V0inv == IntMat.identity(n)


@given(nonsingular_matrices(max_n=4, bound=12))
def test_smith_matches_minors_oracle(a):
    assert smith_classical(a)[0].diag == smith_by_minors(a)
