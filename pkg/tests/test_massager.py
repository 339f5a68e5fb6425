from fractions import Fraction
from math import gcd, lcm

import pytest
from hypothesis import given

from conftest import nonsingular_matrices, random_nonsingular
from oracle import fraction_det, fraction_inverse, is_integral, naive_matmul
from smithmult.fixtures import A4, A7, B7, H7, M4, M7, S4, S7, TWO_S7, V7, W4, WM_OFFSET4
from smithmult.kernel import IntMat, SmithForm, colmod, det_exact, hermite_lower, is_zero_colmod
from smithmult.massager import (
    MassagerPair,
    denominator_of,
    in_row_lattice,
    is_left_equivalent,
    massager_col_op,
    rank_condition,
    smith_massager,
    verify_massager,
)


def e(i, n=4, c=1):
    return [c * int(j == i) for j in range(n)]


# -- construction and verification ------------------------------------------


def test_identity_massager():
    pair = smith_massager(IntMat.identity(3))
    assert pair.S == SmithForm((1, 1, 1))
    assert pair.M == IntMat.zeros(3, 3)
    assert verify_massager(IntMat.identity(3), pair.S, pair.M, pair.W)


def test_fix_a4_massager():
    pair = smith_massager(A4)
    assert pair.S == S4
    assert verify_massager(A4, pair.S, pair.M, pair.W)
    # the stored pair and its witness
    v = verify_massager(A4, S4, M4, W4)
    assert v and not v.partial and str(v) == "accept"
    assert W4 @ M4 - IntMat.identity(4) == WM_OFFSET4
    assert is_zero_colmod(WM_OFFSET4, S4)


def test_two_a7_massager():
    pair = smith_massager(2 * A7)
    assert pair.S == TWO_S7
    assert verify_massager(2 * A7, pair.S, pair.M, pair.W)
    ok = verify_massager(2 * A7, TWO_S7, M7)
    assert ok and ok.partial


def test_corrupted_entry_rejected():
    rows = M4.tolist()
    rows[0][3] = 806
    v = verify_massager(A4, S4, IntMat(rows), W4)
    assert not v
    assert "colmod" in v.reason


def test_wrong_smith_form_rejected():
    assert not verify_massager(A4, SmithForm((1, 1, 3, 87264)), M4)
    assert not verify_massager(IntMat([[1, 2], [2, 4]]), SmithForm((1, 1)), IntMat.zeros(2, 2))


def test_skewed_input_goes_through_linearization(rng):
    rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
    for i in range(4):
        rows[i][2] <<= 500
    a = IntMat(rows)
    if det_exact(a) == 0:
        pytest.skip("unlucky singular draw")
    direct = smith_massager(a, linearize_skewed=False)
    lin = smith_massager(a)
    assert lin.S == direct.S
    assert verify_massager(a, lin.S, lin.M, lin.W)


@given(nonsingular_matrices(max_n=6))
def test_massager_random(a):
    pair = smith_massager(a)
    assert verify_massager(a, pair.S, pair.M, pair.W, check_smith=False)
    assert abs(det_exact(a)) == pair.S.det


# -- column operations ---------------------------------------------------------


def test_col_ops_preserve_massager():
    pair = MassagerPair(S4, M4, W4)
    added = massager_col_op(pair, "add_later", i=2, j=3, c=1)
    assert added.M.col(2) == tuple(x % 9 for x in (812, 23673, 9, 10228))
    assert verify_massager(A4, added.S, added.M, added.W)
    scaled = massager_col_op(pair, "scale", i=2, c=2)
    assert scaled.M.col(2) == (5, 1, 6, 8)
    assert verify_massager(A4, scaled.S, scaled.M, scaled.W)
    shifted = massager_col_op(pair, "add_multiple", i=3, v=[1, -2, 3, 4])
    assert shifted.M == M4
    with pytest.raises(ValueError):
        massager_col_op(pair, "scale", i=2, c=3)
    with pytest.raises(ValueError):
        massager_col_op(pair, "add_later", i=3, j=2, c=1)
    with pytest.raises(ValueError):
        massager_col_op(pair, "swap", i=0, j=1)


def test_random_col_op_chains(rng):
    a = random_nonsingular(rng, 5)
    pair = smith_massager(a)
    n = 5
    for _ in range(30):
        op = rng.choice(["add_later", "scale", "add_multiple"])
        i = rng.randrange(n)
        if op == "add_later" and i < n - 1:
            pair = massager_col_op(pair, op, i=i, j=rng.randrange(i + 1, n), c=rng.randint(-5, 5))
        elif op == "scale":
            c = rng.randint(1, 50)
            if pair.S[i] > 1 and gcd(c, pair.S[i]) == 1:
                pair = massager_col_op(pair, op, i=i, c=c)
        else:
            pair = massager_col_op(pair, "add_multiple", i=i, v=[rng.randint(-9, 9) for _ in range(n)])
    assert verify_massager(a, pair.S, pair.M, pair.W)


# -- lattice queries -----------------------------------------------------------


def test_in_row_lattice():
    assert not in_row_lattice(S4, M4, e(0))
    assert in_row_lattice(S4, M4, e(0, c=29088))
    assert in_row_lattice(S4, M4, list(A4.rows[2]))
    assert in_row_lattice(S4, M4, [0, 0, 0, 0])


def test_denominator_of():
    assert denominator_of(S4, M4, [0, 0, 0, 0]) == 1
    assert denominator_of(S4, M4, e(0)) == 29088
    assert denominator_of(S4, M4, e(1)) == 7272
    assert denominator_of(S4, M4, e(1, c=29088)) == 1


def test_denominator_matches_inverse(rng):
    inv = fraction_inverse(A4)
    for _ in range(20):
        v = [rng.randint(-20, 20) for _ in range(4)]
        x = [sum(vi * inv[i][j] for i, vi in enumerate(v)) for j in range(4)]
        assert denominator_of(S4, M4, v) == lcm(*(q.denominator for q in x))


def test_left_equivalence():
    assert is_left_equivalent(A4, S4, M4)
    h = hermite_lower(A4)
    assert is_left_equivalent(h, S4, M4)
    assert not is_left_equivalent(2 * h, S4, M4)
    swapped = IntMat([A4.rows[1], A4.rows[0], A4.rows[2], A4.rows[3]])
    assert is_left_equivalent(swapped, S4, M4)
    cols = IntMat.from_columns([A4.col(1), A4.col(0), A4.col(2), A4.col(3)])
    assert not is_left_equivalent(cols, S4, M4)


# -- structural facts ---------------------------------------------------------


def test_massager_of_double_is_massager(rng):
    for a in (A4, A7, random_nonsingular(rng, 4)):
        pair2 = smith_massager(2 * a)
        S = pair2.S.halved()
        assert S == smith_massager(a).S
        assert verify_massager(a, S, pair2.M, pair2.W)
        R = IntMat([[rng.randint(0, 30) for _ in range(a.nrows)] for _ in range(a.nrows)])
        B = pair2.M + IntMat([[r * s for r, s in zip(row, pair2.S)] for row in R.rows])
        assert verify_massager(a, S, colmod(B, S), pair2.W)
        assert verify_massager(2 * a, pair2.S, colmod(B, pair2.S), pair2.W)


def test_perturbed_massager_has_integral_inverse_product():
    # A B S^-1 is integral for a massager B of A
    prod = naive_matmul(A7, B7)
    assert is_integral([[Fraction(x, s) for x, s in zip(r, S7)] for r in prod])
    assert not is_integral([[Fraction(x, 2 * s) for x, s in zip(r, S7)] for r in prod])


def test_trivial_hermite_gives_unimodular():
    # B H^-1 is unimodular when the Hermite form of B is trivial
    t = naive_matmul(B7, fraction_inverse(H7))
    assert is_integral(t)
    assert [[int(x) for x in r] for r in t] == V7.tolist()
    assert abs(fraction_det(V7)) == 1


def test_rank_condition():
    assert rank_condition(S4, M4) == (True, None)
    assert rank_condition(S4, IntMat.zeros(4, 4))[0] is False
    assert rank_condition(S4, IntMat.zeros(4, 4)) == (False, 2)
    col3 = [[x if j != 2 else 3 * x for j, x in enumerate(r)] for r in M4.tolist()]
    assert rank_condition(S4, IntMat(col3)) == (False, 3)
    assert not verify_massager(A4, S4, IntMat.zeros(4, 4))
