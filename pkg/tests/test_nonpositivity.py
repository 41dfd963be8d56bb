from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhsimplex.errors import DomainError
from lhsimplex.lecture_hall import ehrhart
from lhsimplex.nonpositivity import (
    BETA_TABLE,
    LAMBDA_TABLE,
    beta,
    correction_R,
    decomposition_value,
    degree_in_l_check,
    degree_in_n_check,
    e3_closed_form,
    ehrhart_near_constant,
    elementary_symmetric,
    eulerian_number,
    lambda_expansion_check,
    leading_coeff_in_a,
    leading_coeff_target,
    lemma_identity_sum,
    nonpos_report,
    shifted_e,
    small_n_positivity,
)


def test_eulerian_numbers():
    assert [eulerian_number(4, k) for k in range(4)] == [1, 11, 11, 1]
    assert eulerian_number(1, 0) == 1
    assert eulerian_number(3, 5) == 0


def test_lambda_table_shape():
    assert len(LAMBDA_TABLE) == 12
    assert LAMBDA_TABLE[(1, 0)] == -48
    assert LAMBDA_TABLE[(0, 2)] == -1
    assert LAMBDA_TABLE[(1, 3)] == 1
    assert lambda_expansion_check(10, 10)


def test_lambda_check_detects_change():
    table = dict(LAMBDA_TABLE)
    table[(1, 0)] = F(-47)
    assert not lambda_expansion_check(4, 4, table)


def test_near_constant_matches_enumeration():
    for n in range(1, 6):
        for a in range(1, 5):
            assert ehrhart_near_constant(n, a) == ehrhart((a,) * (n - 1) + (a + 1,), method="enumerate")


@pytest.mark.parametrize("n", range(1, 6))
def test_decomposition_identity(n):
    for a in range(1, 7):
        L = ehrhart_near_constant(n, a)
        for t in range(6):
            expected = comb(a * t + n, n) + sum(comb(a * l + n - 1, n - 1) for l in range(t))
            assert L(t) == expected == decomposition_value(n, a, t)


def test_correction_vanishes_at_zero():
    for n in range(1, 6):
        assert correction_R(n, 3)(0) == 0


def test_example_polynomial():
    p = ehrhart_near_constant(5, 16)
    assert p.format(descending=True) == "139264/15 t^5 + 21760/3 t^4 + 9248/3 t^3 + 2210/3 t^2 - 119/15 t + 1"
    rep = nonpos_report(5, 16)
    assert rep.coefficient_index == 1 and rep.coefficient_value == F(-119, 15) and rep.is_negative
    assert rep.negative_indices == (1,)


def test_beta_small_and_domain():
    assert beta(5) == BETA_TABLE[5]
    assert beta(5, a_max=10) is None
    with pytest.raises(DomainError):
        beta(4)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_sign_past_beta(n):
    b = BETA_TABLE[n]
    for a in range(b, b + 6):
        assert ehrhart_near_constant(n, a).coefficient(n - 4) < 0
    assert ehrhart_near_constant(n, b - 1).coefficient(n - 4) >= 0


def test_leading_coeff_n5():
    assert leading_coeff_in_a(5) == leading_coeff_target(5) == F(-1, 720)


@pytest.mark.parametrize("n", range(5, 21))
def test_lemma_identity(n):
    assert lemma_identity_sum(n) == F(n, 15)


def test_e3_closed_form_grid():
    for n in range(13):
        for l in range(9):
            assert e3_closed_form(n, l) == shifted_e(3, n, l)


def test_shifted_e_continuation():
    # n = 0 continues the polynomial in n
    for k in range(4):
        for l in range(5):
            vals = [shifted_e(k, n, l) for n in range(0, 2 * k + 3)]
            assert all(v == 0 for v in _diffs(vals, 2 * k + 1))


def _diffs(vals, order):
    for _ in range(order):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals


def test_elementary_symmetric():
    assert elementary_symmetric([1, 2, 3], 2) == 11
    assert elementary_symmetric([], 0) == 1
    assert elementary_symmetric([5], 2) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_degree_checks(k):
    for l in range(4):
        assert degree_in_n_check(k, l)
    assert degree_in_l_check(k, k + 4)


def test_small_n_positivity():
    for a in range(1, 51):
        for n in (3, 4):
            rep = small_n_positivity(n, a)
            assert rep.all_nonnegative and rep.closed_form_matches
    with pytest.raises(DomainError):
        small_n_positivity(5, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.integers(0, 5))
def test_decomposition_property(n, a, t):
    assert ehrhart_near_constant(n, a)(t) == decomposition_value(n, a, t)
