from fractions import Fraction as F
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import svecs
from lhsimplex.errors import CapExceededError, DomainError
from lhsimplex.exact_core import QPoly
from lhsimplex.lecture_hall import (
    asc,
    count_lattice_points,
    ehrhart,
    ehrhart_by_interpolation,
    hstar,
    hstar_constant,
    hstar_from_counts,
    inversion_sequences,
    s_eulerian,
    s_eulerian_enumerate,
    validate_s,
)


def test_validate_s():
    assert validate_s([1, 2, 3]) == (1, 2, 3)
    for bad in ([], [0], [2, -1], [True]):
        with pytest.raises(DomainError):
            validate_s(bad)


def test_ascent_convention_length_one():
    # E_1 = 1 + (s_1 - 1) t needs e_0 = 0
    for a in range(1, 8):
        assert s_eulerian((a,)) == QPoly([1, a - 1])


def test_asc_examples():
    assert asc((0, 1, 2), (1, 2, 3)) == 2
    assert asc((0, 0, 0), (1, 2, 3)) == 0
    assert asc((0, 1, 0), (1, 2, 3)) == 1


def test_small_example_123():
    assert s_eulerian((1, 2, 3)) == QPoly([1, 4, 1])
    assert hstar((1, 2, 3)) == (1, 4, 1, 0)
    assert ehrhart((1, 2, 3)) == QPoly([1, 3, 3, 1])


def test_inversion_sequences_cap():
    assert len(list(inversion_sequences((2, 3)))) == 6
    with pytest.raises(CapExceededError):
        inversion_sequences((10, 10, 10), cap=999)


def test_dp_matches_enumeration():
    for s in [(1, 2, 3), (3, 5, 2), (2, 2, 2, 2), (4, 1, 3), (5, 7)]:
        assert s_eulerian(s) == s_eulerian_enumerate(s)


def test_hstar_methods_agree():
    for s in [(2, 3), (3, 3, 4), (2, 2, 2, 3), (4, 5)]:
        assert hstar(s, "recursive") == hstar(s, "enumerate") == hstar(s)
    with pytest.raises(DomainError):
        hstar((2, 5), "recursive")
    with pytest.raises(DomainError):
        hstar((2, 5), "bogus")


def test_counts_roundtrip():
    s = (3, 5, 2)
    counts = [count_lattice_points(s, t) for t in range(4)]
    assert counts[0] == 1
    assert hstar_from_counts(counts, 3) == hstar(s)


@settings(max_examples=60, deadline=None)
@given(svecs(max_len=4, max_entry=8, max_prod=400))
def test_volume_and_constant_term(s):
    h = hstar(s)
    assert h[0] == 1 and min(h) >= 0
    assert sum(h) == prod(s)
    L = ehrhart(s)
    assert L.coefficient(0) == 1
    assert L.coefficient(len(s)) == F(prod(s), factorial(len(s)))


@settings(max_examples=60, deadline=None)
@given(svecs(max_len=4, max_entry=7, max_prod=300))
def test_oracle_equivalence(s):
    assert ehrhart(s) == ehrhart_by_interpolation(s)


@settings(max_examples=60, deadline=None)
@given(svecs(max_len=5, max_entry=7, max_prod=2000))
def test_reversal(s):
    assert hstar(s) == hstar(tuple(reversed(s)))


@settings(max_examples=60, deadline=None)
@given(svecs(max_len=4, max_entry=6, max_prod=300))
def test_recursion(prefix):
    # (s', s_n + 1) versus (s', s_n), s_n the last entry of s'
    last = prefix[-1]
    lhs = hstar(prefix + (last + 1,), method="enumerate")
    base = hstar(prefix + (last,), method="enumerate")
    low = (0,) + hstar(prefix, method="enumerate")
    assert lhs == tuple(b + c for b, c in zip(base, low))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 4))
def test_constant_closed_form(a, m):
    assert hstar_constant(a, m) == hstar((a,) * m, method="enumerate")


@pytest.mark.parametrize("prefix", [(1, 2), (2, 2), (3, 5)])
def test_pyramid_identity(prefix):
    L1 = ehrhart(prefix + (1,))
    L0 = ehrhart(prefix)
    for t in range(7):
        assert L1(t) == sum(L0(j) for j in range(t + 1))
