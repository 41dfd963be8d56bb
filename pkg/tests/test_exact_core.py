from fractions import Fraction as F
from math import comb

import pytest

from lhsimplex.exact_core import (
    AffineDependenceError,
    DuplicateAbscissaError,
    NonSquareError,
    QPoly,
    as_rat,
    binom_poly,
    check_constraints,
    det,
    falling_factorial,
    interpolate,
    linear_feasible,
    rat_str,
    solve_affine,
)


def test_rat_str_and_parse():
    assert rat_str(F(-119, 15)) == "-119/15"
    assert rat_str(F(4)) == "4"
    assert as_rat("3/6") == F(1, 2)


def test_binom_poly_examples():
    p = binom_poly(3, 3)
    assert p(0) == 1
    assert binom_poly(2, 3)(1) == 1
    assert binom_poly(2, 3)(2) == 4
    assert binom_poly(5, 0) == QPoly([1])
    for n in range(6):
        assert binom_poly(n, n)(0) == 1


def test_binom_poly_negative_shift_matches_integers():
    for k in range(-4, 5):
        for n in range(5):
            p = binom_poly(k, n)
            for t in range(max(0, n - k), max(0, n - k) + 5):
                assert p(t) == comb(t + k, n)


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(2, 4) == 0
    assert falling_factorial(0, 0) == 1


def test_interpolate_examples():
    assert interpolate([(0, 1), (1, 8), (2, 27), (3, 64)]) == QPoly([1, 3, 3, 1])
    assert interpolate([(0, F(7, 3))]) == QPoly([F(7, 3)])
    assert interpolate([(0, 0), (1, 1), (2, 4)]) == QPoly([0, 0, 1])


def test_interpolate_duplicate_abscissa():
    with pytest.raises(DuplicateAbscissaError):
        interpolate([(1, 2), (1, 3)])


def test_qpoly_format():
    p = QPoly([1, F(-119, 15), F(2210, 3)])
    assert p.format(descending=True) == "2210/3 t^2 - 119/15 t + 1"
    assert QPoly([1, 4, 1]).format() == "1 + 4t + t^2"
    assert QPoly().format() == "0"
    assert QPoly([0, 0, 0]).degree == -1


def test_det_examples():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det([[3, 0, 0], [0, 5, 0], [0, 0, 2]]) == 30
    assert det([[1, 2], [2, 4]]) == 0
    with pytest.raises(NonSquareError):
        det([[1, 2, 3], [4, 5, 6]])


def test_solve_affine_examples():
    assert solve_affine([(0,), (1,)], [0, 1]) == ((F(1),), F(0))
    assert solve_affine([(0, 0), (1, 0), (0, 1)], [5, 5, 5]) == ((F(0), F(0)), F(5))
    assert solve_affine([(0, 0), (1, 0), (0, 1)], [0, 1, 2]) == ((F(1), F(2)), F(0))
    with pytest.raises(AffineDependenceError):
        solve_affine([(0, 0), (1, 1), (2, 2)], [0, 1, 2])


def test_linear_feasible_examples():
    x = linear_feasible([([1], ">", 0), ([-1], ">", -1)])
    assert x is not None and 0 < x[0] < 1
    assert linear_feasible([([1], ">", 0), ([-1], ">", 0)]) is None


def test_linear_feasible_mixed_relations():
    cons = [([1, 1], "==", 3), ([1, -1], ">=", 1), ([0, 1], ">", 0)]
    x = linear_feasible(cons)
    assert x is not None and check_constraints(cons, x)
    assert linear_feasible([([1, 1], "<=", 1), ([1, 1], ">=", 2)]) is None


def test_linear_feasible_is_deterministic():
    cons = [([2, -1, 0], ">", 1), ([0, 1, 1], ">=", F(1, 3)), ([1, 1, 1], "<", 9)]
    assert linear_feasible(cons) == linear_feasible(cons)
