"""Ehrhart coefficients of near-constant lecture hall simplices.

For s = (a,...,a,a+1) of length n the Ehrhart polynomial splits as
binom(at+n, n) + R(t), with R built from the h*-vector of the constant
sequence of length n-1. Everything here runs on closed forms, so the
coefficient scans over a never enumerate inversion sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import DomainError
from .exact_core import QPoly, as_rat, binom_poly, falling_factorial, interpolate
from .lecture_hall import hstar_constant

# lambda_{a,b}: a = power of l, b = power of n (falling factorials)
LAMBDA_TABLE: dict[tuple[int, int], Fraction] = {
    (1, 0): Fraction(-48),
    (2, 0): Fraction(-132),
    (3, 0): Fraction(-68),
    (4, 0): Fraction(-8),
    (1, 1): Fraction(40),
    (2, 1): Fraction(56),
    (3, 1): Fraction(12),
    (0, 2): Fraction(-1),
    (1, 2): Fraction(-13),
    (2, 2): Fraction(-6),
    (0, 3): Fraction(1),
    (1, 3): Fraction(1),
}

BETA_TABLE = {5: 16, 6: 19, 7: 23, 8: 27}


def eulerian_number(n: int, k: int) -> int:
    """A(n, k): permutations of [n] with k ascents."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return _eulerian_row(n)[k] if 0 <= k < n else 0


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    row = [1]
    for m in range(2, n + 1):
        row = [
            (k + 1) * (row[k] if k < len(row) else 0) + (m - k) * (row[k - 1] if 1 <= k <= len(row) else 0)
            for k in range(m)
        ]
    return tuple(row)


def elementary_symmetric(values, k: int) -> Fraction:
    if k < 0:
        raise DomainError("k must be >= 0")
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in values:
        v = as_rat(v)
        for j in range(k, 0, -1):
            e[j] += v * e[j - 1]
    return e[k]


def e3_closed_form(n: int, l: int) -> Fraction:
    """e_3(1-l, ..., n-1-l) in closed form."""
    return Fraction((n - 3) * (n - 2) * (n - 1) * (n - 2 * l) * (n * n - 4 * n * l + 4 * l * l - n), 48)


def omega(n: int, l: int) -> int:
    """omega(n, l) with omega(N-1, L-1) = L (N - 2L)(N^2 - 4NL + 4L^2 - N)."""
    N, L = n + 1, l + 1
    return L * (N - 2 * L) * (N * N - 4 * N * L + 4 * L * L - N)


def lambda_expansion_check(n_max: int, l_max: int, table: dict | None = None) -> bool:
    """omega(n, l) == sum lambda_{a,b} l^(a) n^(b) on the grid, falling factorials."""
    table = LAMBDA_TABLE if table is None else table
    for n in range(n_max + 1):
        for l in range(l_max + 1):
            rhs = sum(c * falling_factorial(l, a) * falling_factorial(n, b) for (a, b), c in table.items())
            if rhs != omega(n, l):
                return False
    return True


def lemma_identity_sum(n: int) -> Fraction:
    """sum_l A(n-1, l-1)/(n-1)! * l (n-2l)(n^2-4nl+4l^2-n); equals n/15."""
    if n < 5:
        raise DomainError("the identity is stated for n >= 5")
    total = Fraction(0)
    for l in range(1, n):
        total += eulerian_number(n - 1, l - 1) * l * (n - 2 * l) * (n * n - 4 * n * l + 4 * l * l - n)
    return total / factorial(n - 1)


def correction_R(n: int, a: int) -> QPoly:
    """R(t) = sum_i h_i*(a^(n-1)) binom(t + n - i - 1, n)."""
    if n < 1 or a < 1:
        raise DomainError("need n >= 1 and a >= 1")
    h = hstar_constant(a, n - 1)
    out = QPoly()
    for i, hi in enumerate(h):
        if hi:
            out = out + binom_poly(n - i - 1, n) * hi
    return out


def ehrhart_near_constant(n: int, a: int) -> QPoly:
    """Ehrhart polynomial of s = (a,...,a,a+1) of length n: binom(at+n, n) + R(t)."""
    if n < 1 or a < 1:
        raise DomainError("need n >= 1 and a >= 1")
    return binom_poly(n, n).scale_argument(a) + correction_R(n, a)


def decomposition_value(n: int, a: int, t: int) -> int:
    """binom(at+n, n) + sum_{l<t} binom(al+n-1, n-1), the dilate count as a sum."""
    return comb(a * t + n, n) + sum(comb(a * l + n - 1, n - 1) for l in range(t))


def coefficient(p: QPoly, k: int) -> Fraction:
    return p.coefficient(k)


@dataclass(frozen=True)
class NonPosReport:
    n: int
    a: int
    coefficient_index: int
    coefficient_value: Fraction
    is_negative: bool
    negative_indices: tuple[int, ...] = ()


def nonpos_report(n: int, a: int, k: int | None = None) -> NonPosReport:
    """Report on [t^k] of the near-constant Ehrhart polynomial (default k = n-4)."""
    p = ehrhart_near_constant(n, a)
    if k is None:
        k = max(n - 4, 0)
    c = p.coefficient(k)
    neg = tuple(i for i, x in enumerate(p.coeffs) if x < 0)
    return NonPosReport(n, a, k, c, c < 0, neg)


def beta(n: int, a_max: int = 1000) -> int | None:
    """Least a <= a_max with [t^(n-4)] L < 0 for s = (a,...,a,a+1); None if none."""
    if n < 5:
        raise DomainError("beta is defined for n >= 5 (n <= 4 is Ehrhart positive)")
    for a in range(1, a_max + 1):
        if ehrhart_near_constant(n, a).coefficient(n - 4) < 0:
            return a
    return None


def coefficient_in_a(n: int) -> QPoly:
    """c(a) = [t^(n-4)] L as an exact polynomial in a (interpolated at a = 1..n+1)."""
    if n < 5:
        raise DomainError("need n >= 5")
    samples = [(a, ehrhart_near_constant(n, a).coefficient(n - 4)) for a in range(1, n + 2)]
    return interpolate(samples)


def leading_coeff_in_a(n: int) -> Fraction:
    """Coefficient of a^(n-1) in c(a); the target is -1/(720 (n-4)!)."""
    c = coefficient_in_a(n)
    # n+1 nodes recover degree <= n; the a^n term must vanish
    if c.degree > n - 1:
        raise AssertionError(f"[t^{n - 4}] L has degree {c.degree} in a, expected <= {n - 1}")
    return c.coefficient(n - 1)


def leading_coeff_target(n: int) -> Fraction:
    return Fraction(-1, 720 * factorial(n - 4))


# Closed forms for the [t] and [t^2] coefficients when n = 3, 4
_SMALL_N_FORMS = {
    (3, 1): (Fraction(1, 12), Fraction(13, 12), Fraction(1)),
    (4, 1): (Fraction(1, 6), Fraction(7, 6), Fraction(1)),
    (4, 2): (Fraction(1, 24), Fraction(23, 24), Fraction(11, 12), Fraction(0)),
}


def small_n_closed_form(n: int, k: int, a: int) -> Fraction | None:
    form = _SMALL_N_FORMS.get((n, k))
    if form is None:
        return None
    deg = len(form) - 1
    return sum(c * Fraction(a) ** (deg - i) for i, c in enumerate(form))


@dataclass(frozen=True)
class PositivityReport:
    n: int
    a: int
    coefficients: tuple[Fraction, ...]
    all_nonnegative: bool
    closed_form_matches: bool


def small_n_positivity(n: int, a: int) -> PositivityReport:
    if not 1 <= n <= 4:
        raise DomainError("small_n_positivity covers 1 <= n <= 4")
    if a < 1:
        raise DomainError("a must be >= 1")
    p = ehrhart_near_constant(n, a)
    coeffs = tuple(p.coefficient(k) for k in range(n + 1))
    matches = True
    for k in range(1, n):
        ref = small_n_closed_form(n, k, a)
        if ref is not None and ref != coeffs[k]:
            matches = False
    return PositivityReport(n, a, coeffs, all(c >= 0 for c in coeffs), matches)


def finite_differences(values, order: int) -> list[Fraction]:
    vals = [as_rat(v) for v in values]
    for _ in range(order):
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return vals


def shifted_e(k: int, n: int, l: int) -> Fraction:
    """e_k(1-l, 2-l, ..., n-1-l).

    For n = 0 the list has -1 entries; the polynomial continuation divides out
    the variable -l, which gives (-1)^k h_k(-l) = l^k.
    """
    if n < 0:
        raise DomainError("need n >= 0")
    if n == 0:
        return Fraction(l) ** k
    return elementary_symmetric(range(1 - l, n - l), k)


def degree_in_n_check(k: int, l: int) -> bool:
    """n -> e_k(1-l..n-1-l) has degree exactly 2k on n = k+1..3k+3."""
    vals = [shifted_e(k, n, l) for n in range(k + 1, 3 * k + 4)]
    top = finite_differences(vals, 2 * k + 1)
    return all(v == 0 for v in top) and any(v != 0 for v in finite_differences(vals, 2 * k))


def degree_in_l_check(k: int, n: int) -> bool:
    """l -> e_k(1-l..n-1-l) has degree exactly k (needs n-1 >= k)."""
    vals = [shifted_e(k, n, l) for l in range(k + 3)]
    top = finite_differences(vals, k + 1)
    return all(v == 0 for v in top) and any(v != 0 for v in finite_differences(vals, k))
