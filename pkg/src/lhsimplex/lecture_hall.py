"""Ehrhart data of s-lecture hall simplices.

P_n^s = {x in R^n : 0 <= x_1/s_1 <= ... <= x_n/s_n <= 1}. Its h*-polynomial is
the s-Eulerian polynomial, the ascent generating function of s-inversion
sequences. Ascents use the boundary convention e_0 = 0, s_0 = 1.

The s-Eulerian polynomial and the lattice-point counts are both computed by
left-to-right transfer over coordinates (``eulerian_step`` and
``count_step``); the literal enumeration is kept as ``s_eulerian_enumerate``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, prod
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceededError, DomainError
from .exact_core import QPoly, binom_poly, interpolate

DEFAULT_CAP = 10**8
_INT64_SAFE = 2**62


def validate_s(s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(s)
    if not s:
        raise DomainError("s must have length >= 1")
    for x in s:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1:
            raise DomainError(f"entries of s must be positive integers, got {x!r}")
    return tuple(int(x) for x in s)


def _check_cap(s: Sequence[int], cap: int | None) -> None:
    size = prod(s)
    if cap is not None and size > cap:
        raise CapExceededError(size, cap)


def _dtype_for(bound: int):
    return np.int64 if bound < _INT64_SAFE else object


# --- inversion sequences ---------------------------------------------------

def inversion_sequences(s: Sequence[int], cap: int | None = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    s = validate_s(s)
    _check_cap(s, cap)
    return itertools.product(*(range(x) for x in s))


def asc(e: Sequence[int], s: Sequence[int]) -> int:
    """Number of ascents of an s-inversion sequence (e_0 = 0, s_0 = 1)."""
    if len(e) != len(s):
        raise DomainError("e and s must have the same length")
    count = 0
    pe, ps = 0, 1
    for x, q in zip(e, s):
        if not 0 <= x < q:
            raise DomainError(f"{tuple(e)} is not an inversion sequence for {tuple(s)}")
        if pe * q < x * ps:
            count += 1
        pe, ps = x, q
    return count


def s_eulerian_enumerate(s: Sequence[int], cap: int | None = DEFAULT_CAP) -> QPoly:
    """Literal sum of t^asc(e) over all inversion sequences."""
    s = validate_s(s)
    counts = [0] * (len(s) + 1)
    for e in inversion_sequences(s, cap):
        counts[asc(e, s)] += 1
    return QPoly(counts)


# --- transfer kernels ------------------------------------------------------

def eulerian_start() -> np.ndarray:
    """State for the virtual position 0: one value (e_0 = 0) with weight 1."""
    return np.ones((1, 1), dtype=np.int64)


def eulerian_step(state: np.ndarray, p: int, q: int) -> np.ndarray:
    """Advance the ascent transfer from modulus p to modulus q.

    ``state[x, k]`` counts prefixes ending in value x with k ascents. A next
    value y ascends over exactly the x with x*q < y*p, which is the prefix
    x < ceil(y*p/q).
    """
    cum = np.zeros((p + 1, state.shape[1]), dtype=state.dtype)
    np.cumsum(state, axis=0, out=cum[1:])
    y = np.arange(q, dtype=np.int64)
    c = (y * p + q - 1) // q
    below = cum[c]
    out = np.zeros((q, state.shape[1] + 1), dtype=state.dtype)
    out[:, 1:] += below
    out[:, :-1] += cum[p] - below
    return out


def count_start(t: int) -> np.ndarray:
    """State for the virtual coordinate x_0 = 0 (modulus 1)."""
    return np.ones(1, dtype=np.int64)


def count_step(state: np.ndarray, p: int, q: int, t: int) -> np.ndarray:
    """Advance the lattice-point transfer for dilation t from modulus p to q.

    ``state[x]`` counts admissible prefixes ending at x_i = x. The next
    coordinate y in [0, t*q] is admissible after x iff x*q <= y*p, i.e.
    x <= floor(y*p/q).
    """
    cum = np.cumsum(state)
    y = np.arange(t * q + 1, dtype=np.int64)
    idx = np.minimum((y * p) // q, len(state) - 1)
    return cum[idx]


def s_eulerian(s: Sequence[int], cap: int | None = DEFAULT_CAP) -> QPoly:
    """The s-Eulerian polynomial sum_e t^asc(e)."""
    s = validate_s(s)
    _check_cap(s, cap)
    dtype = _dtype_for(prod(s))
    state = eulerian_start().astype(dtype)
    p = 1
    for q in s:
        state = eulerian_step(state, p, q)
        p = q
    return QPoly(int(v) for v in state.sum(axis=0))


def count_lattice_points(s: Sequence[int], t: int, cap: int | None = DEFAULT_CAP) -> int:
    """|tP_n^s ∩ Z^n| by transfer over coordinates (independent of h*)."""
    s = validate_s(s)
    if t < 0:
        raise DomainError("t must be non-negative")
    width = t * max(s) + 1
    if cap is not None and width > cap:
        raise CapExceededError(width, cap, "transfer state width")
    bound = prod(t * x + 1 for x in s)
    state = count_start(t).astype(_dtype_for(bound))
    p = 1
    for q in s:
        state = count_step(state, p, q, t)
        p = q
    return int(state.sum())


# --- h* and Ehrhart polynomials --------------------------------------------

def _pad(h: Sequence[int], length: int) -> tuple[int, ...]:
    h = [int(x) for x in h]
    if len(h) > length:
        raise ValueError("h* longer than requested length")
    return tuple(h + [0] * (length - len(h)))


def hstar_constant(a: int, m: int) -> tuple[int, ...]:
    """h*-vector of the constant sequence (a,...,a) of length m.

    Entry i counts x in {0..a-1}^(m+1) with sum i*a (inclusion-exclusion).
    Returned with length m+1.
    """
    if a < 1 or m < 0:
        raise DomainError("need a >= 1 and m >= 0")
    out = []
    for i in range(m + 1):
        total = 0
        for j in range(min(i, m + 1) + 1):
            total += (-1) ** j * comb(m + 1, j) * comb((i - j) * a + m, m)
        out.append(total)
    return tuple(out)


def _is_constant(s: Sequence[int]) -> bool:
    return all(x == s[0] for x in s)


def hstar_recursive(s_prefix: Sequence[int], s_last: int, cap: int | None = DEFAULT_CAP) -> tuple[int, ...]:
    """h* of (s_prefix, s_last) where s_last = s_prefix[-1] + 1.

    Uses h*(s', s_n + 1) = h*(s', s_n) + t h*(s') with s' = s_prefix.
    """
    s_prefix = validate_s(s_prefix)
    if s_last != s_prefix[-1] + 1:
        raise DomainError(
            f"recursive method needs the last entry to be one more than the previous ({s_prefix[-1]} + 1), got {s_last}"
        )
    n = len(s_prefix) + 1
    base = hstar(s_prefix + (s_prefix[-1],), cap=cap)
    low = hstar(s_prefix, cap=cap)
    shifted = (0,) + tuple(low)
    return tuple(base[i] + shifted[i] for i in range(n + 1))


def hstar(s: Sequence[int], method: str = "auto", cap: int | None = DEFAULT_CAP) -> tuple[int, ...]:
    """h*-vector of P_n^s, length n+1.

    ``auto`` uses the closed form for constant sequences, the recursion for
    sequences ending in (..., b, b+1), and the transfer DP otherwise.
    """
    s = validate_s(s)
    n = len(s)
    if method == "auto":
        if _is_constant(s):
            return hstar_constant(s[0], n)
        if n >= 2 and s[-1] == s[-2] + 1:
            return hstar_recursive(s[:-1], s[-1], cap=cap)
        return _pad(s_eulerian(s, cap=cap).coeffs, n + 1)
    if method == "enumerate":
        return _pad(s_eulerian(s, cap=cap).coeffs, n + 1)
    if method == "recursive":
        if n < 2:
            raise DomainError("recursive method needs length >= 2")
        return hstar_recursive(s[:-1], s[-1], cap=cap)
    raise DomainError(f"unknown method {method!r}")


def ehrhart_from_hstar(h: Sequence[int], d: int) -> QPoly:
    """L(t) = sum_i h_i binom(t + d - i, d)."""
    if len(h) != d + 1:
        raise DomainError(f"h* must have length d+1 = {d + 1}, got {len(h)}")
    out = QPoly()
    for i, hi in enumerate(h):
        if hi:
            out = out + binom_poly(d - i, d) * hi
    return out


def ehrhart(s: Sequence[int], method: str = "auto", cap: int | None = DEFAULT_CAP) -> QPoly:
    s = validate_s(s)
    if method == "oracle":
        return ehrhart_by_interpolation(s, cap=cap)
    return ehrhart_from_hstar(hstar(s, method=method, cap=cap), len(s))


def ehrhart_by_interpolation(s: Sequence[int], cap: int | None = DEFAULT_CAP) -> QPoly:
    s = validate_s(s)
    n = len(s)
    return interpolate([(t, count_lattice_points(s, t, cap=cap)) for t in range(n + 1)])


def hstar_from_counts(counts: Sequence[int], n: int) -> tuple[int, ...]:
    """h* from L(0..n): coefficients of (1-z)^(n+1) sum_t L(t) z^t up to z^n."""
    return tuple(
        sum((-1) ** j * comb(n + 1, j) * counts[k - j] for j in range(k + 1)) for k in range(n + 1)
    )


def volume(s: Sequence[int]) -> int:
    """Normalized volume of P_n^s."""
    return prod(validate_s(s))


def leading_coefficient_expected(s: Sequence[int]) -> Fraction:
    s = validate_s(s)
    return Fraction(prod(s), prod(range(1, len(s) + 1)))
