"""Exhaustive cross-check of the two Ehrhart pipelines over all short sequences.

For every s with len(s) <= max_len and prod(s) <= max_prod, the sweep
computes the s-Eulerian coefficients (ascent transfer) and the lattice-point
counts L(0..n) (coordinate transfer), converts the counts to h*, and compares.
Sequences sharing a prefix share the transfer states, so the walk is a
depth-first traversal of the prefix tree. All arithmetic is int64, which is
exact here: every count is bounded by prod(t*s_i + 1) <= (max_len+1)^max_len * max_prod
and the function refuses inputs where that bound could overflow.

Because h* determines L(t) through L(t) = sum_i h_i binom(t+n-i, n), agreement
of h* is the same statement as coefficientwise equality of the two Ehrhart
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numba
import numpy as np


@numba.njit(cache=True)
def _sweep(max_len, max_prod, signs, hstar_out, keys_out, radix):
    T = max_len
    E = np.zeros((max_len + 1, max_prod, max_len + 2), dtype=np.int64)
    C = np.zeros((max_len + 1, T + 1, T * max_prod + 1), dtype=np.int64)
    cum = np.zeros((T * max_prod + 2, max_len + 2), dtype=np.int64)
    s = np.zeros(max_len + 1, dtype=np.int64)
    pr = np.ones(max_len + 1, dtype=np.int64)
    nxt = np.zeros(max_len + 1, dtype=np.int64)
    key = np.zeros(max_len + 1, dtype=np.int64)
    # virtual position 0: value 0, modulus 1
    s[0] = 1
    E[0, 0, 0] = 1
    for t in range(T + 1):
        C[0, t, 0] = 1
    L = np.zeros(max_len + 1, dtype=np.int64)
    h = np.zeros(max_len + 2, dtype=np.int64)
    count = 0
    mismatches = 0
    depth = 0
    nxt[0] = 1
    while depth >= 0:
        q = nxt[depth]
        if depth == max_len or pr[depth] * q > max_prod:
            depth -= 1
            continue
        nxt[depth] = q + 1
        p = s[depth]
        d1 = depth + 1
        s[d1] = q
        pr[d1] = pr[depth] * q
        key[d1] = key[depth] + q * radix[depth]
        # ascent transfer
        for k in range(d1 + 1):
            cum[0, k] = 0
        for x in range(p):
            for k in range(d1):
                cum[x + 1, k] = cum[x, k] + E[depth, x, k]
        for y in range(q):
            c = (y * p + q - 1) // q
            for k in range(d1 + 1):
                E[d1, y, k] = 0
            for k in range(d1):
                E[d1, y, k + 1] += cum[c, k]
                E[d1, y, k] += cum[p, k] - cum[c, k]
        # lattice-point transfer for t = 1..T
        L[0] = 1
        for t in range(1, T + 1):
            width_prev = t * p + 1 if depth > 0 else 1
            acc = 0
            for x in range(width_prev):
                acc += C[depth, t, x]
                cum[x, 0] = acc
            total = 0
            for y in range(t * q + 1):
                i = (y * p) // q
                if i > width_prev - 1:
                    i = width_prev - 1
                v = cum[i, 0]
                C[d1, t, y] = v
                total += v
            if t <= d1:
                L[t] = total
        # compare h* from both pipelines
        ok = True
        for k in range(d1 + 1):
            acc = 0
            for j in range(k + 1):
                acc += signs[d1, j] * L[k - j]
            hk = 0
            for y in range(q):
                hk += E[d1, y, k]
            h[k] = hk
            if acc != hk:
                ok = False
        if not ok:
            mismatches += 1
        for k in range(max_len + 1):
            hstar_out[count, k] = h[k] if k <= d1 else 0
        keys_out[count] = key[d1]
        count += 1
        depth = d1
        nxt[depth] = 1
    return count, mismatches


@numba.njit(cache=True)
def _reverse_keys(keys, lengths, radix, max_len):
    out = np.empty_like(keys)
    digits = np.zeros(max_len, dtype=np.int64)
    for r in range(keys.shape[0]):
        k = keys[r]
        rem = k
        for i in range(max_len):
            digits[i] = rem // radix[i]
            rem -= digits[i] * radix[i]
        n = lengths[r]
        rk = 0
        for i in range(n):
            rk += digits[n - 1 - i] * radix[i]
        out[r] = rk
    return out


@dataclass
class SweepResult:
    max_len: int
    max_prod: int
    count: int
    mismatches: int
    reversal_failures: int
    sequences: np.ndarray  # packed keys, lexicographic order
    hstar: np.ndarray  # one row per sequence, zero-padded to max_len + 1

    def unpack(self, row: int) -> tuple[int, ...]:
        base = self.max_prod + 1
        k = int(self.sequences[row])
        digits = []
        for i in range(self.max_len):
            w = base ** (self.max_len - 1 - i)
            digits.append(k // w)
            k %= w
        return tuple(d for d in digits if d)


def oracle_sweep(max_len: int = 5, max_prod: int = 5000) -> SweepResult:
    """Compare h* (ascents) with h* (point counts) for every short sequence,
    and check h*(s) = h*(reverse(s))."""
    base = max_prod + 1
    if base**max_len >= 2**62 or (max_len + 1) ** (max_len + 3) * max_prod >= 2**62:
        raise ValueError("sweep bounds exceed exact int64 range")
    radix = np.array([base ** (max_len - 1 - i) for i in range(max_len)] + [0], dtype=np.int64)
    signs = np.zeros((max_len + 1, max_len + 2), dtype=np.int64)
    for n in range(1, max_len + 1):
        for j in range(n + 2):
            signs[n, j] = (-1) ** j * comb(n + 1, j)
    total = _count_sequences(max_len, max_prod)
    hst = np.zeros((total, max_len + 1), dtype=np.int64)
    keys = np.zeros(total, dtype=np.int64)
    count, mismatches = _sweep(max_len, max_prod, signs, hst, keys, radix)
    assert count == total
    lengths = np.zeros(total, dtype=np.int64)
    rem = keys.copy()
    for i in range(max_len):
        lengths += (rem // radix[i]) > 0
        rem %= radix[i]
    rkeys = _reverse_keys(keys, lengths, radix, max_len)
    assert np.all(np.diff(keys) > 0)
    pos = np.searchsorted(keys, rkeys)
    found = (pos < total) & (keys[np.minimum(pos, total - 1)] == rkeys)
    rev_fail = int(np.count_nonzero(~found))
    rev_fail += int(np.count_nonzero(np.any(hst[np.minimum(pos, total - 1)] != hst, axis=1) & found))
    return SweepResult(max_len, max_prod, count, int(mismatches), rev_fail, keys, hst)


def _count_sequences(max_len: int, max_prod: int) -> int:
    # d[m] = number of length-k sequences with product exactly m (divisor sieve)
    d = [0] * (max_prod + 1)
    d[1] = 1
    total = 0
    for _ in range(max_len):
        nd = [0] * (max_prod + 1)
        for m in range(1, max_prod + 1):
            if d[m]:
                for q in range(1, max_prod // m + 1):
                    nd[m * q] += d[m]
        d = nd
        total += sum(d)
    return total
