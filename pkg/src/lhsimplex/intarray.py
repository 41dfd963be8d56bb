"""Exact integer batch kernels on numpy arrays.

Arrays are int64 when a magnitude bound proves every intermediate fits, and
Python-int object arrays otherwise, so results are exact either way.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Sequence

import numpy as np

LIMIT = 2**62


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def int_array(rows, bound_factor: int = 1) -> np.ndarray:
    """Exact integer array; int64 if ``max|x| * bound_factor`` is safe."""
    a = np.array(rows, dtype=object)
    if a.size == 0:
        return a.astype(np.int64)
    m = max(abs(int(x)) for x in a.ravel())
    return a.astype(np.int64) if m * bound_factor < LIMIT else a


def widen(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def batch_det(m: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square integer matrices (fraction-free elimination)."""
    m = np.array(m, copy=True)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise ValueError("expected shape (B, k, k)")
    b, k, _ = m.shape
    if k == 0:
        return np.ones(b, dtype=np.int64)
    if b == 0:
        return np.zeros(0, dtype=np.int64)
    sign = np.ones(b, dtype=np.int64)
    zero = np.zeros(b, dtype=bool)
    prev = np.ones(b, dtype=m.dtype)
    idx = np.arange(b)
    for c in range(k - 1):
        nz = m[:, c:, c] != 0
        has = nz.any(axis=1)
        r = c + nz.argmax(axis=1)
        swap = (r != c) & has
        if swap.any():
            rows_c = m[idx[swap], c].copy()
            m[idx[swap], c] = m[idx[swap], r[swap]]
            m[idx[swap], r[swap]] = rows_c
            sign[swap] *= -1
        if not has.all():
            zero |= ~has
            m[~has] = 0
            for j in range(k):
                m[~has, j, j] = 1
        akk = m[:, c, c]
        sub = m[:, c + 1:, c + 1:]
        col = m[:, c + 1:, c:c + 1]
        row = m[:, c:c + 1, c + 1:]
        # entries are minors of the input; widen before a product could overflow
        if m.dtype != object and max_abs(akk) * max_abs(sub) + max_abs(col) * max_abs(row) >= LIMIT:
            m, prev = m.astype(object), prev.astype(object)
            akk = m[:, c, c]
            sub = m[:, c + 1:, c + 1:]
            col = m[:, c + 1:, c:c + 1]
            row = m[:, c:c + 1, c + 1:]
        m[:, c + 1:, c + 1:] = (akk[:, None, None] * sub - col * row) // prev[:, None, None]
        prev = akk
    out = sign * m[:, k - 1, k - 1]
    out[zero] = 0
    return out


def batch_adjugate(h: np.ndarray, det: np.ndarray | None = None) -> np.ndarray:
    """adj(H) for a stack of square integer matrices, so that H adj(H) = det(H) I.

    Candidates come from a rounded floating-point inverse and are accepted only
    if H X == det(H) I holds exactly, which pins X = adj(H) for nonsingular H.
    Singular or unconfirmed matrices go through exact cofactors.
    """
    b, k, _ = h.shape
    if det is None:
        det = batch_det(h)
    out = None
    if h.dtype != object and det.dtype != object and b and max_abs(h) < 2**20:
        nz = det != 0
        x = np.zeros(h.shape, dtype=np.int64)
        if nz.any():
            with np.errstate(all="ignore"):
                inv = np.linalg.inv(h[nz].astype(np.float64))
                cand = np.rint(inv * det[nz].astype(np.float64)[:, None, None])
            finite = np.isfinite(cand).all(axis=(1, 2)) & (np.abs(cand) < 2**40).all(axis=(1, 2))
            cand = np.where(finite[:, None, None], cand, 0).astype(np.int64)
            if max_abs(h) * max_abs(cand) * k < LIMIT:
                eye = np.eye(k, dtype=np.int64)
                good = finite & np.all(np.matmul(h[nz], cand) == det[nz][:, None, None] * eye, axis=(1, 2))
                x[nz] = cand
                ok = np.zeros(b, dtype=bool)
                ok[np.flatnonzero(nz)[good]] = True
                out = (x, ok)
    if out is not None:
        x, ok = out
        if ok.all():
            return x
        rest = _cofactor_adjugate(h[~ok])
        if rest.dtype == object:
            x = x.astype(object)
        x[~ok] = rest
        return x
    return _cofactor_adjugate(h)


def _cofactor_adjugate(h: np.ndarray) -> np.ndarray:
    b, k, _ = h.shape
    if k == 1:
        return np.ones((b, 1, 1), dtype=h.dtype)
    minors = np.empty((b, k, k, k - 1, k - 1), dtype=h.dtype)
    for i, j in iproduct(range(k), range(k)):
        rows = [r for r in range(k) if r != i]
        cols = [c for c in range(k) if c != j]
        minors[:, i, j] = h[:, rows][:, :, cols]
    dets = batch_det(minors.reshape(b * k * k, k - 1, k - 1)).reshape(b, k, k)
    signs = np.array([[(-1) ** (i + j) for j in range(k)] for i in range(k)], dtype=np.int64)
    cof = dets * signs
    return np.swapaxes(cof, 1, 2)


def homogeneous(points: np.ndarray) -> np.ndarray:
    """Append a column of ones."""
    return np.concatenate([points, np.ones(points.shape[:-1] + (1,), dtype=points.dtype)], axis=-1)


def as_rows(points: Sequence[Sequence[int]]) -> np.ndarray:
    return int_array([list(p) for p in points])
