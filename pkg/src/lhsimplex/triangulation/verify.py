"""Verifiers for triangulations: validity, unimodularity, flagness, regularity.

All predicates are exact. Barycentric coordinates are handled as integer
vectors scaled by the simplex determinant: for H = [[v_i, 1]] and a point p,
(p, 1) adj(H) = det(H) * lambda(p).

Validity has two certificates:

* ``pairwise``: every pair of simplices with overlapping bounding boxes is
  separated by a hyperplane meeting both exactly in the convex hull of their
  shared vertices (a facet of one of them, else a functional found by the
  exact LP).
* ``ridge`` (default): every simplex lies in P and is full-dimensional, every
  ridge lies in exactly two simplices on opposite sides or in one simplex and
  a facet of P, and a generic interior point of the first simplex is covered
  exactly once. Then the covering multiplicity is 1 almost everywhere, and
  around any point y the simplices containing the minimal face of y already
  cover a neighbourhood, which forces face-to-face intersections. This is
  linear in the number of simplices.

When the ridge certificate fails, the pairwise search runs to name a pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

import networkx as nx
import numpy as np

from ..errors import DomainError
from ..exact_core import linear_feasible
from ..intarray import LIMIT, batch_adjugate, batch_det, homogeneous, int_array, max_abs, widen
from .model import LatticeTriangulation


CHUNK = 100_000
# above this many simplices adjugates are recomputed per chunk instead of cached
ADJ_CACHE_LIMIT = 250_000


class _Geometry:
    """Integer arrays for one triangulation, computed lazily and in chunks."""

    def __init__(self, points, simplices):
        if not simplices:
            raise DomainError("triangulation has no simplices")
        self.d = len(points[0]) if points else 0
        self.pts = int_array([list(p) for p in points], bound_factor=4 * (self.d + 2) ** 2)
        self.simp = np.array(simplices, dtype=np.int64).reshape(len(simplices), self.d + 1)
        self.hom = homogeneous(self.pts)
        T = len(self.simp)
        dets = [batch_det(self.H(slice(a, min(T, a + CHUNK)))) for a in range(0, T, CHUNK)]
        self.det = np.concatenate(dets) if len(dets) > 1 else dets[0]
        self.sign = np.sign(self.det).astype(np.int64)
        self._adj = None
        self._ridges = None

    def H(self, which) -> np.ndarray:
        return self.hom[self.simp[which]]

    def adj_for(self, which) -> np.ndarray:
        if self._adj is None and len(self.simp) <= ADJ_CACHE_LIMIT:
            self._adj = batch_adjugate(self.H(slice(None)), self.det)
        if self._adj is not None:
            return self._adj[which]
        return batch_adjugate(self.H(which), self.det[which])

    def scaled_bary(self, rows: np.ndarray, which=slice(None)) -> np.ndarray:
        """sign(det) * (p,1) adj(H_S) = |det| * barycentrics, per selected S and row p."""
        adj = self.adj_for(which)
        sgn = self.sign[which]
        if rows.dtype == object or adj.dtype == object or max_abs(rows) * max_abs(adj) * (self.d + 1) >= LIMIT:
            rows, adj = widen(rows), widen(adj)
        return np.matmul(rows[None, :, :], adj) * sgn[:, None, None]

    @property
    def ridges(self) -> "_Ridges":
        if self._ridges is None:
            self._ridges = _Ridges(self)
        return self._ridges


class _Ridges:
    """Ridges (simplex minus one vertex) grouped by vertex set.

    Entry e stands for simplex ``owner[e]`` without its vertex at ``pos[e]``.
    ``first[r]`` / ``second[r]`` index the entries of unique ridge r (second
    is -1 for boundary ridges); ``counts[r]`` is the multiplicity.
    """

    def __init__(self, g: _Geometry):
        d, T = g.d, len(g.simp)
        npts = max(2, len(g.pts))
        bits = int(npts - 1).bit_length()
        per = max(1, 62 // bits)
        words = -(-d // per) if d else 1
        keys = np.zeros((T * (d + 1), words), dtype=np.int64)
        for j in range(d + 1):
            R = np.delete(g.simp, j, axis=1)
            for w in range(words):
                acc = np.zeros(T, dtype=np.int64)
                for c in range(w * per, min(d, (w + 1) * per)):
                    acc = (acc << bits) | R[:, c]
                keys[j * T:(j + 1) * T, w] = acc
        self.owner = np.tile(np.arange(T, dtype=np.int64), d + 1)
        self.pos = np.repeat(np.arange(d + 1, dtype=np.int64), T)
        order = np.lexsort(keys.T[::-1])
        ks = keys[order]
        new = np.ones(len(ks), dtype=bool)
        new[1:] = np.any(ks[1:] != ks[:-1], axis=1)
        del ks, keys
        starts = np.flatnonzero(new)
        self.counts = np.diff(np.append(starts, len(order)))
        self.first = order[starts]
        second = np.full(len(starts), -1, dtype=np.int64)
        many = self.counts >= 2
        second[many] = order[starts[many] + 1]
        self.second = second
        self.d = d

    def vertices(self, g: _Geometry, entries: np.ndarray) -> np.ndarray:
        S = g.simp[self.owner[entries]]
        keep = np.arange(self.d + 1)[None, :] != self.pos[entries][:, None]
        return S[keep].reshape(len(entries), self.d)

    def orientation(self, g: _Geometry, entries: np.ndarray) -> np.ndarray:
        """Side of the ridge hyperplane on which the owner lies (+1 / -1)."""
        return g.sign[self.owner[entries]] * (-1) ** (self.d - self.pos[entries])

    def interior_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        m = self.counts == 2
        return self.first[m], self.second[m]


@lru_cache(maxsize=8)
def _cached_geometry(points, simplices) -> _Geometry:
    return _Geometry(points, simplices)


def geometry(t: LatticeTriangulation) -> _Geometry:
    """Shared arrays for t; repeated checks with new heights reuse them."""
    return _cached_geometry(t.points, t.simplices)


# --- validity ---------------------------------------------------------------

@dataclass
class TriangulationReport:
    valid: bool
    method: str
    contained: bool
    full_dimensional: bool
    volume: int
    expected_volume: int | None
    volume_ok: bool | None
    ridges_ok: bool | None = None
    multiplicity: int | None = None
    pairwise_ok: bool | None = None
    failing_pair: tuple[int, int] | None = None
    failing_simplex: int | None = None
    messages: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def _expected_volume(t: LatticeTriangulation) -> int | None:
    if t.s is not None:
        return prod(t.s)
    poly = t.polytope
    if poly is not None and poly.vertices is not None and len(poly.vertices) == poly.dim + 1:
        h = homogeneous(int_array([list(v) for v in poly.vertices]))
        return abs(int(batch_det(h[None])[0]))
    return None


def _facet_arrays(t: LatticeTriangulation):
    poly = t.ambient()
    if poly.dim != t.dim:
        raise DomainError("ambient polytope dimension differs from the point dimension")
    A = int_array([list(a) for a, _ in poly.inequalities])
    b = int_array([b for _, b in poly.inequalities])
    return A, b


def _point_facet_values(g: _Geometry, A: np.ndarray, b: np.ndarray) -> np.ndarray:
    P, A2 = g.pts, A
    if P.dtype == object or A.dtype == object or max_abs(P) * max_abs(A) * g.d + max_abs(b) >= LIMIT:
        P, A2 = widen(P), widen(A)
    return P @ A2.T - b[None, :]


def _ridge_check(g: _Geometry, on_facet: np.ndarray) -> tuple[bool, str | None]:
    if g.d == 0:
        ok = len(g.simp) == 1
        return ok, None if ok else "zero-dimensional pool with several simplices"
    rd = g.ridges
    if (rd.counts > 2).any():
        r = rd.vertices(g, rd.first[[int(np.argmax(rd.counts > 2))]])[0]
        return False, f"ridge {tuple(int(x) for x in r)} lies in more than two simplices"
    a, b = rd.interior_pairs()
    if len(a):
        same = rd.orientation(g, a) == rd.orientation(g, b)
        if same.any():
            k = int(np.argmax(same))
            return False, (
                f"simplices {int(rd.owner[a[k]])} and {int(rd.owner[b[k]])} lie on the same side of their common ridge"
            )
    single = rd.first[rd.counts == 1]
    if len(single):
        rs = rd.vertices(g, single)
        ok = np.ones(len(rs), dtype=bool)
        for start in range(0, len(rs), CHUNK):
            sl = slice(start, start + CHUNK)
            ok[sl] = on_facet[rs[sl]].all(axis=1).any(axis=1)
        if not ok.all():
            r = rs[int(np.argmin(ok))]
            return False, f"ridge {tuple(int(x) for x in r)} lies in one simplex but not on the boundary"
    return True, None


def _multiplicity(g: _Geometry) -> int | None:
    """Number of simplices containing a generic interior point of simplex 0."""
    d = g.d
    T = len(g.simp)
    verts = widen(g.hom[g.simp[0]])
    weight_sets = [list(range(1, d + 2))]
    for base in (3, 5, 7, 11, 13, 17, 19, 23):
        weight_sets.append([base**i for i in range(d + 1)])
    for w in weight_sets:
        y = (np.array(w, dtype=object) @ verts)[None, :]  # (sum w_i v_i, sum w_i)
        if max_abs(y) < 2**40:
            y = y.astype(np.int64)
        inside = boundary = 0
        for start in range(0, T, CHUNK):
            lam = g.scaled_bary(y, slice(start, min(T, start + CHUNK)))[:, 0, :]
            ins = np.all(lam > 0, axis=1)
            inside += int(ins.sum())
            boundary += int((np.all(lam >= 0, axis=1) & ~ins).sum())
        if not boundary:
            return inside
    return None


def _candidate_pairs(g: _Geometry) -> np.ndarray:
    P = g.pts[g.simp]
    lo = P.min(axis=1)
    hi = P.max(axis=1)
    T = len(g.simp)
    out = []
    step = max(1, 4_000_000 // max(1, T * g.d))
    for start in range(0, T, step):
        stop = min(T, start + step)
        ov = np.all((lo[start:stop, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[start:stop, None, :]), axis=2)
        i, j = np.nonzero(ov)
        i = i + start
        keep = i < j
        out.append(np.stack([i[keep], j[keep]], axis=1))
    return np.concatenate(out) if out else np.zeros((0, 2), dtype=np.int64)


def _facet_separated(g: _Geometry, pairs: np.ndarray, first: int) -> np.ndarray:
    """For each pair, is some facet hyperplane of simplex ``pairs[:, first]`` a witness."""
    a = pairs[:, first]
    b = pairs[:, 1 - first]
    rows = g.H(b)  # (m, d+1, d+1)
    adj = g.adj_for(a)
    if rows.dtype == object or adj.dtype == object or max_abs(rows) * max_abs(adj) * (g.d + 1) >= LIMIT:
        rows, adj = widen(rows), widen(adj)
    lam = np.einsum("mwj,mji->mwi", rows, adj) * g.sign[a][:, None, None]
    shared = (g.simp[b][:, :, None] == g.simp[a][:, None, :]).any(axis=2)  # (m, w)
    nonpos = np.all(lam <= 0, axis=1)  # (m, facet)
    zero_ok = np.all((lam == 0) == shared[:, :, None], axis=1)
    return np.any(nonpos & zero_ok, axis=1)


def _lp_separated(t: LatticeTriangulation, i: int, j: int) -> bool:
    S1, S2 = set(t.simplices[i]), set(t.simplices[j])
    shared = S1 & S2
    d = t.dim
    cons = []
    for v in sorted(S1 | S2):
        p = list(t.points[v]) + [-1]
        if v in shared:
            cons.append((p, "==", 0))
        elif v in S1:
            cons.append((p, "<=", -1))
        else:
            cons.append((p, ">=", 1))
    return linear_feasible(cons) is not None


def pairwise_check(t: LatticeTriangulation, g: _Geometry | None = None) -> tuple[int, int] | None:
    """First pair (i, j) whose intersection is not the hull of shared vertices, else None."""
    g = g or geometry(t)
    pairs = _candidate_pairs(g)
    if len(pairs) == 0:
        return None
    ok = _facet_separated(g, pairs, 0) | _facet_separated(g, pairs, 1)
    for i, j in pairs[~ok]:
        if not _lp_separated(t, int(i), int(j)):
            return (int(i), int(j))
    return None


def verify_triangulation(t: LatticeTriangulation, method: str = "ridge") -> TriangulationReport:
    if method not in ("ridge", "pairwise"):
        raise DomainError(f"unknown method {method!r}")
    g = geometry(t)
    A, b = _facet_arrays(t)
    vals = _point_facet_values(g, A, b)
    point_inside = np.all(vals <= 0, axis=1)
    simplex_inside = point_inside[g.simp].all(axis=1)
    contained = bool(simplex_inside.all())
    full = bool((g.det != 0).all())
    vol = int(np.abs(widen(g.det)).sum())
    expected = _expected_volume(t)
    vol_ok = None if expected is None else vol == expected
    rep = TriangulationReport(False, method, contained, full, vol, expected, vol_ok)
    if not contained:
        rep.failing_simplex = int(np.argmin(simplex_inside))
        rep.messages.append(f"simplex {rep.failing_simplex} is not contained in the polytope")
    if not full:
        rep.failing_simplex = int(np.argmin(g.det != 0))
        rep.messages.append(f"simplex {rep.failing_simplex} is degenerate")
    if vol_ok is False:
        rep.messages.append(f"normalized volumes sum to {vol}, polytope has {expected}")
    if not (contained and full):
        return rep
    on_facet = vals == 0
    if method == "ridge":
        rep.ridges_ok, msg = _ridge_check(g, on_facet)
        if msg:
            rep.messages.append(msg)
        if rep.ridges_ok:
            rep.multiplicity = _multiplicity(g)
            if rep.multiplicity != 1:
                rep.messages.append(f"covering multiplicity {rep.multiplicity}")
        rep.valid = bool(rep.ridges_ok and rep.multiplicity == 1 and vol_ok is not False)
        if rep.valid:
            return rep
        rep.failing_pair = pairwise_check(t, g)
        rep.pairwise_ok = rep.failing_pair is None
    else:
        rep.failing_pair = pairwise_check(t, g)
        rep.pairwise_ok = rep.failing_pair is None
        if vol_ok is None:
            # without a known volume, coverage comes from the boundary ridge condition
            rep.ridges_ok, msg = _ridge_check(g, on_facet)
            if msg:
                rep.messages.append(msg)
            rep.valid = bool(rep.pairwise_ok and rep.ridges_ok)
        else:
            rep.valid = bool(rep.pairwise_ok and vol_ok)
    if rep.failing_pair is not None:
        i, j = rep.failing_pair
        rep.messages.append(f"simplices {i} and {j} do not intersect in a common face")
    return rep


# --- unimodular / flag -------------------------------------------------------

def nvols(t: LatticeTriangulation) -> list[int]:
    return [abs(int(x)) for x in geometry(t).det]


def verify_unimodular(t: LatticeTriangulation) -> bool:
    return all(v == 1 for v in nvols(t))


def one_skeleton(t: LatticeTriangulation) -> nx.Graph:
    simp = np.array(t.simplices, dtype=np.int64)
    k = simp.shape[1]
    pairs = [simp[:, [a, b]] for a in range(k) for b in range(a + 1, k)]
    edges = np.unique(np.concatenate(pairs), axis=0) if pairs else np.zeros((0, 2), dtype=np.int64)
    g = nx.Graph()
    g.add_nodes_from(sorted({int(i) for i in simp.ravel()}))
    g.add_edges_from(map(tuple, edges.tolist()))
    return g


def non_face_cliques(t: LatticeTriangulation, limit: int | None = 1) -> list[tuple[int, ...]]:
    """Maximal cliques of the 1-skeleton (size >= 3) that are not faces."""
    by_vertex: dict[int, list[frozenset]] = {}
    faces = [frozenset(S) for S in t.simplices]
    for f in faces:
        for v in f:
            by_vertex.setdefault(v, []).append(f)
    bad = []
    for clique in nx.find_cliques(one_skeleton(t)):
        if len(clique) < 3:
            continue
        c = frozenset(clique)
        if not any(c <= f for f in by_vertex[min(c)]):
            bad.append(tuple(sorted(c)))
            if limit is not None and len(bad) >= limit:
                break
    return sorted(bad)


def verify_flag(t: LatticeTriangulation) -> bool:
    """Every clique of the 1-skeleton is a face (minimal non-faces are edges)."""
    return not non_face_cliques(t)


# --- regularity ----------------------------------------------------------------

def _integer_heights(heights) -> list[int]:
    if all(isinstance(h, int) or Fraction(h).denominator == 1 for h in heights):
        return [int(h) for h in heights]
    den = lcm(*(Fraction(h).denominator for h in heights))
    return [int(Fraction(h) * den) for h in heights]


def _fold_lambdas(g: _Geometry, ka: np.ndarray, q: np.ndarray) -> np.ndarray:
    """sign(det) (q,1) adj(H_ka) per pair, i.e. |det| times the barycentrics of q."""
    rows = g.hom[q][:, None, :]
    adj = g.adj_for(ka)
    if rows.dtype == object or adj.dtype == object or max_abs(rows) * max_abs(adj) * (g.d + 1) >= LIMIT:
        rows, adj = widen(rows), widen(adj)
    return np.matmul(rows, adj)[:, 0, :] * g.sign[ka][:, None]


def _fold_pairs(g: _Geometry) -> tuple[np.ndarray, np.ndarray]:
    """(simplex, opposite vertex of its neighbour) for every interior ridge."""
    rd = g.ridges
    a, b = rd.interior_pairs()
    return rd.owner[a], g.simp[rd.owner[b], rd.pos[b]]


def _lift_gaps(g: _Geometry, W: np.ndarray, ka: np.ndarray, q: np.ndarray) -> np.ndarray:
    """|det_S| (alpha_S(q) - w(q)) for simplices ka and points q (negative = strictly above)."""
    lam = _fold_lambdas(g, ka, q)
    Ws = W[g.simp[ka]]
    absdet = np.abs(g.det[ka])
    if lam.dtype == object or W.dtype == object or max_abs(lam) * max_abs(W) * (g.d + 2) + max_abs(absdet) * max_abs(W) >= LIMIT:
        lam, Ws, absdet, Wq = widen(lam), widen(Ws), widen(absdet), widen(W)[q]
    else:
        Wq = W[q]
    return (lam * Ws).sum(axis=1) - absdet * Wq


def _containing_simplex(g: _Geometry, p: int) -> int | None:
    T = len(g.simp)
    for start in range(0, T, CHUNK):
        lam = g.scaled_bary(g.hom[[p]], slice(start, min(T, start + CHUNK)))[:, 0, :]
        hit = np.flatnonzero(np.all(lam >= 0, axis=1))
        if len(hit):
            return start + int(hit[0])
    return None


def _heights_array(t: LatticeTriangulation, heights) -> np.ndarray:
    heights = t.heights if heights is None else heights
    if heights is None:
        raise DomainError("regularity check needs heights")
    if len(heights) != len(t.points):
        raise DomainError("heights must align with points")
    return int_array(_integer_heights(heights))


def _global_violation(t: LatticeTriangulation, W: np.ndarray, chunk: int) -> tuple[int, int] | None:
    g = geometry(t)
    T = len(g.simp)
    npts = len(t.points)
    for start in range(0, T, chunk):
        sl = slice(start, min(T, start + chunk))
        lam = g.scaled_bary(g.hom, sl)  # (c, pool, d+1), = |det| * lambda
        Ws = W[g.simp[sl]]
        absdet = np.abs(g.det[sl])
        bound = max_abs(lam) * max_abs(W) * (g.d + 2) + max_abs(absdet) * max_abs(W)
        if bound >= LIMIT or lam.dtype == object or W.dtype == object:
            lam, Ws, absdet, Wp = widen(lam), widen(Ws), widen(absdet), widen(W)
        else:
            Wp = W
        # |det| * (alpha_S(p) - w(p))
        val = np.matmul(lam, Ws[:, :, None])[:, :, 0] - absdet[:, None] * Wp[None, :]
        member = np.zeros((sl.stop - sl.start, npts), dtype=bool)
        np.put_along_axis(member, g.simp[sl], True, axis=1)
        bad = (val >= 0) & ~member
        if bad.any():
            s, p = np.argwhere(bad)[0]
            return (int(s) + start, int(p))
    return None


def _local_violation(t: LatticeTriangulation, W: np.ndarray) -> tuple[int, int] | None:
    g = geometry(t)
    ka, q = _fold_pairs(g)
    for start in range(0, len(ka), CHUNK):
        sl = slice(start, start + CHUNK)
        bad = np.flatnonzero(_lift_gaps(g, W, ka[sl], q[sl]) >= 0)
        if len(bad):
            return (int(ka[sl][bad[0]]), int(q[sl][bad[0]]))
    used = np.zeros(len(t.points), dtype=bool)
    used[g.simp.ravel()] = True
    for p in np.flatnonzero(~used):
        k = _containing_simplex(g, int(p))
        if k is not None and _lift_gaps(g, W, np.array([k]), np.array([p]))[0] >= 0:
            return (k, int(p))
    return None


def regularity_violation(
    t: LatticeTriangulation, heights=None, method: str = "auto", chunk: int = 512
) -> tuple[int, int] | None:
    """First (simplex, point) with alpha_S(p) >= height(p) for p not in S, else None.

    ``global`` compares every simplex with every pool point. ``local`` checks
    the fold across each interior ridge (plus pool points that are not
    vertices); for a valid triangulation the two agree, since a piecewise
    affine function that bends strictly upward across every interior ridge of
    a convex domain is strictly convex. ``auto`` picks ``global`` for small inputs.
    """
    W = _heights_array(t, heights)
    if method == "auto":
        method = "global" if len(t.simplices) * len(t.points) <= 20_000_000 else "local"
    if method == "global":
        return _global_violation(t, W, chunk)
    if method == "local":
        return _local_violation(t, W)
    raise DomainError(f"unknown method {method!r}")


def verify_regular(t: LatticeTriangulation, heights=None, method: str = "auto") -> bool:
    """alpha_S(p) < height(p) for every maximal simplex S and pool point p not in S."""
    return regularity_violation(t, heights, method) is None


def find_heights(t: LatticeTriangulation) -> tuple[Fraction, ...] | None:
    """Heights certifying regularity via the exact LP, or None if none exist.

    The constraints are the strict folds across interior ridges, which for a
    valid triangulation are equivalent to the global condition. The first
    simplex is pinned to height 0; points that are not vertices of any simplex
    are placed above every affine extension afterwards.
    """
    g = geometry(t)
    used = sorted({i for S in t.simplices for i in S})
    pinned = set(t.simplices[0])
    var = {p: k for k, p in enumerate(v for v in used if v not in pinned)}
    nv = len(var)
    ka, q = _fold_pairs(g)
    lam = _fold_lambdas(g, ka, q) if len(ka) else np.zeros((0, g.d + 1), dtype=np.int64)
    cons = []
    for r in range(len(ka)):
        k, qq = int(ka[r]), int(q[r])
        row = [Fraction(0)] * nv
        # |det| * (w(q) - alpha_k(q)) > 0
        if qq in var:
            row[var[qq]] += abs(int(g.det[k]))
        for i, v in enumerate(t.simplices[k]):
            if v in var:
                row[var[v]] -= int(lam[r, i])
        cons.append((row, ">", 0))
    sol = linear_feasible(cons) if cons else [Fraction(0)] * nv
    if sol is None:
        return None
    heights: list[Fraction] = [Fraction(0)] * len(t.points)
    for p, k in var.items():
        heights[p] = sol[k]
    used_set = set(used)
    unused = [p for p in range(len(t.points)) if p not in used_set]
    if unused:
        lam_u = g.scaled_bary(g.hom[unused])  # (T, u, d+1)
        for col, p in enumerate(unused):
            best = None
            for k, S in enumerate(t.simplices):
                a = sum(Fraction(int(lam_u[k, col, i])) * heights[v] for i, v in enumerate(S)) / abs(int(g.det[k]))
                best = a if best is None or a > best else best
            heights[p] = best + 1
    out = tuple(heights)
    if not verify_regular(t, out, method="global"):
        raise AssertionError("LP witness failed re-verification")
    return out
