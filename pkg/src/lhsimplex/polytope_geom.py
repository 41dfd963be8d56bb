"""Exact lattice-polytope geometry at desk scale.

Polytopes are H-descriptions ``normal . x <= rhs`` with primitive integer
normals. Lecture hall simplices also carry their vertex list, which the
one-point extension uses to find ridges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Sequence

import numpy as np

from .errors import CapExceededError, DomainError
from .exact_core import as_rat, det_int
from .lecture_hall import DEFAULT_CAP, validate_s

Point = tuple[int, ...]


@dataclass(frozen=True)
class HPolytope:
    dim: int
    inequalities: tuple[tuple[Point, int], ...]
    vertices: tuple[Point, ...] | None = None
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def facet(self, fid: int) -> tuple[Point, int]:
        if not 0 <= fid < len(self.inequalities):
            raise DomainError(f"unknown facet id {fid}")
        return self.inequalities[fid]

    def translate(self, v: Sequence[int]) -> "HPolytope":
        ineq = tuple((a, b + sum(x * y for x, y in zip(a, v))) for a, b in self.inequalities)
        verts = None
        if self.vertices is not None:
            verts = tuple(tuple(x + y for x, y in zip(p, v)) for p in self.vertices)
        return HPolytope(self.dim, ineq, verts, self.labels)


def primitive(normal: Sequence[int], rhs: int | None = None):
    g = 0
    for x in normal:
        g = gcd(g, int(x))
    if rhs is not None and g and rhs % g:
        raise ValueError("rhs not divisible by normal content")
    if g == 0:
        raise DomainError("zero normal")
    out = tuple(int(x) // g for x in normal)
    return out if rhs is None else (out, int(rhs) // g)


def lh_vertices(s: Sequence[int]) -> list[Point]:
    """0, (0,..,0,s_n), (0,..,s_{n-1},s_n), ..., (s_1,..,s_n)."""
    s = validate_s(s)
    n = len(s)
    return [tuple(0 if i < n - k else s[i] for i in range(n)) for k in range(n + 1)]


def lh_facets(s: Sequence[int]) -> HPolytope:
    """The n+1 facets of P_n^s: -x_1 <= 0, s_{i+1}x_i - s_i x_{i+1} <= 0, x_n <= s_n."""
    s = validate_s(s)
    n = len(s)
    ineq = []
    labels = []
    e = [0] * n
    e[0] = -1
    ineq.append((tuple(e), 0))
    labels.append("x_1 >= 0")
    for i in range(n - 1):
        a = [0] * n
        a[i], a[i + 1] = s[i + 1], -s[i]
        ineq.append(primitive(a, 0))
        labels.append(f"x_{i + 1}/s_{i + 1} <= x_{i + 2}/s_{i + 2}")
    e = [0] * n
    e[-1] = 1
    ineq.append((tuple(e), s[-1]))
    labels.append(f"x_{n} <= s_{n}")
    return HPolytope(n, tuple(ineq), tuple(lh_vertices(s)), tuple(labels))


def simplex_polytope(vertices: Sequence[Sequence[int]]) -> HPolytope:
    """H-description of a full-dimensional lattice simplex."""
    verts = [tuple(int(x) for x in v) for v in vertices]
    d = len(verts[0])
    if len(verts) != d + 1 or nvol_points(verts) == 0:
        raise DomainError("need d+1 affinely independent points")
    ineq = []
    for i in range(d + 1):
        face = [v for j, v in enumerate(verts) if j != i]
        a = hyperplane_normal(face)
        b = sum(x * y for x, y in zip(a, face[0]))
        if sum(x * y for x, y in zip(a, verts[i])) > b:
            a, b = tuple(-x for x in a), -b
        ineq.append((a, b))
    return HPolytope(d, tuple(ineq), tuple(verts))


def hyperplane_normal(points: Sequence[Sequence[int]]) -> Point:
    """Primitive integer normal of the hyperplane through d affinely independent points."""
    p0 = points[0]
    rows = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    basis = integer_nullspace(rows, len(p0))
    if len(basis) != 1:
        raise DomainError("points do not span a hyperplane")
    return basis[0]


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[Point]:
    """Primitive integer basis of {y : rows . y = 0} via exact RREF."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append(primitive([int(x * den) for x in v]))
    return out


def contains(p: HPolytope, x: Sequence) -> bool:
    if len(x) != p.dim:
        raise DomainError(f"point has dimension {len(x)}, polytope has {p.dim}")
    xs = [as_rat(v) for v in x]
    return all(sum(a * v for a, v in zip(n, xs)) <= b for n, b in p.inequalities)


def visible_facets(p: HPolytope, x: Sequence[int]) -> list[int]:
    """Facets whose inequality x violates strictly."""
    if contains(p, x):
        raise DomainError("x lies inside the polytope")
    return [i for i, (n, b) in enumerate(p.inequalities) if sum(a * v for a, v in zip(n, x)) > b]


def vertex_list(p: HPolytope) -> tuple[Point, ...]:
    """Vertices, taken from metadata or found by intersecting d facets at a time."""
    if p.vertices is not None:
        return p.vertices
    d = p.dim
    ineq = p.inequalities
    if len(ineq) > 40:
        raise CapExceededError(len(ineq), 40, "facets for vertex enumeration")
    from .exact_core import solve_linear

    found = set()
    for combo in combinations(range(len(ineq)), d):
        sol = solve_linear([ineq[i][0] for i in combo], [ineq[i][1] for i in combo])
        if sol is None:
            continue
        if contains(p, sol):
            if any(v.denominator != 1 for v in sol):
                raise DomainError("polytope is not a lattice polytope")
            found.add(tuple(int(v) for v in sol))
    return tuple(sorted(found))


def lattice_points(p: HPolytope, cap: int = DEFAULT_CAP, chunk: int = 1 << 20) -> list[Point]:
    """All integer points of a bounded polytope, sorted lexicographically."""
    verts = vertex_list(p)
    if not verts:
        raise DomainError("empty or unbounded polytope")
    lo = [min(v[i] for v in verts) for i in range(p.dim)]
    hi = [max(v[i] for v in verts) for i in range(p.dim)]
    shape = tuple(h - l + 1 for l, h in zip(lo, hi))
    size = prod(shape)
    if size > cap:
        raise CapExceededError(size, cap, "bounding box")
    normals = np.array([a for a, _ in p.inequalities], dtype=object)
    rhs = np.array([b for _, b in p.inequalities], dtype=object)
    big = max(1, max(abs(int(x)) for x in normals.ravel())) * max(1, *map(abs, lo), *map(abs, hi)) * p.dim
    dt = np.int64 if big < 2**62 and max(abs(b) for b in rhs) < 2**62 else object
    normals = normals.astype(dt)
    rhs = rhs.astype(dt)
    lo_arr = np.array(lo, dtype=dt)
    out = []
    for start in range(0, size, chunk):
        flat = np.arange(start, min(size, start + chunk), dtype=np.int64)
        pts = np.stack(np.unravel_index(flat, shape), axis=1).astype(dt) + lo_arr
        ok = np.all(pts @ normals.T <= rhs, axis=1)
        out.extend(tuple(int(x) for x in row) for row in pts[ok])
    return out


def nvol_points(points: Sequence[Sequence[int]]) -> int:
    """Normalized volume of a lattice simplex given by its vertices.

    Full-dimensional: |det| of the edge matrix. Lower-dimensional: gcd of the
    maximal minors, the volume relative to the lattice of the affine span.
    Returns 0 for affinely dependent points.
    """
    p0 = points[0]
    edges = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    k = len(edges)
    if k == 0:
        return 1
    d = len(p0)
    if k == d:
        return abs(det_int(edges))
    g = 0
    for cols in combinations(range(d), k):
        g = gcd(g, det_int([[row[c] for c in cols] for row in edges]))
    return g


def nvol(points: Sequence[Sequence[int]]) -> int:
    v = nvol_points(points)
    if v == 0:
        raise DomainError("degenerate simplex")
    return v


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    rows = [[Fraction(x - y) for x, y in zip(p, p0)] for p in points[1:]]
    rank = 0
    ncols = len(p0)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _on(ineq, v) -> bool:
    a, b = ineq
    return sum(x * y for x, y in zip(a, v)) == b


def extend_hull(p: HPolytope, x: Sequence[int]) -> HPolytope:
    """conv(P ∪ {x}) for a point x outside P."""
    x = tuple(int(v) for v in x)
    vis = set(visible_facets(p, x))
    verts = vertex_list(p)
    d = p.dim
    kept = [f for i, f in enumerate(p.inequalities) if i not in vis]
    new = []
    on_sets = [frozenset(v for v in verts if _on(f, v)) for f in p.inequalities]
    for i in vis:
        for j, g in enumerate(p.inequalities):
            if j in vis:
                continue
            ridge = sorted(on_sets[i] & on_sets[j])
            if affine_rank(ridge) != d - 2:
                continue
            if d == 1:
                a = (1,)
            else:
                a = integer_nullspace([[u - w for u, w in zip(v, x)] for v in ridge], d)
                if len(a) != 1:
                    continue
                a = a[0]
            b = sum(u * w for u, w in zip(a, x))
            # orient so the old polytope lies on the <= side
            side = [sum(u * w for u, w in zip(a, v)) - b for v in verts]
            if any(t > 0 for t in side):
                if any(t < 0 for t in side):
                    continue
                a, b = tuple(-u for u in a), -b
            new.append((a, b))
    ineq = []
    for f in kept + new:
        if f not in ineq:
            ineq.append(f)
    # a point is a vertex iff the normals of its tight facets span R^d
    new_verts = set()
    for v in set(verts) | {x}:
        tight = [a for a, b in ineq if _on((a, b), v)]
        if affine_rank([(0,) * d] + tight) == d:
            new_verts.add(v)
    return HPolytope(d, tuple(ineq), tuple(sorted(new_verts)))
