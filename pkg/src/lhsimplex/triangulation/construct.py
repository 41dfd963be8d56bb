"""Constructions of flag, regular, unimodular triangulations of lecture hall simplices.

A sequence is built one entry at a time from the segment [0, s_1]:

* ``pyramid``: append 1 (cone from the origin over the previous simplex at x_n = 1);
* ``chimney(k)``: append k * s_last (stack the chimney over the previous simplex);
* ``plus_one``: turn a last entry k * s_prev into k * s_prev + 1 (translate by
  e_n, then cone the origin over the visible facet);
* ``reverse``: the lattice isomorphism x -> reverse(s - x).

Every step carries a height vector; regularity is re-checked after each step.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from ..errors import DomainError, NotCoverableError
from ..lecture_hall import validate_s
from ..polytope_geom import HPolytope, extend_hull, visible_facets
from .model import LatticeTriangulation, canonical, make_triangulation
from .verify import find_heights, geometry, regularity_violation, verify_regular, verify_unimodular

# --- steps --------------------------------------------------------------------


def base_triangulation(s1: int) -> LatticeTriangulation:
    """[0, s1] cut into unit segments; heights j(j-1)/2 are strictly convex."""
    if s1 < 1:
        raise DomainError("s1 must be >= 1")
    pts = [(j,) for j in range(s1 + 1)]
    simp = [(j, j + 1) for j in range(s1)]
    return make_triangulation(pts, simp, [j * (j - 1) // 2 for j in range(s1 + 1)], s=(s1,))


def _require_s(t: LatticeTriangulation) -> tuple[int, ...]:
    if t.s is None:
        raise DomainError("operation needs a lecture hall triangulation")
    return t.s


def pyramid_triangulation(t: LatticeTriangulation) -> LatticeTriangulation:
    """Triangulation of P^(s, 1): the base sits at x_n = 1, the apex is the origin."""
    s = _require_s(t)
    pts = [(0,) * (len(s) + 1)] + [tuple(p) + (1,) for p in t.points]
    simp = [(0,) + tuple(i + 1 for i in S) for S in t.simplices]
    heights = None
    if t.heights is not None:
        heights = [Fraction(0)] + list(t.heights)
    out = make_triangulation(pts, simp, heights, s=s + (1,))
    return canonical(_certify(out))


def chimney_cells(t: LatticeTriangulation, k: int) -> tuple[list, list, list]:
    """Points (base index, level), simplices and raise events of the chimney.

    Over each base simplex the vertex heights start at the lower bound
    k * x_{n-1} and are raised one unit at a time, lowest raised level first,
    ties by base index. Each raise emits the simplex between two consecutive
    sections. The order restricts to faces, so neighbouring columns agree.
    """
    s = _require_s(t)
    top = k * s[-1]
    lower = [k * p[-1] for p in t.points]
    index: dict[tuple[int, int], int] = {}
    pts: list[tuple[int, int]] = []

    def pid(g: int, j: int) -> int:
        key = (g, j)
        if key not in index:
            index[key] = len(pts)
            pts.append(key)
        return index[key]

    for g in range(len(t.points)):
        for j in range(lower[g], top + 1):
            pid(g, j)
    simp = []
    for S in t.simplices:
        events = sorted((lvl, g) for g in S for lvl in range(top - lower[g]))
        a = {g: lower[g] for g in S}
        for _, g in events:
            cell = [pid(h, a[h]) for h in S] + [pid(g, a[g] + 1)]
            simp.append(tuple(sorted(cell)))
            a[g] += 1
    return pts, simp, lower


def chimney_triangulation(t: LatticeTriangulation, k: int) -> LatticeTriangulation:
    """Unimodular triangulation of P^(s, k s_last) from one of P^s."""
    s = _require_s(t)
    if k < 1:
        raise DomainError("k must be >= 1")
    if not verify_unimodular(t):
        raise DomainError("chimney construction needs a unimodular base")
    raw, simp, lower = chimney_cells(t, k)
    pts = [tuple(t.points[g]) + (j,) for g, j in raw]
    out = make_triangulation(pts, simp, s=s + (k * s[-1],))
    if t.heights is not None:
        out = _chimney_heights(out, t, raw, lower)
    return canonical(out)


def _chimney_heights(out: LatticeTriangulation, base: LatticeTriangulation, raw, lower) -> LatticeTriangulation:
    # level L contributes a convex staircase whose marginal cost M*L + g orders the raises
    M = len(base.points) + 1
    stair = []
    for g, j in raw:
        L = j - lower[g]
        stair.append(M * L * (L - 1) // 2 + g * L)
    N = 1
    for _ in range(64):
        cand = out.with_heights([N * base.heights[g] + st for (g, _), st in zip(raw, stair)])
        if verify_regular(cand, method="local"):
            return cand
        N *= 2
    return _certify(out.with_heights(None))


def _certify(t: LatticeTriangulation) -> LatticeTriangulation:
    """Keep valid heights, else solve for new ones."""
    if t.heights is not None and verify_regular(t, method="local"):
        return t
    h = find_heights(t)
    if h is None:
        raise AssertionError("constructed triangulation is not regular")
    return t.with_heights(h)


def reverse_transport(t: LatticeTriangulation) -> LatticeTriangulation:
    """Image under x -> reverse(s - x), a triangulation of P^(reverse s)."""
    s = _require_s(t)
    pts = [tuple(s[i] - p[i] for i in reversed(range(len(s)))) for p in t.points]
    out = LatticeTriangulation(tuple(pts), t.simplices, t.heights, tuple(reversed(s)), None)
    return canonical(out)


# --- facets and one-point extensions ----------------------------------------------


def _facet_hyperplane(t: LatticeTriangulation, fid: int) -> tuple[tuple[int, ...], int]:
    return t.ambient().facet(fid)


def facet_cells(t: LatticeTriangulation, fid: int) -> list[tuple[int, ...]]:
    """Maximal cells S ∩ F: index tuples of the d vertices of S on facet ``fid``."""
    a, b = _facet_hyperplane(t, fid)
    on = [sum(x * y for x, y in zip(a, p)) == b for p in t.points]
    cells = []
    for S in t.simplices:
        c = tuple(i for i in S if on[i])
        if len(c) == t.dim:
            cells.append(c)
    return cells


def _unimodular_completion(a: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """U, U^{-1} integer with a U = e_1 for a primitive vector a."""
    d = len(a)
    v = list(a)
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    Ui = [[int(i == j) for j in range(d)] for i in range(d)]

    def colop(i, j, q):  # col_i -= q col_j
        for r in range(d):
            U[r][i] -= q * U[r][j]
        for c in range(d):
            Ui[j][c] += q * Ui[i][c]
        v[i] -= q * v[j]

    def swap(i, j):
        for r in range(d):
            U[r][i], U[r][j] = U[r][j], U[r][i]
        Ui[i], Ui[j] = Ui[j], Ui[i]
        v[i], v[j] = v[j], v[i]

    while sum(1 for x in v if x) > 1:
        nz = [i for i in range(d) if v[i]]
        p = min(nz, key=lambda i: abs(v[i]))
        for i in nz:
            if i != p:
                colop(i, p, v[i] // v[p])
    p = next(i for i in range(d) if v[i])
    if abs(v[p]) != 1:
        raise DomainError("facet normal is not primitive")
    swap(0, p)
    if v[0] == -1:
        for r in range(d):
            U[r][0] = -U[r][0]
        Ui[0] = [-x for x in Ui[0]]
        v[0] = 1
    return U, Ui


def restrict_to_facet(t: LatticeTriangulation, fid: int) -> LatticeTriangulation:
    """Induced triangulation of facet ``fid`` in lattice coordinates of its hyperplane."""
    poly = t.ambient()
    a, b = poly.facet(fid)
    d = t.dim
    if d < 1:
        raise DomainError("a point has no facets")
    _, Ui = _unimodular_completion(a)

    def coords(p):
        y = [sum(Ui[r][c] * p[c] for c in range(d)) for r in range(d)]
        return tuple(y[1:])

    cells = facet_cells(t, fid)
    used = sorted({i for c in cells for i in c})
    remap = {g: k for k, g in enumerate(used)}
    pts = [coords(t.points[g]) for g in used]
    # facet inequalities in the new coordinates: x = U y with y_1 = b
    U, _ = _unimodular_completion(a)
    ineq = []
    for fa, fb in poly.inequalities:
        row = [sum(fa[r] * U[r][c] for r in range(d)) for c in range(d)]
        rest, rhs = tuple(row[1:]), fb - row[0] * b
        if any(rest) and (rest, rhs) not in ineq:
            ineq.append((rest, rhs))
    verts = None
    if poly.vertices is not None:
        verts = tuple(sorted({coords(v) for v in poly.vertices if sum(x * y for x, y in zip(a, v)) == b}))
    facet_poly = HPolytope(d - 1, tuple(ineq), verts)
    heights = None if t.heights is None else [t.heights[g] for g in used]
    simp = [tuple(remap[g] for g in c) for c in cells]
    if d == 1:
        return LatticeTriangulation(tuple(() for _ in pts), tuple(tuple(S) for S in simp), None, None, facet_poly)
    return make_triangulation(pts, simp, heights, polytope=facet_poly)


def extension_height(t: LatticeTriangulation, x: Sequence[int], margin: Fraction = Fraction(1)) -> Fraction:
    """1 + max over maximal simplices of the affine lift interpolant evaluated at x."""
    if t.heights is None:
        raise DomainError("extension heights need a height certificate")
    g = geometry(t)
    row = np.array([list(x) + [1]], dtype=object)
    lam = g.scaled_bary(row)[:, 0, :]
    best = None
    for k, S in enumerate(t.simplices):
        a = sum(Fraction(int(lam[k, i])) * t.heights[v] for i, v in enumerate(S)) / abs(int(g.det[k]))
        best = a if best is None or a > best else best
    return best + margin


def one_point_extension(t: LatticeTriangulation, x: Sequence[int], s_new: Sequence[int] | None = None) -> LatticeTriangulation:
    """T plus the cones from x over the cells of every facet visible from x."""
    x = tuple(int(v) for v in x)
    poly = t.ambient()
    vis = visible_facets(poly, x)
    if x in set(t.points):
        raise DomainError("x is already in the point pool")
    xi = len(t.points)
    simp = list(t.simplices)
    for fid in vis:
        for c in facet_cells(t, fid):
            simp.append(tuple(sorted(c + (xi,))))
    pts = list(t.points) + [x]
    if s_new is not None:
        out = make_triangulation(pts, simp, s=tuple(s_new))
    else:
        out = make_triangulation(pts, simp, polytope=extend_hull(poly, x))
    if t.heights is None:
        return out
    return out.with_heights(extension_heights(t, x, out))


def extension_heights(t: LatticeTriangulation, x: Sequence[int], extended: LatticeTriangulation | None = None) -> tuple[Fraction, ...]:
    """Old heights plus a height for x; the margin doubles until the lift is regular."""
    if extended is None:
        extended = replace(one_point_extension(t.with_heights(None), x), heights=None)
    margin = Fraction(1)
    for _ in range(64):
        hx = extension_height(t, x, margin)
        heights = tuple(t.heights) + (hx,)
        if regularity_violation(extended, heights, method="local") is None:
            return heights
        margin *= 2
    h = find_heights(extended)
    if h is None:
        raise AssertionError("extension is not regular")
    return h


def plus_one(t: LatticeTriangulation) -> LatticeTriangulation:
    """P^(s', k s_prev) -> P^(s', k s_prev + 1): translate by e_n and cone from 0."""
    s = _require_s(t)
    n = len(s)
    if n >= 2 and s[-1] % s[-2]:
        raise DomainError("plus-one needs the last entry to be a multiple of the previous one")
    e = (0,) * (n - 1) + (1,)
    shifted = LatticeTriangulation(
        tuple(tuple(p[i] + e[i] for i in range(n)) for p in t.points),
        t.simplices,
        t.heights,
        None,
        t.ambient().translate(e),
    )
    out = one_point_extension(shifted, (0,) * n, s_new=s[:-1] + (s[-1] + 1,))
    return canonical(_certify(out))


# --- driver ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepPlan:
    s: tuple[int, ...]
    m: int
    steps: tuple[tuple, ...]

    def replay_sequence(self) -> tuple[int, ...]:
        """The sequence produced by the steps, without building anything."""
        cur: tuple[int, ...] = ()
        for step in self.steps:
            kind = step[0]
            if kind == "base":
                cur = (step[1],)
            elif kind == "pyramid":
                cur = cur + (1,)
            elif kind == "chimney":
                cur = cur + (step[1] * cur[-1],)
            elif kind == "plus_one":
                cur = cur[:-1] + (cur[-1] + 1,)
            elif kind == "reverse":
                cur = tuple(reversed(cur))
        return cur


def _ok(prev: int, nxt: int) -> bool:
    """nxt = 1, or nxt = k * prev + eps with k >= 1 and eps in {0, 1}."""
    return nxt == 1 or (nxt >= prev and nxt % prev in (0, 1))


def _grow(prev: int, nxt: int) -> list[tuple]:
    if nxt == 1:
        return [("pyramid",)]
    if nxt % prev == 0:
        return [("chimney", nxt // prev)]
    return [("chimney", (nxt - 1) // prev), ("plus_one",)]


def admissible_split(s: Sequence[int]) -> StepPlan | None:
    """Smallest split m with a decreasing-type prefix and an increasing-type suffix.

    Prefix: s_i = 1 or s_i = k s_{i+1} + eps for i < m. Suffix: s_{i+1} = 1 or
    s_{i+1} = k s_i + eps for i >= m (1-based). None when no m works.
    """
    s = validate_s(s)
    n = len(s)
    for m in range(1, n + 1):
        if not all(_ok(s[i], s[i - 1]) for i in range(1, m)):
            break
        if all(_ok(s[i - 1], s[i]) for i in range(m, n)):
            prefix = list(reversed(s[:m]))
            steps: list[tuple] = [("base", prefix[0])]
            for prev, nxt in zip(prefix, prefix[1:]):
                steps += _grow(prev, nxt)
            if m > 1:
                steps.append(("reverse",))
            for i in range(m, n):
                steps += _grow(s[i - 1], s[i])
            return StepPlan(tuple(s), m, tuple(steps))
    return None


def first_failing_index(s: Sequence[int]) -> int:
    """0-based index of the entry where the best split breaks down."""
    s = validate_s(s)
    n = len(s)
    m = 1
    while m < n and _ok(s[m], s[m - 1]):
        m += 1
    for i in range(m, n):
        if not _ok(s[i - 1], s[i]):
            return i
    return n - 1


def replay(plan: StepPlan, check=None) -> LatticeTriangulation:
    t = None
    for step in plan.steps:
        kind = step[0]
        if kind == "base":
            t = base_triangulation(step[1])
        elif kind == "pyramid":
            t = pyramid_triangulation(t)
        elif kind == "chimney":
            t = chimney_triangulation(t, step[1])
        elif kind == "plus_one":
            t = plus_one(t)
        elif kind == "reverse":
            t = reverse_transport(t)
        else:
            raise DomainError(f"unknown step {kind!r}")
        if check is not None:
            check(step, t)
    return t


def build_triangulation(s: Sequence[int]) -> LatticeTriangulation:
    """Flag, regular, unimodular triangulation of P^s with a height certificate."""
    s = validate_s(s)
    plan = admissible_split(s)
    if plan is None:
        raise NotCoverableError(s, first_failing_index(s))
    t = replay(plan)
    if t.s != tuple(s) or len(t.simplices) != prod(s):
        raise AssertionError(f"replay produced {t.s} with {len(t.simplices)} simplices")
    return t
