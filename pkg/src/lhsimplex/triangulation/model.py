"""Triangulation data type and the certificate JSON format."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ..errors import DomainError
from ..exact_core import as_rat, rat_str
from ..polytope_geom import HPolytope, Point, lh_facets


@dataclass(frozen=True)
class LatticeTriangulation:
    """Vertex pool, maximal simplices (sorted index tuples) and optional heights.

    The ambient polytope is the lecture hall simplex of ``s`` when ``s`` is set,
    otherwise ``polytope``.
    """

    points: tuple[Point, ...]
    simplices: tuple[tuple[int, ...], ...]
    heights: tuple[Fraction, ...] | None = None
    s: tuple[int, ...] | None = None
    polytope: HPolytope | None = None

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def ambient(self) -> HPolytope:
        if self.s is not None:
            return lh_facets(self.s)
        if self.polytope is None:
            raise DomainError("triangulation has no ambient polytope")
        return self.polytope

    def with_heights(self, heights) -> "LatticeTriangulation":
        if heights is not None:
            heights = tuple(as_rat(h) for h in heights)
            if len(heights) != len(self.points):
                raise DomainError("heights must align with points")
        return replace(self, heights=heights)

    def vertices_of(self, k: int) -> list[Point]:
        return [self.points[i] for i in self.simplices[k]]


def make_triangulation(points, simplices, heights=None, s=None, polytope=None) -> LatticeTriangulation:
    pts = tuple(tuple(int(x) for x in p) for p in points)
    if len({len(p) for p in pts}) > 1:
        raise DomainError("points must share one dimension")
    d = len(pts[0]) if pts else 0
    simp = []
    for S in simplices:
        S = tuple(sorted(int(i) for i in S))
        if len(S) != d + 1 or len(set(S)) != d + 1:
            raise DomainError(f"simplex {S} must have {d + 1} distinct vertices")
        if S[0] < 0 or S[-1] >= len(pts):
            raise DomainError(f"simplex {S} indexes outside the point table")
        simp.append(S)
    hts = None
    if heights is not None:
        hts = tuple(as_rat(h) for h in heights)
        if len(hts) != len(pts):
            raise DomainError("heights must align with points")
    return LatticeTriangulation(pts, tuple(simp), hts, tuple(s) if s is not None else None, polytope)


def canonical(t: LatticeTriangulation) -> LatticeTriangulation:
    """Sort the pool lexicographically, drop unused points, sort simplices."""
    used = sorted({i for S in t.simplices for i in S}, key=lambda i: t.points[i])
    remap = {old: new for new, old in enumerate(used)}
    pts = tuple(t.points[i] for i in used)
    simp = tuple(sorted(tuple(sorted(remap[i] for i in S)) for S in t.simplices))
    hts = None if t.heights is None else tuple(t.heights[i] for i in used)
    return LatticeTriangulation(pts, simp, hts, t.s, t.polytope)


def to_json_dict(t: LatticeTriangulation) -> dict:
    out: dict = {"dimension": t.dim}
    if t.s is not None:
        out["s"] = list(t.s)
    out["points"] = [[str(x) for x in p] for p in t.points]
    out["simplices"] = [list(S) for S in t.simplices]
    if t.heights is not None:
        out["heights"] = [rat_str(h) for h in t.heights]
    return out


def dumps(t: LatticeTriangulation) -> str:
    return json.dumps(to_json_dict(t), separators=(",", ":")) + "\n"


def from_json_dict(data: dict) -> LatticeTriangulation:
    try:
        points = [[int(x) for x in p] for p in data["points"]]
        simplices = data["simplices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed certificate: {exc}") from exc
    dim = int(data.get("dimension", len(points[0]) if points else 0))
    if points and any(len(p) != dim for p in points):
        raise DomainError("point dimension disagrees with 'dimension'")
    heights = data.get("heights")
    s = data.get("s")
    return make_triangulation(points, simplices, heights, s)


def load(path: str | Path) -> LatticeTriangulation:
    return from_json_dict(json.loads(Path(path).read_text()))


def save(t: LatticeTriangulation, path: str | Path) -> None:
    Path(path).write_text(dumps(t))
