"""Exact arithmetic kernels: rational polynomials, small matrices, and an
exact simplex method for linear feasibility.

Rationals are ``fractions.Fraction`` throughout; nothing here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

Rat = Fraction


class DuplicateAbscissaError(ValueError):
    pass


class NonSquareError(ValueError):
    pass


class AffineDependenceError(ValueError):
    pass


def as_rat(x) -> Fraction:
    """Coerce int, Fraction or a ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_str(x) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QPoly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of t^i. Trailing zeros are trimmed, so the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "QPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        # Horner
        x = as_rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        return QPoly([other])

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        if not isinstance(other, QPoly):
            c = as_rat(other)
            return QPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "QPoly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return QPoly([0] * k + list(self.coeffs))

    def scale_argument(self, a) -> "QPoly":
        """Return p(a*t)."""
        a = as_rat(a)
        return QPoly(c * a**i for i, c in enumerate(self.coeffs))

    def format(self, descending: bool = False, var: str = "t") -> str:
        """Human-readable form, e.g. ``1 + 4t + t^2`` or ``-119/15 t + 1``."""
        if not self.coeffs:
            return "0"
        order = range(len(self.coeffs))
        if descending:
            order = reversed(order)
        parts: list[tuple[str, str]] = []
        for i in order:
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = rat_str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag.numerator}{mono}"
                else:
                    body = f"{rat_str(mag)} {mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"QPoly([{', '.join(rat_str(c) for c in self.coeffs)}])"


def binom_poly(k: int, n: int) -> QPoly:
    """The polynomial binom(t + k, n) = (t+k)(t+k-1)...(t+k-n+1)/n! in t."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = QPoly([1])
    for j in range(n):
        p = p * QPoly([k - j, 1])
    return p * Fraction(1, factorial(n))


def falling_factorial(x: int, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1
    for j in range(k):
        out *= x - j
    return out


def interpolate(samples: Sequence[tuple]) -> QPoly:
    """Newton interpolation through ``(x, y)`` samples with distinct abscissae."""
    if not samples:
        raise ValueError("at least one sample is required")
    xs = [as_rat(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissaError("interpolation abscissae must be distinct")
    table = [as_rat(y) for _, y in samples]
    coef = [table[0]]
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        coef.append(table[0])
    p = QPoly([coef[-1]])
    for i in range(len(xs) - 2, -1, -1):
        p = p * QPoly([-xs[i], 1]) + coef[i]
    return p


def _check_square(m) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise NonSquareError(f"expected a square matrix, got a row of length {len(row)} with {n} rows")
    return n


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant. Integer input uses Bareiss elimination."""
    n = _check_square(m)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) for row in m for x in row):
        return Fraction(det_int(m))
    a = [[as_rat(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    row_r[c] -= f * row_c[c]
    return sign * result


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def solve_linear(m: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square system exactly; ``None`` if singular."""
    n = _check_square(m)
    a = [[as_rat(x) for x in row] + [as_rat(b)] for row, b in zip(m, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        row_c = a[col]
        for c in range(col, n + 1):
            row_c[c] /= p
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                row_r = a[r]
                for c in range(col, n + 1):
                    row_r[c] -= f * row_c[c]
    return [a[r][n] for r in range(n)]


def solve_affine(points: Sequence[Sequence[int]], values: Sequence) -> tuple[tuple[Fraction, ...], Fraction]:
    """Affine map ``x -> c.x + c0`` taking the given values on d+1 points.

    Returns ``(c, c0)``.
    """
    if not points:
        raise AffineDependenceError("need at least one point")
    d = len(points[0])
    if len(points) != d + 1 or len(values) != d + 1:
        raise AffineDependenceError(f"need exactly {d + 1} points in dimension {d}")
    rows = [list(p) + [1] for p in points]
    sol = solve_linear(rows, values)
    if sol is None:
        raise AffineDependenceError("points are affinely dependent")
    return tuple(sol[:d]), sol[d]


# --- linear feasibility ----------------------------------------------------

_REL = {">=": ">=", "≥": ">=", ">": ">", "<=": "<=", "≤": "<=", "<": "<", "==": "==", "=": "=="}


def _normalize(constraints) -> tuple[int, list[tuple[list[Fraction], bool, Fraction]]]:
    """Rewrite every constraint as ``a.x >= b`` or ``a.x > b``."""
    rows: list[tuple[list[Fraction], bool, Fraction]] = []
    nvars = None
    for coeffs, rel, rhs in constraints:
        a = [as_rat(c) for c in coeffs]
        if nvars is None:
            nvars = len(a)
        elif len(a) != nvars:
            raise ValueError("constraints have inconsistent lengths")
        b = as_rat(rhs)
        r = _REL.get(rel)
        if r is None:
            raise ValueError(f"unknown relation {rel!r}")
        if r in ("<=", "<"):
            a, b = [-c for c in a], -b
            r = ">=" if r == "<=" else ">"
        if r == "==":
            rows.append((a, False, b))
            rows.append(([-c for c in a], False, -b))
        else:
            rows.append((a, r == ">", b))
    return (nvars or 0), rows


class _Tableau:
    """Dense simplex tableau over Fractions with Bland's rule.

    Solves max obj.z subject to M z = r, z >= 0 with r >= 0, given a starting
    feasible basis.
    """

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            for j, v in enumerate(row):
                if v:
                    row[j] = v * inv
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def maximize(self, obj: list[Fraction], allowed: set[int] | None = None) -> str:
        ncols = len(obj)
        while True:
            # reduced costs: obj_j - sum_i obj_{basis_i} * row_i[j]
            cb = [obj[b] for b in self.basis]
            enter = None
            for j in range(ncols):
                if allowed is not None and j not in allowed:
                    continue
                if j in self.basis:
                    continue
                red = obj[j] - sum(cb[i] * self.rows[i][j] for i in range(len(self.rows)) if cb[i] and self.rows[i][j])
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter)

    def value(self, j: int) -> Fraction:
        for i, b in enumerate(self.basis):
            if b == j:
                return self.rhs[i]
        return Fraction(0)


def linear_feasible(constraints) -> list[Fraction] | None:
    """Find a rational point satisfying linear constraints, or return ``None``.

    Each constraint is ``(coeffs, rel, rhs)`` with ``rel`` one of ``>=``, ``>``,
    ``<=``, ``<``, ``==``. Strict rows are handled by maximizing a shared slack
    sigma <= 1: the system is feasible iff the optimum is positive. Pivoting
    follows Bland's rule, so the witness is deterministic.
    """
    nvars, rows = _normalize(constraints)
    strict = any(s for _, s, _ in rows)
    if not rows:
        return [Fraction(0)] * nvars
    # columns: u (nvars), v (nvars), sigma (if strict), surplus per row, artificials
    nfree = 2 * nvars + (1 if strict else 0)
    sig = 2 * nvars if strict else None
    m = len(rows) + (1 if strict else 0)
    ncols = nfree + m
    trows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (a, is_strict, b) in enumerate(rows):
        row = [Fraction(0)] * ncols
        for j, c in enumerate(a):
            row[j] = c
            row[nvars + j] = -c
        if is_strict:
            row[sig] = Fraction(-1)
        row[nfree + i] = Fraction(-1)
        trows.append(row)
        rhs.append(b)
    if strict:
        # sigma + w = 1 written as -sigma - w' = -1 (i.e. -sigma >= -1)
        row = [Fraction(0)] * ncols
        row[sig] = Fraction(-1)
        row[nfree + len(rows)] = Fraction(-1)
        trows.append(row)
        rhs.append(Fraction(-1))
    basis: list[int] = []
    art_rows = []
    for i in range(m):
        if rhs[i] < 0 or (rhs[i] == 0):
            trows[i] = [-x for x in trows[i]]
            rhs[i] = -rhs[i]
            basis.append(nfree + i)  # surplus now has coefficient +1
        else:
            basis.append(-1)
            art_rows.append(i)
    nart = len(art_rows)
    total = ncols + nart
    for row in trows:
        row.extend([Fraction(0)] * nart)
    for k, i in enumerate(art_rows):
        trows[i][ncols + k] = Fraction(1)
        basis[i] = ncols + k
    tab = _Tableau(trows, rhs, basis)
    if nart:
        obj = [Fraction(0)] * ncols + [Fraction(-1)] * nart
        tab.maximize(obj)
        if any(tab.value(ncols + k) != 0 for k in range(nart)):
            return None
        # drive remaining zero-level artificials out of the basis
        for i, b in enumerate(tab.basis):
            if b >= ncols:
                col = next((j for j in range(ncols) if tab.rows[i][j] != 0), None)
                if col is not None:
                    tab.pivot(i, col)
    allowed = set(range(ncols))
    if strict:
        obj = [Fraction(0)] * total
        obj[sig] = Fraction(1)
        status = tab.maximize(obj, allowed)
        if status != "optimal" or tab.value(sig) <= 0:
            return None
    x = [tab.value(j) - tab.value(nvars + j) for j in range(nvars)]
    return x


def check_constraints(constraints, x: Sequence) -> bool:
    """True iff ``x`` satisfies every constraint exactly."""
    _, rows = _normalize(constraints)
    x = [as_rat(v) for v in x]
    for a, is_strict, b in rows:
        lhs = sum(c * v for c, v in zip(a, x))
        if lhs < b or (is_strict and lhs == b):
            return False
    return True
