"""The ten acceptance criteria, one test each.

Each test records a pass/fail line that is printed in the terminal summary.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from math import comb, prod

import numpy as np
import pytest

from conftest import ACCEPTANCE
from lhsimplex.cli import main
from lhsimplex.exact_core import QPoly
from lhsimplex.lecture_hall import ehrhart, ehrhart_by_interpolation, hstar
from lhsimplex.nonpositivity import (
    BETA_TABLE,
    beta,
    e3_closed_form,
    ehrhart_near_constant,
    lambda_expansion_check,
    leading_coeff_in_a,
    lemma_identity_sum,
    shifted_e,
    small_n_positivity,
)
from lhsimplex.oracle_sweep import oracle_sweep
from lhsimplex.triangulation import (
    admissible_split,
    build_triangulation,
    dumps,
    from_json_dict,
    load,
    make_triangulation,
    verify_flag,
    verify_regular,
    verify_triangulation,
    verify_unimodular,
)
from lhsimplex.cli import fixture_path


@contextmanager
def criterion(k, limit=None):
    start = time.perf_counter()
    info = {"detail": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        bound = f" (limit {limit:g} s)" if limit else ""
        ACCEPTANCE[k] = (ok, f"{elapsed:.2f} s{bound} {info['detail']}".rstrip())
    if limit is not None:
        assert elapsed < limit, f"criterion {k} took {elapsed:.2f} s"


def run_cli(*argv):
    import io

    out = io.StringIO()
    return main(list(argv), stdout=out), out.getvalue()


def test_criterion_01_small_example():
    with criterion(1, 1.0) as info:
        code, out = run_cli("ehrhart", "--s", "1,2,3")
        assert code == 0
        assert "t^3 + 3t^2 + 3t + 1" in out.splitlines()[0]
        assert hstar((1, 2, 3))[:3] == (1, 4, 1)
        assert ehrhart((1, 2, 3)) == QPoly([1, 3, 3, 1])
        info["detail"] = "h* = (1,4,1), L = t^3+3t^2+3t+1"


def test_criterion_02_negative_linear_coefficient():
    expected = "139264/15 t^5 + 21760/3 t^4 + 9248/3 t^3 + 2210/3 t^2 - 119/15 t + 1"
    with criterion(2, 5.0) as info:
        code, out = run_cli("ehrhart", "--s", "16,16,16,16,17")
        assert code == 0
        assert out.splitlines()[0] == expected
        assert ehrhart((16, 16, 16, 16, 17)).coefficient(1) == F(-119, 15)
        info["detail"] = "[t]L = -119/15"


def test_criterion_03_beta_table():
    with criterion(3, 30.0) as info:
        got = {n: beta(n) for n in (5, 6, 7, 8)}
        assert got == {5: 16, 6: 19, 7: 23, 8: 27} == BETA_TABLE
        info["detail"] = str(got)


def test_criterion_04_leading_coefficient():
    with criterion(4, 60.0) as info:
        from math import factorial

        for n in (5, 6, 7, 8):
            assert leading_coeff_in_a(n) == F(-1, 720 * factorial(n - 4))
        info["detail"] = "n = 5..8 exact"


def test_criterion_05_small_n_closed_forms():
    with criterion(5) as info:
        for a in range(1, 51):
            p3 = ehrhart_near_constant(3, a)
            assert p3.coefficient(1) == F(a * a, 12) + F(13 * a, 12) + 1
            p4 = ehrhart_near_constant(4, a)
            assert p4.coefficient(1) == F(a**2, 6) + F(7 * a, 6) + 1
            assert p4.coefficient(2) == F(a**3, 24) + F(23 * a * a, 24) + F(11 * a, 12)
            for n in (3, 4):
                rep = small_n_positivity(n, a)
                assert rep.all_nonnegative and rep.closed_form_matches
        info["detail"] = "a = 1..50"


def test_criterion_06_identities():
    with criterion(6) as info:
        for n in range(5, 21):
            assert lemma_identity_sum(n) == F(n, 15)
        for n in range(13):
            for l in range(9):
                assert e3_closed_form(n, l) == shifted_e(3, n, l)
        assert lambda_expansion_check(10, 10)
        info["detail"] = "n/15, e3 grid, lambda grid"


def test_criterion_07_golden_certificate():
    with criterion(7) as info:
        t = load(fixture_path("fixtures/p352.json"))
        assert len(t.points) == 18 and len(t.simplices) == 30
        for method in ("ridge", "pairwise"):
            assert verify_triangulation(t, method=method).valid
        assert verify_unimodular(t) and verify_flag(t) and verify_regular(t)
        # one index changed: overlapping simplices
        simp = list(t.simplices)
        simp[0] = tuple(sorted((6,) + simp[0][1:]))
        rep = verify_triangulation(make_triangulation(t.points, simp, t.heights, t.s), method="pairwise")
        assert not rep.valid and rep.failing_pair == (0, 7)
        # one index changed: flat simplex
        data = __import__("json").loads(dumps(t))
        data["simplices"][5][3] = 15
        rep = verify_triangulation(from_json_dict(data))
        assert not rep.valid and rep.failing_simplex == 5
        # heights zeroed
        flat = t.with_heights([0] * len(t.points))
        assert verify_triangulation(flat).valid and not verify_regular(flat)
        info["detail"] = "4 passes; mutations rejected"


def _sequences(nmax, pmax):
    def rec(pre, p):
        if pre:
            yield tuple(pre)
        if len(pre) == nmax:
            return
        for x in range(1, pmax // p + 1):
            yield from rec(pre + [x], p * x)

    yield from rec([], 1)


def _pattern_sequences():
    out = set()
    for a in range(1, 6):
        for n in range(1, 5):
            out.add((a,) * (n - 1) + (a + 1,))
    for a, b in itertools.product(range(1, 6), repeat=2):
        out.update({(1, a, 1, b), (a, 1, b, 1), (1, a, 1), (a, 1, b), (1, a, b, 1)})
    return sorted(s for s in out if admissible_split(s) is not None)


def _all_four(t):
    return verify_triangulation(t).valid and verify_unimodular(t) and verify_flag(t) and verify_regular(t)


def test_criterion_08_constructor_soundness():
    with criterion(8) as info:
        count = 0
        for s in itertools.chain(_sequences(4, 200), _pattern_sequences()):
            if admissible_split(s) is None:
                continue
            t = build_triangulation(s)
            assert len(t.simplices) == prod(s), s
            assert _all_four(t), s
            count += 1
        info["detail"] = f"{count} sequences"


def test_criterion_09_oracle_equivalence():
    with criterion(9) as info:
        res = oracle_sweep(5, 5000)
        assert res.mismatches == 0 and res.reversal_failures == 0
        # cross-check the sweep against the library on a sample
        rng = random.Random(9)
        for row in rng.sample(range(res.count), 200):
            s = res.unpack(row)
            h = hstar(s)
            assert tuple(int(x) for x in res.hstar[row][: len(h)]) == h
            if prod(s) <= 600:
                assert ehrhart(s) == ehrhart_by_interpolation(s)
                assert h == hstar(tuple(reversed(s)))
        info["detail"] = f"{res.count} sequences"


def test_criterion_10_recursion_and_decomposition():
    with criterion(10) as info:
        rng = random.Random(10)
        for _ in range(300):
            n = rng.randint(1, 4)
            prefix = tuple(rng.randint(1, 6) for _ in range(n))
            if prod(prefix) * (prefix[-1] + 1) > 3000:
                continue
            last = prefix[-1]
            lhs = hstar(prefix + (last + 1,), method="enumerate")
            base = hstar(prefix + (last,), method="enumerate")
            low = (0,) + hstar(prefix, method="enumerate")
            assert lhs == tuple(x + y for x, y in zip(base, low))
        for n in range(1, 6):
            for a in range(1, 7):
                L = ehrhart_near_constant(n, a)
                for t in range(6):
                    assert L(t) == comb(a * t + n, n) + sum(comb(a * l + n - 1, n - 1) for l in range(t))
        info["detail"] = "random recursion suite, n <= 5, a <= 6, t <= 5"
