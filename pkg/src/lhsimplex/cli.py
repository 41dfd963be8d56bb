"""Command-line front end.

Exit codes: 0 success, 1 internal error or failed check, 2 cap exceeded,
3 not found, 4 domain error, 5 not coverable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from .errors import CapExceededError, DomainError, NotCoverableError
from .exact_core import QPoly, rat_str
from .lecture_hall import DEFAULT_CAP, ehrhart, hstar, s_eulerian, validate_s
from .nonpositivity import (
    beta,
    e3_closed_form,
    shifted_e,
    lambda_expansion_check,
    leading_coeff_in_a,
    leading_coeff_target,
    lemma_identity_sum,
)
from .triangulation import (
    build_triangulation,
    dumps,
    load,
    regularity_violation,
    non_face_cliques,
    verify_triangulation,
    verify_unimodular,
)

EXIT_OK, EXIT_INTERNAL, EXIT_CAP, EXIT_NOT_FOUND, EXIT_DOMAIN, EXIT_NOT_COVERABLE = 0, 1, 2, 3, 4, 5
# a failed check is reported through the generic non-zero code
EXIT_CHECK_FAILED = EXIT_INTERNAL

# above this many simplices the flag self-check (the slow one) is skipped
SELF_VERIFY_LIMIT = 200_000


def parse_s(text: str) -> tuple[int, ...]:
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise DomainError(f"cannot parse sequence {text!r}") from exc
    return validate_s(vals)


def parse_range(text: str) -> range:
    """'5..20' -> 5..20 inclusive; '7' -> just 7."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
    except ValueError as exc:
        raise DomainError(f"cannot parse range {text!r}") from exc
    return range(v, v + 1)


def fixture_path(path: str) -> Path:
    """The path itself if it exists, else a shipped fixture of the same name."""
    p = Path(path)
    if p.exists():
        return p
    if p.parts and p.parts[0] == "fixtures":
        shipped = resources.files("lhsimplex") / "fixtures" / Path(*p.parts[1:])
        if shipped.is_file():
            return Path(str(shipped))
    raise DomainError(f"no such certificate: {path}")


def _poly_json(p: QPoly) -> dict:
    return {"coefficients": [rat_str(c) for c in p.coeffs], "ascending": p.format(), "descending": p.format(descending=True)}


def _emit(args, plain: str, record: dict, rows: list[list] | None = None) -> None:
    out = args.stdout
    if args.format == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in rows or [[k, json.dumps(v) if isinstance(v, (list, dict)) else v] for k, v in record.items()]:
            w.writerow(row)
        out.write(buf.getvalue())
    else:
        out.write(plain + "\n")


# --- subcommands ----------------------------------------------------------------


def cmd_eulerian(args) -> int:
    s = parse_s(args.s)
    p = s_eulerian(s, cap=args.cap)
    _emit(args, p.format(), {"s": list(s), "eulerian": _poly_json(p)}, [[i, rat_str(c)] for i, c in enumerate(p.coeffs)])
    return EXIT_OK


def cmd_ehrhart(args) -> int:
    s = parse_s(args.s)
    method = args.method
    L = ehrhart(s, method=method, cap=args.cap)
    h = hstar(s, method="auto" if method == "oracle" else method, cap=args.cap)
    neg = [(i, c) for i, c in enumerate(L.coeffs) if c < 0]
    lines = [L.format(descending=True), "h* = (" + ", ".join(str(x) for x in h) + ")"]
    if neg:
        lines.append("negative coefficients: " + ", ".join(f"[t^{i}] = {rat_str(c)}" for i, c in neg))
    record = {
        "s": list(s),
        "method": method,
        "ehrhart": _poly_json(L),
        "hstar": [str(x) for x in h],
        "negative_coefficients": {str(i): rat_str(c) for i, c in neg},
    }
    _emit(args, "\n".join(lines), record, [[i, rat_str(c)] for i, c in enumerate(L.coeffs)])
    return EXIT_OK


def cmd_beta(args) -> int:
    b = beta(args.n, a_max=args.a_max)
    if b is None:
        _emit(args, f"not found for a <= {args.a_max}", {"n": args.n, "a_max": args.a_max, "beta": None})
        return EXIT_NOT_FOUND
    _emit(args, str(b), {"n": args.n, "a_max": args.a_max, "beta": b})
    return EXIT_OK


def cmd_asymptotic(args) -> int:
    n = args.n
    if n < 5:
        raise DomainError("the leading coefficient in a is studied for n >= 5")
    got = leading_coeff_in_a(n)
    target = leading_coeff_target(n)
    verdict = "matches" if got == target else "differs from"
    _emit(
        args,
        f"{rat_str(got)} ({verdict} -1/(720*(n-4)!))",
        {"n": n, "leading_coefficient": rat_str(got), "target": rat_str(target), "match": got == target},
    )
    return EXIT_OK if got == target else EXIT_CHECK_FAILED


def _identity_rows(args) -> list[tuple[str, bool, str]]:
    rows = []
    which = args.which
    if which == "lemma-eulerian":
        for n in parse_range(args.n or "5..20"):
            v = lemma_identity_sum(n)
            rows.append((f"n={n}", v * 15 == n, rat_str(v)))
    elif which == "e3":
        for n in parse_range(args.n or "0..12"):
            for l in parse_range(args.l or "0..8"):
                brute = shifted_e(3, n, l)
                closed = e3_closed_form(n, l)
                rows.append((f"n={n} l={l}", brute == closed, rat_str(closed)))
    elif which == "lambda":
        nr = parse_range(args.n or "0..10")
        lr = parse_range(args.l or "0..10")
        ok = lambda_expansion_check(nr.stop - 1, lr.stop - 1)
        rows.append((f"n<={nr.stop - 1} l<={lr.stop - 1}", ok, ""))
    else:
        raise DomainError(f"unknown identity {which!r}")
    return rows


def cmd_identities(args) -> int:
    rows = _identity_rows(args)
    ok = all(r[1] for r in rows)
    plain = "\n".join(f"{name}: {'pass' if good else 'FAIL'}" + (f" ({val})" if val else "") for name, good, val in rows)
    record = {"which": args.which, "all_pass": ok, "instances": [{"instance": n, "pass": g, "value": v} for n, g, v in rows]}
    _emit(args, plain, record, [[n, "pass" if g else "fail", v] for n, g, v in rows])
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _check(t, name: str, method: str) -> tuple[bool, str]:
    if name == "valid":
        rep = verify_triangulation(t, method=method)
        return rep.valid, "; ".join(rep.messages)
    if name == "unimodular":
        ok = verify_unimodular(t)
        return ok, "" if ok else "some simplex has normalized volume > 1"
    if name == "flag":
        bad = non_face_cliques(t)
        return not bad, f"clique {bad[0]} is not a face" if bad else ""
    if name == "regular":
        if t.heights is None:
            return False, "no heights in certificate"
        v = regularity_violation(t)
        return v is None, "" if v is None else f"point {v[1]} is not strictly above the lift of simplex {v[0]}"
    raise DomainError(f"unknown check {name!r}")


def cmd_triangulate(args) -> int:
    s = parse_s(args.s)
    t = build_triangulation(s)
    checks = {}
    skipped = len(t.simplices) > SELF_VERIFY_LIMIT and not args.force_verify
    names = ("valid", "unimodular", "regular") if skipped else ("valid", "unimodular", "flag", "regular")
    for name in names:
        ok, msg = _check(t, name, "ridge")
        checks[name] = ok
        if not ok:
            raise AssertionError(f"self-verification failed ({name}): {msg}")
    text = dumps(t)
    if args.out:
        Path(args.out).write_text(text)
    else:
        args.stdout.write(text)
    status = ", ".join(names) + (" (flag skipped, use --force-verify)" if skipped else "")
    summary = f"s={','.join(map(str, s))}: {len(t.simplices)} simplices, {len(t.points)} points; self-check: {status}"
    if args.out:
        _emit(args, summary, {"s": list(s), "simplices": len(t.simplices), "points": len(t.points), "checks": checks, "out": args.out})
    else:
        sys.stderr.write(summary + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    t = load(fixture_path(args.cert))
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    results = {}
    lines = []
    for name in names:
        ok, msg = _check(t, name, args.method)
        results[name] = {"pass": ok, "detail": msg}
        lines.append(f"{name}: {'pass' if ok else 'FAIL'}" + (f" ({msg})" if msg and not ok else ""))
    ok = all(r["pass"] for r in results.values())
    _emit(args, "\n".join(lines), {"cert": args.cert, "checks": results, "all_pass": ok}, [[k, v["pass"], v["detail"]] for k, v in results.items()])
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--workers", type=int, default=1, help="accepted for compatibility; checks run in one process")

    p = argparse.ArgumentParser(prog="lhsimplex", description="Ehrhart data and triangulations of s-lecture hall simplices")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("eulerian", parents=[common], help="s-Eulerian polynomial")
    q.add_argument("--s", required=True)
    q.set_defaults(func=cmd_eulerian)

    q = sub.add_parser("ehrhart", parents=[common], help="Ehrhart polynomial and h*-vector")
    q.add_argument("--s", required=True)
    q.add_argument("--method", choices=("auto", "enumerate", "recursive", "oracle"), default="auto")
    q.set_defaults(func=cmd_ehrhart)

    q = sub.add_parser("beta", parents=[common], help="least a with a negative [t^(n-4)] coefficient")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--a-max", type=int, default=1000)
    q.set_defaults(func=cmd_beta)

    q = sub.add_parser("asymptotic", parents=[common], help="leading coefficient in a of [t^(n-4)]")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_asymptotic)

    q = sub.add_parser("identities", parents=[common], help="check the combinatorial identities")
    q.add_argument("--which", choices=("lemma-eulerian", "e3", "lambda"), required=True)
    q.add_argument("--n", help="range like 5..20")
    q.add_argument("--l", help="range like 0..8")
    q.set_defaults(func=cmd_identities)

    q = sub.add_parser("triangulate", parents=[common], help="build a certified triangulation")
    q.add_argument("--s", required=True)
    q.add_argument("--out")
    q.add_argument("--force-verify", action="store_true", help="self-verify even very large outputs")
    q.set_defaults(func=cmd_triangulate)

    q = sub.add_parser("verify", parents=[common], help="check a triangulation certificate")
    q.add_argument("--cert", required=True)
    q.add_argument("--checks", default="valid,unimodular,flag,regular")
    q.add_argument("--method", choices=("ridge", "pairwise"), default="ridge")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.stdout = stdout or sys.stdout
    try:
        if args.cap is not None and args.cap < 1:
            raise DomainError("--cap must be positive")
        return args.func(args)
    except CapExceededError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except NotCoverableError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NOT_COVERABLE
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
