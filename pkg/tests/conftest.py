from math import prod

from hypothesis import strategies as st


def svecs(max_len=4, max_entry=6, max_prod=200):
    """Hypothesis strategy for small s-vectors."""
    return (
        st.lists(st.integers(1, max_entry), min_size=1, max_size=max_len)
        .filter(lambda s: prod(s) <= max_prod)
        .map(tuple)
    )


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
