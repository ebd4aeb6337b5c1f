from __future__ import annotations

import random
from fractions import Fraction

import pytest

from curvelim.fixtures import conic, conic_point, cubic
from curvelim.poly import HomPoly3, UniPoly, monomials


@pytest.fixture
def C():
    return conic()


@pytest.fixture
def K():
    return cubic()


@pytest.fixture
def rng():
    return random.Random(20240517)


def random_form(rng: random.Random, n: int, lo: int = -4, hi: int = 4) -> HomPoly3:
    return HomPoly3({e: rng.randint(lo, hi) for e in monomials(n)}, n)


def random_unipoly(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> UniPoly:
    coeffs = [rng.randint(lo, hi) for _ in range(n)]
    lead = rng.choice([v for v in range(lo, hi + 1) if v != 0])
    return UniPoly(coeffs + [lead], n)


def random_conic_point(rng: random.Random):
    while True:
        s, t = rng.randint(-6, 6), rng.randint(-6, 6)
        if (s, t) != (0, 0):
            return conic_point(Fraction(s), Fraction(t))


def distinct_conic_points(rng: random.Random, count: int):
    from curvelim.detrep import normalize_point

    seen = {}
    while len(seen) < count:
        pt = normalize_point(random_conic_point(rng))
        seen.setdefault(pt, None)
    return list(seen)


# -- acceptance report ---------------------------------------------------------

_ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on ``ok``."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((number, title, bool(ok), detail))
        line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
        )
