from __future__ import annotations

import functools
import random

import pytest
from hypothesis import settings
from sympy import primitive_root

from pqdigraphs.digraph import Digraph
from pqdigraphs.perm import Permutation, PermutationGroup

settings.register_profile("artifact", max_examples=60, deadline=None)
settings.load_profile("artifact")


def cyc(n: int, *cycles) -> Permutation:
    return Permutation.from_cycles(cycles, n)


def mobius_group(q: int, *, psl: bool = True) -> PermutationGroup:
    """PSL(2,q) (or PGL) on the q+1 points of PG(1,q); point q is infinity."""
    def m(a, b, c, d):
        img = []
        for x in range(q + 1):
            if x == q:
                num, den = a, c
            else:
                num, den = (a * x + b) % q, (c * x + d) % q
            img.append(q if den == 0 else num * pow(den, -1, q) % q)
        return Permutation(img)
    r = primitive_root(q)
    mult = r * r % q if psl else r
    return PermutationGroup([m(1, 1, 0, 1), m(mult, 0, 0, 1), m(0, q - 1, 1, 0)], q + 1)


def small_group_corpus() -> dict[str, PermutationGroup]:
    """Transitive groups of order at most 5000 and degree at most 12."""
    c = {
        "S3": PermutationGroup([cyc(3, (0, 1)), cyc(3, (0, 1, 2))], 3),
        "S4": PermutationGroup([cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))], 4),
        "S5": PermutationGroup([cyc(5, (0, 1)), cyc(5, (0, 1, 2, 3, 4))], 5),
        "A5": PermutationGroup([cyc(5, (0, 1, 2)), cyc(5, (0, 1, 2, 3, 4))], 5),
        "D5": PermutationGroup([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (1, 4), (2, 3))], 5),
        "F20": PermutationGroup([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (1, 2, 4, 3))], 5),
        "Z6": PermutationGroup([cyc(6, (0, 1, 2, 3, 4, 5))], 6),
        "D6": PermutationGroup([cyc(6, (0, 1, 2, 3, 4, 5)), cyc(6, (1, 5), (2, 4))], 6),
        "S3wrS2": PermutationGroup([cyc(6, (0, 1)), cyc(6, (0, 1, 2)), cyc(6, (0, 3), (1, 4), (2, 5))], 6),
        "S2wrS3": PermutationGroup([cyc(6, (0, 1)), cyc(6, (0, 2, 4), (1, 3, 5)), cyc(6, (0, 2), (1, 3))], 6),
        "PSL(2,5)@6": mobius_group(5),
        "PGL(2,5)@6": mobius_group(5, psl=False),
        "Z7:Z3": PermutationGroup([cyc(7, (0, 1, 2, 3, 4, 5, 6)), cyc(7, (1, 2, 4), (3, 6, 5))], 7),
        "AGL(1,7)": PermutationGroup([cyc(7, (0, 1, 2, 3, 4, 5, 6)), cyc(7, (1, 3, 2, 6, 4, 5))], 7),
        "PSL(2,7)@8": mobius_group(7),
        "S2wrS2": PermutationGroup([cyc(4, (0, 1)), cyc(4, (0, 2), (1, 3))], 4),
        "Z2^3": PermutationGroup([cyc(8, (0, 1), (2, 3), (4, 5), (6, 7)),
                                  cyc(8, (0, 2), (1, 3), (4, 6), (5, 7)),
                                  cyc(8, (0, 4), (1, 5), (2, 6), (3, 7))], 8),
        "Z9": PermutationGroup([cyc(9, tuple(range(9)))], 9),
        "Z3wrZ3": PermutationGroup([cyc(9, (0, 1, 2)), cyc(9, (0, 3, 6), (1, 4, 7), (2, 5, 8))], 9),
        "PSL(2,11)@12": mobius_group(11),
        "D10@10": PermutationGroup([cyc(10, tuple(range(10))), cyc(10, *[(i, 10 - i) for i in range(1, 5)])], 10),
    }
    return c


@pytest.fixture(scope="session")
def corpus() -> dict[str, PermutationGroup]:
    return small_group_corpus()


def random_digraph(n: int, rng: random.Random, density: float = 0.5) -> Digraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density]
    return Digraph.from_arcs(n, arcs)


def petersen() -> Digraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges = outer + spokes + inner
    return Digraph.from_arcs(10, edges + [(v, u) for u, v in edges])


# -- census results shared between modules -------------------------------------

@functools.lru_cache(maxsize=None)
def case_result(case_id: str, enable_stretch: bool = False):
    """Run one census case once per session; later callers reuse the result."""
    from pqdigraphs.census.cases import ALL_CASES, verify_case
    case = next(c for c in ALL_CASES if c.id == case_id)
    return verify_case(case, budget=None, enable_stretch=enable_stretch)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, float, float, str]] = {}


def record_criterion(number: int, passed: bool, seconds: float, limit: float, detail: str = "") -> None:
    prev = ACCEPTANCE.get(number)
    if prev is not None:
        passed = passed and prev[0]
        seconds = seconds + prev[1]
        detail = "; ".join(x for x in (prev[3], detail) if x)
    ACCEPTANCE[number] = (passed, seconds, limit, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, limit, detail = ACCEPTANCE[n]
        tail = f" ({detail})" if detail else ""
        terminalreporter.write_line(
            f"criterion {n}: {'PASS' if ok else 'FAIL'}  {secs:.2f} s (limit {limit:.0f} s){tail}")
