"""Census cases.

A case pairs a computation with a table of expected facts.  Every expected
fact is tagged with where it comes from: ``paper`` for published claims and
``derived`` for values fixed by an independent oracle (an order formula,
brute force, a second algorithm).  Facts the computation produces without an
expectation are kept as *recorded* observations; they appear in the report
but never decide pass or fail.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Any, Callable

from ..autiso import (AutBudgetExceeded, AutResult, are_isomorphic, automorphism_group,
                      canonical_form, is_2_arc_transitive, is_arc_transitive)
from ..digraph import (Digraph, MetacirculantParams, cayley_digraph, generalized_orbital_digraph,
                       left_multiplications, lexicographic_product, metacirculant,
                       metacirculant_maps, orbital_digraphs)
from ..ms import (MSParams, all_params, classify_ms, ms_aut_fast, ms_context, ms_digraph,
                  ms_from_orbitals, ms_isomorphic_fast, ms_order_2_of, nondegenerate_params,
                  psgammasp4_order)
from ..perm import (Permutation, PermutationGroup, SearchInconclusive, all_block_systems,
                    find_regular_subgroup, find_semiregular_pair_metacirculant, fixer,
                    induced_action, is_primitive, is_quasiprimitive, schreier_sims, suborbits)
from .builders import (BuildError, build_m23_degree253, build_psl2_11_degree55,
                       build_psl2_13_degree91, build_psl3_2_degree21)

SOURCES = ("paper", "derived")


class UntaggedExpectation(ValueError):
    """An expected fact without a usable provenance tag."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Expected:
    value: Any
    source: str
    anchor: str


def paper(value: Any, anchor: str) -> Expected:
    return Expected(value, "paper", anchor)


def derived(value: Any, anchor: str) -> Expected:
    return Expected(value, "derived", anchor)


class Clock:
    """Cooperative time budget for one case."""

    def __init__(self, budget: float | None):
        self.deadline = None if budget is None else time.monotonic() + budget

    def remaining(self) -> float | None:
        if self.deadline is None:
            return None
        return max(0.0, self.deadline - time.monotonic())

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("case exceeded its time budget")

    def aut(self, g: Digraph, seed=None) -> AutResult:
        self.check()
        try:
            return automorphism_group(g, seed, budget=self.remaining())
        except AutBudgetExceeded as exc:
            raise BudgetExceeded(str(exc)) from None


Facts = dict[str, Any]


@dataclass
class CensusCase:
    id: str
    title: str
    expected: dict[str, Expected]
    compute: Callable[[Clock], tuple[Facts, Facts]]
    stretch: bool = False
    criteria: tuple[int, ...] = ()


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    source: str
    anchor: str
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed,
                "source": self.source, "anchor": self.anchor, "passed": self.passed}


@dataclass
class CaseResult:
    case_id: str
    title: str
    status: str  # pass | fail | skipped (budget) | skipped (stretch) | error
    checks: list[Check] = field(default_factory=list)
    recorded: Facts = field(default_factory=dict)
    seconds: float = 0.0
    message: str = ""

    @property
    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self, timings: bool = False) -> dict:
        d = {"id": self.case_id, "title": self.title, "status": self.status,
             "checks": [c.as_dict() for c in self.checks], "recorded": self.recorded,
             "message": self.message}
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


def validate_case(case: CensusCase) -> None:
    """Refuse cases whose expectations are missing a provenance tag."""
    if not case.expected:
        raise UntaggedExpectation(f"{case.id}: no expected facts")
    for name, exp in case.expected.items():
        if not isinstance(exp, Expected):
            raise UntaggedExpectation(f"{case.id}.{name}: expectation is not tagged")
        if exp.source not in SOURCES or not exp.anchor.strip():
            raise UntaggedExpectation(f"{case.id}.{name}: bad provenance {exp.source!r}")


def verify_case(case: CensusCase, budget: float | None = 300.0,
                enable_stretch: bool = False) -> CaseResult:
    """Run one case and compare computed facts against its expectations.

    Raises ``UntaggedExpectation`` for a malformed case and ``BuildError``
    when a builder cannot produce its group.
    """
    validate_case(case)
    if case.stretch and not enable_stretch:
        return CaseResult(case.id, case.title, "skipped (stretch)",
                          message="enable with --enable-stretch")
    clock = Clock(budget)
    t0 = time.monotonic()
    try:
        computed, recorded = case.compute(clock)
    except BudgetExceeded as exc:
        return CaseResult(case.id, case.title, "skipped (budget)", seconds=time.monotonic() - t0,
                          message=str(exc))
    seconds = time.monotonic() - t0
    checks = []
    for name in sorted(case.expected):
        exp = case.expected[name]
        got = computed.get(name, "<not computed>")
        checks.append(Check(name, exp.value, got, exp.source, exp.anchor, got == exp.value))
    extra = {k: v for k, v in computed.items() if k not in case.expected}
    recorded = {**extra, **recorded}
    status = "pass" if all(c.passed for c in checks) else "fail"
    return CaseResult(case.id, case.title, status, checks, recorded, seconds)


# -- shared helpers -----------------------------------------------------------

def _sizes(group: PermutationGroup) -> list[int]:
    return sorted(len(s) for s in suborbits(group, 0))


def _swap_map(orbs, outer: Permutation) -> dict[int, int]:
    """Index permutation induced on orbitals by an element normalizing the group."""
    by_graph = {o.digraph: o.index for o in orbs}
    return {o.index: by_graph[o.digraph.relabel(outer)] for o in orbs}


def _outside(big: PermutationGroup, small: PermutationGroup) -> Permutation:
    for g in big.generators:
        if not small.contains(g):
            return g
    raise BuildError("overgroup generators all lie in the subgroup")


def _orders_agree(clock: Clock, graphs: list[Digraph], seed: PermutationGroup,
                  seeded: list[int]) -> tuple[bool, bool]:
    """(unseeded orders agree, complement orders agree) over ``graphs``."""
    unseeded = [clock.aut(g).order for g in graphs]
    comp = [clock.aut(g.complement(), seed).order for g in graphs]
    return unseeded == seeded, comp == seeded


# -- PSL(2,11) on 55 points ---------------------------------------------------

def _psl2_11(clock: Clock) -> tuple[Facts, Facts]:
    lp = build_psl2_11_degree55()
    psl, pgl = lp.psl, lp.pgl
    orbs = orbital_digraphs(psl)
    auts = {o.index: clock.aut(o.digraph, psl) for o in orbs}
    nsp = [o for o in orbs if not o.self_paired]
    disc = [o for o in orbs if not o.digraph.is_connected()]
    uni = generalized_orbital_digraph(orbs, {o.index for o in disc})
    uni_aut = clock.aut(uni, pgl)
    reg = find_regular_subgroup(psl)
    swap = _swap_map(orbs, _outside(pgl, psl))
    seeded = [auts[o.index].order for o in orbs]
    unseeded_ok, comp_ok = _orders_agree(clock, [o.digraph for o in orbs], psl, seeded)
    facts = {
        "order": psl.order(),
        "suborbit_sizes": _sizes(psl),
        "non_self_paired_valencies": sorted(o.valency for o in nsp),
        "non_self_paired_aut_orders": sorted(auts[o.index].order for o in nsp),
        "disconnected_valencies": sorted(o.valency for o in disc),
        "disconnected_pair_swapped_by_pgl": len(disc) == 2 and swap[disc[0].index] == disc[1].index,
        "disconnected_union_pgl_invariant": uni.is_invariant_under(pgl),
        "disconnected_union_aut_at_least_1320": uni_aut.order >= 1320,
        "disconnected_union_aut_primitive": is_primitive(uni_aut.group),
        "psl_primitive": is_primitive(psl),
        "psl_quasiprimitive": is_quasiprimitive(psl),
        "pgl_primitive": is_primitive(pgl),
        "regular_subgroup": None if reg is None else [reg.group.order(), reg.shape],
        "unseeded_orders_agree": unseeded_ok,
        "complement_orders_agree": comp_ok,
    }
    recorded = {
        "orbitals": [{"index": o.index, "valency": o.valency, "paired": o.paired_index,
                      "connected": o.digraph.is_connected(), "aut_order": auts[o.index].order}
                     for o in orbs],
        "disconnected_union_aut_order": uni_aut.order,
    }
    return facts, recorded


PSL2_11 = CensusCase(
    "psl2-11@55", "PSL(2,11) on the 55 cosets of A4", {
        "order": derived(660, "q(q^2-1)/2 at q = 11"),
        "suborbit_sizes": paper([1, 4, 4, 4, 6, 12, 12, 12], "PSL(2,11) suborbit lengths at degree 55"),
        "non_self_paired_valencies": paper([12, 12], "only the two length-12 suborbits are not self-paired"),
        "non_self_paired_aut_orders": paper([660, 660], "non-self-paired orbital digraphs have Aut PSL(2,11)"),
        "disconnected_valencies": paper([4, 4], "two length-4 suborbits give disconnected orbital graphs"),
        "disconnected_pair_swapped_by_pgl": paper(True, "one disconnected graph is the PGL(2,11) image of the other"),
        "disconnected_union_pgl_invariant": paper(True, "their union is an orbital graph of PGL(2,11)"),
        "disconnected_union_aut_at_least_1320": paper(True, "their union is an orbital graph of PGL(2,11)"),
        "disconnected_union_aut_primitive": paper(True, "PGL(2,11) is primitive"),
        "psl_primitive": paper(False, "imprimitive representation of PSL(2,11) on 55 points"),
        "psl_quasiprimitive": paper(True, "quasiprimitive representation of PSL(2,11)"),
        "pgl_primitive": paper(True, "PGL(2,11) is primitive"),
        "regular_subgroup": paper([55, "metacyclic-nonabelian"], "only regular subgroup is nonabelian of order 55"),
        "unseeded_orders_agree": derived(True, "seed independence of the automorphism search"),
        "complement_orders_agree": derived(True, "Aut(G) = Aut(complement G)"),
    }, _psl2_11, criteria=(1,))


# -- PSL(3,2) on the 21 flags -------------------------------------------------

def _psl3_2(clock: Clock) -> tuple[Facts, Facts]:
    fa = build_psl3_2_degree21()
    psl = fa.psl
    orbs = orbital_digraphs(psl)
    auts = {o.index: clock.aut(o.digraph, psl) for o in orbs}
    v4 = [o for o in orbs if o.valency == 4]
    selections = []
    bad_graphs = []
    for r in range(len(orbs) + 1):
        for sel in itertools.combinations(range(len(orbs)), r):
            g = generalized_orbital_digraph(orbs, set(sel))
            a = clock.aut(g, psl)
            imprim = a.order == 168 and not is_primitive(a.group)
            selections.append({"orbitals": list(sel), "graph": g.is_graph(), "aut_order": a.order})
            if imprim and g.is_graph():
                bad_graphs.append(list(sel))
    reg = find_regular_subgroup(psl)
    wit = find_semiregular_pair_metacirculant(auts[v4[0].index].group, 3, 7)
    seeded = [auts[o.index].order for o in orbs]
    unseeded_ok, comp_ok = _orders_agree(clock, [o.digraph for o in orbs], psl, seeded)
    facts = {
        "order": psl.order(),
        "suborbit_sizes": _sizes(psl),
        "valency4_self_paired": [o.self_paired for o in v4],
        "valency4_aut_orders": [auts[o.index].order for o in v4],
        "selections_examined": len(selections),
        "imprimitive_psl_graphs": bad_graphs,
        "psl_imprimitive_and_quasiprimitive": (not is_primitive(psl)) and is_quasiprimitive(psl),
        "full_flag_group_primitive": is_primitive(fa.with_duality),
        "regular_subgroup": None if reg is None else [reg.group.order(), reg.shape],
        "valency4_metacirculant_witness": wit is not None,
        "unseeded_orders_agree": unseeded_ok,
        "complement_orders_agree": comp_ok,
    }
    recorded = {
        "valency2_self_paired": [o.self_paired for o in orbs if o.valency == 2],
        "orbitals": [{"index": o.index, "valency": o.valency, "paired": o.paired_index,
                      "aut_order": auts[o.index].order} for o in orbs],
        "selections_with_aut_168": sum(1 for s in selections if s["aut_order"] == 168),
    }
    return facts, recorded


PSL3_2 = CensusCase(
    "psl3-2@21", "PSL(3,2) on the 21 flags of the Fano plane", {
        "order": derived(168, "|GL(3,2)|"),
        "suborbit_sizes": paper([1, 2, 2, 4, 4, 8], "suborbit lengths 1, 2^2, 4^2, 8"),
        "valency4_self_paired": paper([False, False], "the length-4 suborbits are not self-paired"),
        "valency4_aut_orders": paper([168, 168], "full automorphism group is PSL(3,2)"),
        "selections_examined": derived(32, "all 2^5 orbital selections"),
        "imprimitive_psl_graphs": paper([], "such a digraph cannot be a graph"),
        "psl_imprimitive_and_quasiprimitive": paper(True, "quasiprimitive G with blocks of size q"),
        "full_flag_group_primitive": paper(True, "the action of PGammaL(3,2) is primitive"),
        "regular_subgroup": paper([21, "metacyclic-nonabelian"], "transitive nonabelian subgroup of order 21"),
        "valency4_metacirculant_witness": paper(True, "the digraph is a metacirculant"),
        "unseeded_orders_agree": derived(True, "seed independence of the automorphism search"),
        "complement_orders_agree": derived(True, "Aut(G) = Aut(complement G)"),
    }, _psl3_2, criteria=(2,))


# -- PSL(2,13) on 91 points ---------------------------------------------------

def _psl2_13(clock: Clock) -> tuple[Facts, Facts]:
    lp = build_psl2_13_degree91()
    psl, pgl = lp.psl, lp.pgl
    orbs = orbital_digraphs(psl)
    swap = _swap_map(orbs, _outside(pgl, psl))
    auts = {o.index: clock.aut(o.digraph, psl) for o in orbs}
    by = lambda size, sp: [o for o in orbs if o.valency == size and o.self_paired == sp]  # noqa: E731
    inventory = {f"{o.valency}/{'self' if o.self_paired else 'paired'}": 0 for o in orbs}
    for o in orbs:
        inventory[f"{o.valency}/{'self' if o.self_paired else 'paired'}"] += 1

    two_arc = [o.index for o in orbs if is_2_arc_transitive(o.digraph, auts[o.index])]

    def group(os):
        ords = sorted(auts[o.index].order for o in os)
        return ords

    def iso(a, b):
        return are_isomorphic(a.digraph, b.digraph, psl, psl) is not None

    def union_fact(os):
        g = generalized_orbital_digraph(orbs, {o.index for o in os})
        a = clock.aut(g, psl)
        return [a.order, is_arc_transitive(g, a)]

    s4, s6, p12, s12 = by(4, True), by(6, True), by(12, False), by(12, True)
    low4 = [o for o in s4 if auts[o.index].order == 1092]
    low12 = [o for o in s12 if auts[o.index].order == 1092]
    high12 = [o for o in s12 if auts[o.index].order == 2184]

    # every nonempty proper union of orbitals
    listed = [frozenset([o.index]) for o in orbs]
    listed += [frozenset(o.index for o in low4), frozenset(o.index for o in p12),
               frozenset(o.index for o in low12)]
    mismatch, extra_symmetric, orders = [], [], set()
    idx = [o.index for o in orbs]
    for r in range(1, len(idx)):
        for sel in itertools.combinations(idx, r):
            clock.check()
            sel = frozenset(sel)
            g = generalized_orbital_digraph(orbs, sel)
            a = clock.aut(g, psl)
            orders.add(a.order)
            want = 2184 if frozenset(swap[i] for i in sel) == sel else 1092
            if a.order != want:
                mismatch.append(sorted(sel))
            if sel not in listed and is_arc_transitive(g, a):
                extra_symmetric.append(sorted(sel))
    seeded = [auts[o.index].order for o in orbs]
    unseeded_ok, comp_ok = _orders_agree(clock, [o.digraph for o in orbs], psl, seeded)
    facts = {
        "order": psl.order(),
        "stabilizer_order": psl.stabilizer(0).order(),
        "primitive": is_primitive(psl),
        "suborbit_sizes": _sizes(psl),
        "inventory": inventory,
        "two_arc_transitive_valencies": sorted(orbs[i].valency for i in two_arc),
        "size4_aut_orders": group(s4),
        "size4_low_pair_isomorphic": len(low4) == 2 and iso(*low4),
        "size4_low_pair_union": union_fact(low4),
        "size4_high_symmetric": [is_arc_transitive(o.digraph, auts[o.index])
                                 for o in s4 if auts[o.index].order == 2184],
        "size6": [auts[s6[0].index].order, is_arc_transitive(s6[0].digraph, auts[s6[0].index])],
        "paired12_aut_orders": group(p12),
        "paired12_union": union_fact(p12),
        "self12_aut_orders": group(s12),
        "self12_all_symmetric": all(is_arc_transitive(o.digraph, auts[o.index]) for o in s12),
        "self12_low_pair_isomorphic": len(low12) == 2 and iso(*low12),
        "self12_low_pair_union": union_fact(low12),
        "self12_high_pair_isomorphic": len(high12) == 2 and iso(*high12),
        "unions_examined": 2 ** len(idx) - 2,
        "union_order_mismatches": mismatch,
        "union_aut_orders": sorted(orders),
        "unlisted_symmetric_unions": extra_symmetric,
        "pgl_regular_subgroup": find_regular_subgroup(pgl) is not None,
        "metacirculant_7_13_in_psl": find_semiregular_pair_metacirculant(psl, 7, 13) is not None,
        "unseeded_orders_agree": unseeded_ok,
        "complement_orders_agree": comp_ok,
    }
    recorded = {
        "orbitals": [{"index": o.index, "valency": o.valency, "paired": o.paired_index,
                      "pgl_image": swap[o.index], "aut_order": auts[o.index].order,
                      "two_arc_transitive": o.index in two_arc} for o in orbs],
    }
    return facts, recorded


PSL2_13 = CensusCase(
    "psl2-13@91", "PSL(2,13) on the 91 cosets of A4", {
        "order": derived(1092, "q(q^2-1)/2 at q = 13"),
        "stabilizer_order": paper(12, "point stabilizer A4"),
        "primitive": paper(True, "primitive of degree 7.13"),
        "suborbit_sizes": paper([1, 4, 4, 4, 6] + [12] * 6, "published PSL(2,13) orbital counts"),
        "inventory": paper({"4/self": 3, "6/self": 1, "12/paired": 2, "12/self": 4},
                           "3 + 1 + 2 + 4 orbitals by size and pairing"),
        "two_arc_transitive_valencies": paper([4, 4, 4], "exactly the size-4 orbitals are 2-arc-transitive"),
        "size4_aut_orders": paper([1092, 1092, 2184], "two size-4 graphs have Aut PSL(2,13), one PGL(2,13)"),
        "size4_low_pair_isomorphic": paper(True, "the two PSL size-4 graphs are isomorphic"),
        "size4_low_pair_union": paper([2184, True], "their union is symmetric with Aut PGL(2,13)"),
        "size4_high_symmetric": paper([True], "remaining size-4 graph is symmetric"),
        "size6": paper([2184, True], "size-6 graph is symmetric with Aut PGL(2,13)"),
        "paired12_aut_orders": paper([1092, 1092], "non-self-paired digraphs have Aut PSL(2,13)"),
        "paired12_union": paper([2184, True], "their union is symmetric with Aut PGL(2,13)"),
        "self12_aut_orders": paper([1092, 1092, 2184, 2184], "two self-paired size-12 graphs have Aut PSL(2,13)"),
        "self12_all_symmetric": paper(True, "all four self-paired size-12 graphs are symmetric"),
        "self12_low_pair_isomorphic": paper(True, "the two PSL size-12 graphs are isomorphic"),
        "self12_low_pair_union": paper([2184, True], "their union is symmetric with Aut PGL(2,13)"),
        "self12_high_pair_isomorphic": paper(False, "remaining two are non-isomorphic"),
        "unions_examined": derived(1022, "2^10 - 2 nonempty proper selections"),
        "union_order_mismatches": paper([], "Aut is PGL(2,13) iff the union is PGL-invariant, else PSL(2,13)"),
        "union_aut_orders": paper([1092, 2184], "only PSL(2,13) or PGL(2,13) occur"),
        "unlisted_symmetric_unions": paper([], "any other union is not symmetric"),
        "pgl_regular_subgroup": paper(False, "Cayley column N for PSL(2,13)"),
        "metacirculant_7_13_in_psl": derived(False, "exhaustive normalizer search over order-13 elements"),
        "unseeded_orders_agree": derived(True, "seed independence of the automorphism search"),
        "complement_orders_agree": derived(True, "Aut(G) = Aut(complement G)"),
    }, _psl2_13, criteria=(3,))


# -- M23 on 253 heptads -------------------------------------------------------

def _m23(clock: Clock) -> tuple[Facts, Facts]:
    g, hept = build_m23_degree253()
    orbs = orbital_digraphs(g)
    auts = [clock.aut(o.digraph, g) for o in orbs]
    reg = find_regular_subgroup(g)
    wit = find_semiregular_pair_metacirculant(g, 11, 23)
    seeded = [a.order for a in auts]
    unseeded_ok, comp_ok = _orders_agree(clock, [o.digraph for o in orbs], g, seeded)
    two_arc = [is_2_arc_transitive(o.digraph, a) for o, a in zip(orbs, auts)]
    facts = {
        "stabilizer_order": g.stabilizer(0).order(),
        "suborbit_sizes": _sizes(g),
        "orbital_valencies": sorted(o.valency for o in orbs),
        "orbitals_are_graphs": all(o.self_paired for o in orbs),
        "aut_orders": seeded,
        "complementary": len(orbs) == 2 and orbs[0].digraph.complement() == orbs[1].digraph,
        "regular_subgroup": None if reg is None else [reg.group.order(), reg.shape],
        "metacirculant_witness": wit is not None,
        "two_arc_transitive": two_arc,
        "unseeded_orders_agree": unseeded_ok,
        "complement_orders_agree": comp_ok,
    }
    d_ok = [(o.valency * (o.valency - 1)) % 40320 != 0 for o in orbs]
    recorded = {"heptad": sorted(hept), "valency_test_d(d-1)_not_dividing_40320": d_ok}
    return facts, recorded


M23 = CensusCase(
    "m23@253", "M23 on the 253 heptads of S(4,7,23)", {
        "stabilizer_order": paper(40320, "stabilizer order 2^7.3^2.5.7"),
        "suborbit_sizes": paper([1, 112, 140], "suborbits of length 112 and 140"),
        "orbital_valencies": paper([112, 140], "orbital graphs of valency 112 and 140"),
        "orbitals_are_graphs": paper(True, "two orbital digraphs which are graphs"),
        "aut_orders": paper([10200960, 10200960], "both graphs have automorphism group M23"),
        "complementary": paper(True, "the two graphs are complements"),
        "regular_subgroup": paper([253, "metacyclic-nonabelian"], "regular Frobenius subgroup of order 253"),
        "metacirculant_witness": paper(True, "also isomorphic to metacirculant graphs"),
        "two_arc_transitive": paper([False, False], "neither graph is 2-arc-transitive"),
        "unseeded_orders_agree": derived(True, "seed independence of the automorphism search"),
        "complement_orders_agree": derived(True, "Aut(G) = Aut(complement G)"),
    }, _m23, criteria=(4,))


# -- MS family helpers --------------------------------------------------------

def line_graph_k6() -> Digraph:
    pairs = list(itertools.combinations(range(6), 2))
    arcs = [(i, j) for i, a in enumerate(pairs) for j, b in enumerate(pairs)
            if i != j and set(a) & set(b)]
    return Digraph.from_arcs(15, arcs)


def _fast_classes(s: int, q: int, graphs: dict[MSParams, Digraph]) -> list[frozenset[MSParams]]:
    """Classes of equal digraphs under the q*s maps scalar(i) frobenius^j."""
    ctx = ms_context(s, q)
    by_graph = {g: p for p, g in graphs.items()}
    fr = ctx.frobenius_perm()
    maps = [ctx.scalar_perm(i) * fr ** j for j in range(s) for i in range(q)]
    parent = {p: p for p in graphs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, g in graphs.items():
        for m in maps:
            other = by_graph.get(g.relabel(m))
            if other is None:
                raise AssertionError(f"{p} not closed under the scalar/Frobenius maps")
            parent[find(other)] = find(p)
    out: dict[MSParams, set] = {}
    for p in graphs:
        out.setdefault(find(p), set()).add(p)
    return [frozenset(c) for c in out.values()]


def _family_sweep(s: int, q: int, clock: Clock) -> dict:
    """Compute Aut, canonical classes and fast answers for every nondegenerate (S, T)."""
    ctx = ms_context(s, q)
    sl = ctx.sl2()
    graphs = {p: ms_digraph(p) for p in nondegenerate_params(s, q)}
    auts = {p: clock.aut(g, sl) for p, g in graphs.items()}
    canon: dict[str, set] = {}
    for p, a in auts.items():
        clock.check()
        canon.setdefault(a.canonical_form, set()).add(p)
    canon_classes = {frozenset(c) for c in canon.values()}
    fast_classes = set(_fast_classes(s, q, graphs))
    fast_mismatch, fast_aut = [], {}
    for p, g in graphs.items():
        if classify_ms(p).case != "imprimitive":
            continue
        clock.check()
        fa = ms_aut_fast(p, g)
        fast_aut[p] = fa
        if fa.order != auts[p].order:
            fast_mismatch.append(str(p))
    # pairwise fast iso on one representative pair per class boundary
    return {"ctx": ctx, "sl": sl, "graphs": graphs, "auts": auts, "canon": canon_classes,
            "fast": fast_classes, "fast_aut_mismatch": fast_mismatch, "fast_aut": fast_aut}


def _predicted_symmetric(s: int, q: int, strict: bool = True) -> dict[frozenset[int], tuple]:
    """T-sets of nondegenerate symmetric MS graphs with S empty and imprimitive Aut.

    Values are ``(b, k)`` (``b = 0`` for the ``T = {-2k}`` family).  With
    ``strict`` the bound ``1 < a/b < q - 1`` is used as printed; otherwise
    ``a/b = q - 1`` is admitted too.  T-sets whose graph is primitive are
    dropped either way.
    """
    a = ms_order_2_of(q)
    out: dict[frozenset[int], tuple] = {}
    for k in range(q):
        out[frozenset({(-2 * k) % q})] = (0, k)
    for b in range(1, a):
        if a % b or gcd(a, s) % b:
            continue
        r = a // b
        if not (1 < r and (r < q - 1 if strict else r <= q - 1)):
            continue
        for k in range(q):
            for i in range(1, q):
                T = frozenset((i * pow(2, b * j, q) - 2 * k) % q for j in range(r))
                if classify_ms(MSParams(s, q, frozenset(), T)).case == "imprimitive":
                    out.setdefault(T, (b, k))
    return out


def _ms_symmetric_facts(s: int, q: int, sweep: dict, clock: Clock) -> tuple[Facts, Facts]:
    ctx, graphs, auts = sweep["ctx"], sweep["graphs"], sweep["auts"]
    sym = {}
    for p, g in graphs.items():
        if classify_ms(p).case != "imprimitive" or not g.is_graph():
            continue
        clock.check()
        if is_arc_transitive(g, auts[p]):
            sym[p] = auts[p]
    a = ms_order_2_of(q)
    sl_order = ctx.sl2_order
    strict = _predicted_symmetric(s, q, strict=True)
    relaxed = _predicted_symmetric(s, q, strict=False)
    computed_T = sorted(sorted(p.T) for p in sym if not p.S)
    facts: Facts = {
        "symmetric_have_empty_S": all(not p.S for p in sym),
        "symmetric_T_sets": computed_T,
        "type1_aut_orders": sorted({auts[p].order for p in sym if len(p.T) == 1}),
        "type1_valency": sorted({graphs[p].valency() for p in sym if len(p.T) == 1}),
        "type1_valency_printed": sorted({graphs[p].valency() for p in sym if len(p.T) == 1}),
        "type1_one_class": len({m for m in sweep["canon"] for p in sym if len(p.T) == 1
                                and p in m}) == 1,
    }
    # scalar conjugates of Sigma L: T = {-2k} has Aut d^-k SigmaL d^k
    sigma = PermutationGroup(list(ctx.sl2().generators) + [ctx.frobenius_perm()], ctx.degree,
                             order=sl_order * s)
    conj_ok = []
    for k in range(q):
        p = MSParams(s, q, frozenset(), frozenset({(-2 * k) % q}))
        dk = ctx.scalar_perm(k)
        want = sigma.conjugate(dk)
        conj_ok.append(auts[p].group.same_group(want) if p in auts else False)
    facts["type1_aut_is_scalar_conjugate"] = all(conj_ok)
    conjugates = [sigma.conjugate(ctx.scalar_perm(k)) for k in range(q)]
    facts["type1_conjugates_distinct"] = all(
        not conjugates[i].same_group(conjugates[j]) for i in range(q) for j in range(i))

    type2 = {T: bk for T, bk in relaxed.items() if bk[0] > 0}
    per_bk: dict[str, int] = {}
    classes_per_b: dict[str, int] = {}
    aut_per_b: dict[str, list[int]] = {}
    for T, (b, k) in type2.items():
        per_bk[f"b={b},k={k}"] = per_bk.get(f"b={b},k={k}", 0) + 1
    for b in sorted({bk[0] for bk in type2.values()}):
        ps = [MSParams(s, q, frozenset(), T) for T, bk in type2.items() if bk[0] == b]
        classes = {m for m in sweep["canon"] for p in ps if p in m}
        classes_per_b[f"b={b}"] = len(classes)
        aut_per_b[f"b={b}"] = sorted({auts[p].order for p in ps})
    facts["type2_distinct_per_bk"] = per_bk
    facts["type2_classes_per_b"] = classes_per_b
    facts["type2_aut_orders_per_b"] = aut_per_b
    facts["printed_classification_matches"] = sorted(sorted(T) for T in strict) == computed_T
    facts["relaxed_classification_matches"] = sorted(sorted(T) for T in relaxed) == computed_T
    recorded = {
        "order_of_2_mod_q": a,
        "symmetric": [{"params": str(p), "aut_order": auts[p].order,
                       "valency": graphs[p].valency()} for p in sorted(sym, key=str)],
        "printed_reading_missing": sorted(sorted(T) for T in relaxed if T not in strict),
        "type2_L_order_per_b": {k: [o // sl_order for o in v] for k, v in aut_per_b.items()},
    }
    return facts, recorded


def _ms_common(s: int, q: int, clock: Clock) -> tuple[Facts, Facts, dict]:
    ctx = ms_context(s, q)
    sl = ctx.sl2()
    sizes = _sizes(sl)
    systems = all_block_systems(sl)
    size_q = [bs for bs in systems if bs.block_size == q]
    fib = ctx.fibres()
    ind = induced_action(sl, fib)
    sweep = _family_sweep(s, q, clock)
    orbital_mismatch = [str(p) for p in all_params(s, q) if ms_digraph(p) != ms_from_orbitals(p)]
    facts = {
        "degree": ctx.degree,
        "sl2_order": sl.order(),
        "suborbit_sizes": sizes,
        "unique_q_block_system": len(size_q) == 1 and size_q[0].blocks() == fib.blocks(),
        "induced_order_on_fibres": ind.group.order(),
        "fixer_of_fibres_trivial": fixer(sl, fib).is_trivial(),
        "construction_matches_orbitals": orbital_mismatch,
        "fast_classes_match_canonical": sweep["fast"] == sweep["canon"],
        "fast_aut_mismatches": sweep["fast_aut_mismatch"],
        "fast_aut_checked": len(sweep["fast_aut"]),
    }
    recorded = {
        "block_systems": [[bs.block_count, bs.block_size] for bs in systems],
        "nondegenerate_count": len(sweep["graphs"]),
        "isomorphism_classes": len(sweep["canon"]),
        "length1_suborbits_including_trivial": sizes.count(1),
    }
    return facts, recorded, sweep


def _ms_expected_common(s: int, q: int, imprimitive: int) -> dict[str, Expected]:
    p = 2 ** s + 1
    order = 2 ** s * (4 ** s - 1)
    return {
        "degree": derived(p * q, "(2^s + 1) q vertices"),
        "sl2_order": derived(order, "2^s (2^2s - 1)"),
        "suborbit_sizes": paper([1] * q + [2 ** s] * q, "q suborbits of length 1 and q of length 2^s"),
        "unique_q_block_system": paper(True, "the unique block system with blocks of size q"),
        "induced_order_on_fibres": derived(order, "faithful action on PG(1,2^s)"),
        "fixer_of_fibres_trivial": paper(True, "fix of PG(1,2^s) in SL(2,2^s) is trivial"),
        "construction_matches_orbitals": derived([], "orbital-union ground truth for every (S, T)"),
        "fast_classes_match_canonical": derived(True, "canonical forms from the general search"),
        "fast_aut_mismatches": derived([], "general automorphism search"),
        "fast_aut_checked": derived(imprimitive, "number of nondegenerate imprimitive (S, T)"),
    }


def _ms_s2(clock: Clock) -> tuple[Facts, Facts]:
    facts, recorded, sweep = _ms_common(2, 3, clock)
    graphs, auts = sweep["graphs"], sweep["auts"]
    lk6 = line_graph_k6()
    tri = [MSParams(2, 3, frozenset({1, 2}), frozenset({t})) for t in range(3)]
    co_tri = [p.complement() for p in tri]
    facts["line_graph_triple_orders"] = [auts[p].order for p in tri]
    facts["line_graph_triple_one_class"] = any(set(tri) <= c for c in sweep["canon"])
    facts["triple_isomorphic_to_line_graph"] = are_isomorphic(graphs[tri[0]], lk6) is not None
    facts["triple_isomorphic_to_line_graph_complement"] = \
        are_isomorphic(graphs[tri[0]], lk6.complement()) is not None
    facts["complement_triple_isomorphic_to_line_graph"] = all(
        are_isomorphic(graphs[p], lk6) is not None for p in co_tri)
    facts["line_graph_predicted"] = [classify_ms(p).predicted_order for p in tri]
    recorded["triple_params"] = [str(p) for p in tri]
    recorded["complement_triple_params"] = [str(p) for p in co_tri]
    wr = []
    for S in (frozenset(), frozenset({1}), frozenset({2})):
        p = MSParams(2, 3, S, frozenset(range(3)))
        g = ms_digraph(p)
        cay = cayley_digraph(list(range(3)), lambda a, b: (a + b) % 3, S)
        lex = lexicographic_product(Digraph.complete(5), cay)
        wr.append([clock.aut(g).order, classify_ms(p).predicted_order,
                   are_isomorphic(g, lex) is not None])
    facts["degenerate_wreath"] = wr
    return facts, recorded


MS_S2 = CensusCase(
    "ms-s2", "MS digraphs X(4,3,S,T) of order 15",
    {**_ms_expected_common(2, 3, 18),
     "line_graph_triple_orders": paper([720, 720, 720], "line graph of K6 with Aut S6"),
     "line_graph_triple_one_class": paper(True, "T = {0}, {1}, {2} give isomorphic graphs"),
     "triple_isomorphic_to_line_graph": paper(True, "S = Z_3^*, |T| = 1 is the line graph of K6"),
     "triple_isomorphic_to_line_graph_complement": derived(True, "valency 6 = 14 - 8"),
     "complement_triple_isomorphic_to_line_graph": derived(True, "S empty, |T| = 2 has valency 8"),
     "line_graph_predicted": derived([720, 720, 720], "|S6|"),
     "degenerate_wreath": derived([[933120, 933120, True], [29160, 29160, True],
                                   [29160, 29160, True]],
                                  "|S5| |Aut Cay(Z3,S)|^5 and K5 wr Cay(Z3,S)"),
     }, _ms_s2, criteria=(5,))


def _ms_s4(q: int) -> Callable[[Clock], tuple[Facts, Facts]]:
    def run(clock: Clock) -> tuple[Facts, Facts]:
        facts, recorded, sweep = _ms_common(4, q, clock)
        f2, r2 = _ms_symmetric_facts(4, q, sweep, clock)
        facts.update(f2)
        recorded.update(r2)
        return facts, recorded
    return run


_SIGMA_L_16 = 4080 * 4

MS_S4_Q3 = CensusCase(
    "ms-s4-q3", "MS digraphs X(16,3,S,T) of order 51",
    {**_ms_expected_common(4, 3, 24),
     "symmetric_have_empty_S": paper(True, "symmetric imprimitive MS graphs have S empty"),
     "symmetric_T_sets": paper([[0], [1], [2]], "T = {-2k}; no b with 1 < a/b < q - 1 when q = 3"),
     "type1_aut_orders": derived([_SIGMA_L_16], "|Sigma L(2,16)| = 4080 . 4"),
     "type1_valency": derived([16], "one orbital of valency 2^s"),
     "type1_valency_printed": paper([3], "T = {0} has valency q"),
     "type1_one_class": paper(True, "the scalars permute the T = {t} graphs cyclically"),
     "type1_aut_is_scalar_conjugate": paper(True, "T = {-2k} has Aut d^-k Sigma L d^k"),
     "type1_conjugates_distinct": paper(True, "scalar conjugates of Sigma L are distinct modulo D_l"),
     "printed_classification_matches": paper(True, "classification of symmetric MS graphs"),
     }, _ms_s4(3), criteria=(6,))

MS_S4_Q5 = CensusCase(
    "ms-s4-q5", "MS digraphs X(16,5,S,T) of order 85",
    {**_ms_expected_common(4, 5, 470),
     "symmetric_have_empty_S": paper(True, "symmetric imprimitive MS graphs have S empty"),
     "symmetric_T_sets": paper(sorted([[t] for t in range(5)]
                                      + [list(c) for c in itertools.combinations(range(5), 2)]),
                               "T = {-2k} or T = U_{2,i,k}"),
     "type1_aut_orders": derived([_SIGMA_L_16], "|Sigma L(2,16)| = 4080 . 4"),
     "type1_valency": derived([16], "one orbital of valency 2^s"),
     "type1_valency_printed": paper([5], "T = {0} has valency q"),
     "type1_one_class": paper(True, "the five T = {t} graphs are isomorphic"),
     "type1_aut_is_scalar_conjugate": paper(True, "T = {-2k} has Aut d^-k Sigma L d^k"),
     "type1_conjugates_distinct": paper(True, "scalar conjugates of Sigma L are distinct modulo D_l"),
     "type2_distinct_per_bk": paper({f"b=2,k={k}": 2 for k in range(5)},
                                    "(q-1)b/a distinct graphs for each b and k"),
     "type2_classes_per_b": paper({"b=2": 2}, "(q-1)/b graphs up to isomorphism"),
     "type2_aut_orders_per_b": derived({"b=2": [4080 * 2]}, "|<SL, L>| with |L| = s/b, as |L| <= |<f>| = s"),
     "printed_classification_matches": paper(True, "classification of symmetric MS graphs"),
     }, _ms_s4(5), criteria=(6,))


# -- scalar conjugation does not normalize <SL, L> ---------------------------

def _diagonals(clock: Clock) -> tuple[Facts, Facts]:
    s, q, b = 4, 5, 1
    ctx = ms_context(s, q)
    fr = ctx.frobenius_perm()
    fb = fr ** b
    G = PermutationGroup(list(ctx.sl2().generators) + [fb], ctx.degree)
    order = G.order()
    moved, witnesses = [], []
    for i in range(1, q):
        clock.check()
        z = ctx.scalar_perm(i)
        conj = [(~z) * g * z for g in G.generators]
        outside = [j for j, h in enumerate(conj) if not G.contains(h)]
        moved.append(bool(outside))
        witnesses.append(outside[:1])
    commutator = []
    for i in range(q):
        z = ctx.scalar_perm(i)
        for bb in (1, 2):
            f_b = fr ** bb
            commutator.append((~z) * f_b * z * (~f_b) == z ** ((1 << bb) - 1))
    facts = {
        "group_order": order,
        "nontrivial_scalars": [not ctx.scalar_perm(i).is_identity() for i in range(1, q)],
        "scalar_fixer": all(ctx.scalar_perm(q * j).is_identity() for j in range(ctx.ell)),
        "conjugate_differs": moved,
        "commutator_identity": all(commutator),
        "frobenius_order": fr.order(),
        "frobenius_normalizes_sl": all(ctx.sl2().contains((~fr) * g * fr)
                                       for g in ctx.sl2().generators),
    }
    return facts, {"witness_generator_indices": witnesses}


DIAGONALS = CensusCase(
    "ms-diagonals-s4-q5", "Scalar conjugates of <SL(2,16), f> on D_3 blocks", {
        "group_order": derived(4080 * 4, "|SL(2,16)| . |<f>|"),
        "nontrivial_scalars": paper([True] * 4, "z/D_l != 1 for the four nontrivial classes"),
        "scalar_fixer": paper(True, "fix_Z(D_l) = <sqrt(w)^q I>"),
        "conjugate_differs": paper([True] * 4, "z^-1 <SL, L> z differs from <SL, L> modulo D_l"),
        "commutator_identity": paper(True, "z^-1 f^b z f^-b = z^(2^b - 1)"),
        "frobenius_order": derived(4, "entrywise squaring has order s"),
        "frobenius_normalizes_sl": derived(True, "f is an automorphism of SL(2,2^s)"),
    }, _diagonals, criteria=(7,))


# -- wreath products of order 15 ---------------------------------------------

def _wreath(clock: Clock) -> tuple[Facts, Facts]:
    cay = cayley_digraph(list(range(3)), lambda a, b: (a + b) % 3, {1})
    lex = lexicographic_product(Digraph.complete(5), cay)
    out = {
        "k5_wr_c3_order": clock.aut(lex).order,
        "k5_wr_c3_is_graph": lex.is_graph(),
        "degenerate_ms_isomorphic": are_isomorphic(
            ms_digraph(MSParams(2, 3, frozenset({1}), frozenset(range(3)))), lex) is not None,
    }
    empty_inner = lexicographic_product(Digraph.complete(5), Digraph.empty(3))
    out["complete_multipartite_order"] = clock.aut(empty_inner).order
    disjoint = lexicographic_product(Digraph.empty(5), cay)
    out["disjoint_copies_order"] = clock.aut(disjoint).order
    return out, {}


WREATH = CensusCase(
    "wreath-order-15", "Wreath products K5 wr Cay(Z3, S)", {
        "k5_wr_c3_order": derived(120 * 3 ** 5, "|S5| |Aut Cay(Z3,{1})|^5"),
        "k5_wr_c3_is_graph": derived(False, "Cay(Z3,{1}) is a directed triangle"),
        "degenerate_ms_isomorphic": paper(True, "T = Z_q gives K_p wr Cay(Z_q, S)"),
        "complete_multipartite_order": derived(120 * 6 ** 5, "|S5| |S3|^5"),
        "disjoint_copies_order": derived(120 * 3 ** 5, "|S5| |Z3|^5"),
    }, _wreath, criteria=(5,))


# -- metacirculant equivalence at small orders -------------------------------

def _groups_of_order(p: int, q: int) -> list[tuple[str, list, Callable]]:
    n = p * q
    out = [(f"Z{n}", list(range(n)), lambda a, b, n=n: (a + b) % n)]
    if (p - 1) % q == 0:
        r = next(x for x in range(2, p) if pow(x, q, p) == 1)
        elems = [(a, b) for b in range(q) for a in range(p)]
        out.append((f"Z{p}:Z{q}", elems,
                    lambda x, y, r=r: ((x[0] + pow(r, x[1], p) * y[0]) % p, (x[1] + y[1]) % q)))
    return out


def _meta_check(g: Digraph, p: int, q: int, clock: Clock, known: PermutationGroup | None = None
                ) -> dict:
    a = clock.aut(g, known)
    grp = a.group
    systems = all_block_systems(grp)
    admits_p = any(bs.block_size == p for bs in systems)
    if not admits_p:
        reg = find_regular_subgroup(grp)
        if reg is not None:
            admits_p = any(bs.block_size == p for bs in all_block_systems(reg.group))
    wit = find_semiregular_pair_metacirculant(grp, q, p)
    kernel_ok = True
    if wit is None:
        kernel_ok = all(fixer(grp, bs).is_trivial() for bs in systems if bs.block_size == q)
    return {"admits_p": admits_p, "witness": wit is not None, "kernel_ok": kernel_ok,
            "order": a.order}


def _metacirculant_case(p: int, q: int, samples: int) -> Callable[[Clock], tuple[Facts, Facts]]:
    def run(clock: Clock) -> tuple[Facts, Facts]:
        rng = random.Random(p * q)
        n = p * q
        seen: set[str] = set()
        rows = []
        inconclusive = 0
        corpus: list[tuple[str, Digraph, PermutationGroup | None]] = []
        for name, elems, mul in _groups_of_order(p, q):
            others = elems[1:]
            tries = 0
            while sum(1 for c in corpus if c[0] == name) < samples and tries < 50 * samples:
                tries += 1
                S = [x for x in others if rng.random() < 0.5]
                if not S or len(S) == len(others):
                    continue
                g = cayley_digraph(elems, mul, S)
                if not (g.is_connected() and g.complement().is_connected()):
                    continue
                lm = PermutationGroup(left_multiplications(elems, mul), n)
                cf = canonical_form(g, lm)
                if cf in seen:
                    continue
                seen.add(cf)
                corpus.append((name, g, lm))
        extra = []
        if n == 21:
            fa = build_psl3_2_degree21()
            o = [x for x in orbital_digraphs(fa.psl) if x.valency == 4][0]
            extra.append(("PSL(3,2) orbital", o.digraph, fa.psl))
        if n == 15:
            for prm in (MSParams(2, 3, frozenset(), frozenset({0})),
                        MSParams(2, 3, frozenset({1}), frozenset({0, 1}))):
                extra.append((str(prm), ms_digraph(prm), ms_context(2, 3).sl2()))
        cayley_names = {x[0] for x in _groups_of_order(p, q)}
        failures, cayley_without_witness = [], 0
        for name, g, known in corpus + extra:
            clock.check()
            try:
                r = _meta_check(g, p, q, clock, known)
            except SearchInconclusive:
                inconclusive += 1
                continue
            rows.append({"source": name, **r})
            if r["admits_p"] != r["witness"] or not r["kernel_ok"]:
                failures.append(name)
            if name in cayley_names and not r["witness"]:
                cayley_without_witness += 1
        # the metacirculant construction itself
        alpha = next((x for x in range(2, p) if pow(x, q, p) == 1), 1)
        samples_mp = [MetacirculantParams(q, p, 1, (frozenset({1, p - 1}),) + (frozenset(),) * (q - 1)),
                      MetacirculantParams(q, p, alpha, (frozenset({1}), frozenset({0, 2}))
                                          + (frozenset(),) * (q - 2))]
        maps_ok = True
        for mp in samples_mp:
            g = metacirculant(mp)
            rho, sig = metacirculant_maps(mp)
            maps_ok &= g.is_automorphism(rho) and g.is_automorphism(sig)
        facts = {
            "equivalence_failures": failures,
            "cayley_without_witness": cayley_without_witness,
            "metacirculant_maps_are_automorphisms": maps_ok,
        }
        recorded = {"digraphs_checked": len(rows), "inconclusive_searches": inconclusive,
                    "non_metacirculant_examples": [r["source"] for r in rows if not r["witness"]]}
        return facts, recorded
    return run


def _meta(p: int, q: int, samples: int) -> CensusCase:
    return CensusCase(
        f"metacirculant-{p * q}", f"Blocks of size p versus metacirculant witnesses at order {p * q}", {
            "equivalence_failures": paper([], "blocks of size p exactly for (q,p)-metacirculants; "
                                              "otherwise the kernel on blocks of size q is trivial"),
            "cayley_without_witness": derived(0, "every Cayley digraph of order pq is a metacirculant"),
            "metacirculant_maps_are_automorphisms": derived(True, "rho and sigma preserve the arc rule"),
        }, _metacirculant_case(p, q, samples))


# -- stretch: primitive symplectic case and s = 8 ----------------------------

def _pgsp(clock: Clock) -> tuple[Facts, Facts]:
    ctx = ms_context(4, 5)
    sl = ctx.sl2()
    out = []
    for p in nondegenerate_params(4, 5):
        c = classify_ms(p)
        if c.case == "primitive-PGammaSp":
            a = clock.aut(ms_digraph(p), sl)
            out.append([a.order == c.predicted_order, is_primitive(a.group)])
    return {"primitive_cases": out}, {"predicted_order": psgammasp4_order(4)}


PGSP = CensusCase(
    "ms-s4-q5-pgsp", "Primitive MS graphs of order 85 (PGammaSp(4,4))", {
        "primitive_cases": paper([[True, True]] * 10,
                                 "S = Z_q^*, |T| = 1 and complements have Aut d^-1 PGammaSp(4,4) d"),
    }, _pgsp, stretch=True)


def _s8(clock: Clock) -> tuple[Facts, Facts]:
    out = {}
    s = 8
    sigma = 16776960 * 8
    ctx = ms_context(s, 3)
    graphs = {p: ms_digraph(p) for p in nondegenerate_params(s, 3)}
    fast = {}
    for p, g in graphs.items():
        clock.check()
        fast[p] = ms_aut_fast(p, g).order
    out["q3_type1_orders"] = sorted({fast[p] for p in graphs if not p.S and len(p.T) == 1})
    out["q3_fast_classes"] = len(_fast_classes(s, 3, graphs))
    general = {p: clock.aut(g, ctx.sl2()).order for p, g in graphs.items()}
    out["q3_fast_matches_general"] = general == fast
    for q in (5, 17):
        clock.check()
        p = MSParams(s, q, frozenset(), frozenset({0}))
        out[f"q{q}_type1_order"] = ms_aut_fast(p).order
    return out, {}


S8 = CensusCase(
    "ms-s8", "MS digraphs with s = 8 (orders 771, 1285, 4369)", {
        "q3_type1_orders": derived([16776960 * 8], "|Sigma L(2,256)|"),
        "q3_fast_matches_general": derived(True, "general automorphism search"),
        "q5_type1_order": derived(16776960 * 8, "|Sigma L(2,256)|"),
        "q17_type1_order": derived(16776960 * 8, "|Sigma L(2,256)|"),
    }, _s8, stretch=True)


# -- rows of the simply primitive table at covered degrees ------------------

PRIMITIVE_ROWS = [
    ("A_{qp}", "qp", "0,qp-1", "Y"),
    ("A_p", "p(p-1)/2", "2(p-2),(p-2)(p-3)/2", "Y*"),
    ("A_{p+1}", "p(p+1)/2", "2(p-1),(p-1)(p-2)/2", "N\u2020"),
    ("A_7", "5\u00b77", "**4**,12,18", "N"),
    ("PSL(4,2)", "5\u00b77", "16,18", "N"),
    ("PSL(5,2)", "5\u00b731", "42,112", "Y"),
    ("\u03a9\u00b1(2d,2)", "(2^d\u22131)(2^d\u00b11)", "2^{2d-2},2(2^{d-1}\u22131)(2^{d-2}\u00b11)", "N"),
    ("PSp(4,k)", "(k^2+1)(k+1)", "k^2+k,k^3 (k even)", "N\u2020"),
    ("PSL(2,k^2)", "k(k^2+1)/2", "k^2-1,(k^2-k)/2,k^2\u00b1k (k \u2261 1 mod 4)", "N"),
    ("PSL(2,k^2)", "k(k^2+1)/2", "k^2-1,(k^2+k)/2,k^2\u00b1k (k \u2261 3 mod 4)", "N"),
    ("PSL(2,p)", "p(p\u22131)/2", "(p\u00b11)/2,p\u00b11 or (p\u00b11)/4,2(p-1)", "Y**"),
    ("G = PGL(2,7)", "3\u00b77", "4,8", "Y"),
    ("G = PGL(2,11)", "5\u00b711", "**4**,6,8,12,24", "Y"),
    ("PSL(2,13)", "7\u00b713", "**4**,6,12,24", "N"),
    ("PSL(2,19)", "3\u00b719", "**6**,20,30", "Y"),
    ("PSL(2,23)", "11\u00b723", "**4**,6,8,12,24", "Y"),
    ("PSL(2,29)", "7\u00b729", "12,20,30,60", "N#"),
    ("PSL(2,59)", "29\u00b759", "**6**,10,12,20,30,60", "Y"),
    ("PSL(2,61)", "31\u00b761", "**6**,10,12,20,30,60", "N"),
    ("M_{22}", "7\u00b711", "**16**,60", "N"),
    ("M_{23}", "11\u00b723", "112,140", "Y"),
]


def primitive_row(label: str, p: int, q: int, group: PermutationGroup, clock: Clock,
               overgroups: tuple[PermutationGroup, ...] = ()) -> list[str]:
    """Recompute a row: valencies of the orbital graphs of ``group`` (bold when
    2-arc-transitive) and whether ``group`` or an overgroup has a regular subgroup."""
    orbs = orbital_digraphs(group)
    done, cells = set(), []
    for o in orbs:
        if o.index in done:
            continue
        done |= {o.index, o.paired_index}
        g = generalized_orbital_digraph(orbs, {o.index, o.paired_index})
        a = clock.aut(g, group)
        bold = is_2_arc_transitive(g, a)
        cells.append((g.valency(), bold))
    vals = ",".join(f"**{v}**" if b else str(v) for v, b in sorted(set(cells)))
    cayley = "Y" if any(find_regular_subgroup(h) is not None for h in (group, *overgroups)) else "N"
    return [label, f"{min(p, q)}\u00b7{max(p, q)}", vals, cayley]


def _primitive_table(clock: Clock) -> tuple[Facts, Facts]:
    fa = build_psl3_2_degree21()
    l11 = build_psl2_11_degree55()
    l13 = build_psl2_13_degree91()
    m23, _ = build_m23_degree253()
    rows = {
        "G = PGL(2,7)": primitive_row("G = PGL(2,7)", 7, 3, fa.with_duality, clock),
        "G = PGL(2,11)": primitive_row("G = PGL(2,11)", 11, 5, l11.pgl, clock),
        "PSL(2,13)": primitive_row("PSL(2,13)", 13, 7, l13.psl, clock, (l13.pgl,)),
        "M_{23}": primitive_row("M_{23}", 23, 11, m23, clock),
    }
    return rows, {}


PRIMITIVE_TABLE = CensusCase(
    "primitive-table", "Simply primitive rows recomputed at degrees 21, 55, 91 and 253",
    {label: paper([label, qp, val, cay], f"published row for {label}")
     for label, qp, val, cay in PRIMITIVE_ROWS
     if label in ("G = PGL(2,7)", "G = PGL(2,11)", "PSL(2,13)", "M_{23}")},
    _primitive_table)


ALL_CASES: list[CensusCase] = [
    PSL2_11, PSL3_2, PSL2_13, M23, MS_S2, MS_S4_Q3, MS_S4_Q5, DIAGONALS, WREATH,
    _meta(5, 3, 40), _meta(7, 3, 40), _meta(11, 3, 25), _meta(7, 5, 25), PRIMITIVE_TABLE, PGSP, S8,
]


def case_by_id(case_id: str) -> CensusCase:
    for c in ALL_CASES:
        if c.id == case_id:
            return c
    raise KeyError(case_id)
