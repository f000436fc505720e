import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_digraph, small_group_corpus
from pqdigraphs.digraph import (Digraph, LoopError, MetacirculantParams, block_quotient,
                                cayley_digraph, generalized_orbital_digraph, left_multiplications,
                                lexicographic_product, metacirculant, metacirculant_maps,
                                orbital_digraphs)
from pqdigraphs.perm import BlockSystem, Permutation, PermutationGroup, cyclic_group

CORPUS = small_group_corpus()


@st.composite
def digraphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph.from_arcs(n, arcs)


# -- basic structure ----------------------------------------------------------

def test_loops_rejected():
    with pytest.raises(LoopError):
        Digraph.from_arcs(3, [(1, 1)])


def test_complete_and_empty():
    k = Digraph.complete(4)
    assert k.arc_count() == 12 and k.complement() == Digraph.empty(4)
    assert Digraph.empty(3).complement() == Digraph.complete(3)


@given(digraphs())
def test_complement_involution(g):
    assert g.complement().complement() == g
    assert g.arc_count() + g.complement().arc_count() == g.n * (g.n - 1)


@given(digraphs())
def test_text_format_roundtrip(g):
    assert Digraph.from_text(g.to_text()) == g


def test_text_format_parsing(tmp_path):
    text = "# a directed triangle\ndigraph 3\n0: 1\n1: 2  # comment\n2: 0\n"
    g = Digraph.from_text(text)
    assert sorted(g.arcs()) == [(0, 1), (1, 2), (2, 0)]
    path = tmp_path / "t.dg"
    g.write(path)
    assert Digraph.read(path) == g


@pytest.mark.parametrize("text", ["0: 1\n", "digraph 2\n0: 5\n", "digraph 2\n0 1\n", "digraph 2\n0: 0\n"])
def test_text_format_errors(text):
    with pytest.raises(ValueError):
        Digraph.from_text(text)


def test_union_requires_disjoint_arcs():
    a = Digraph.from_arcs(3, [(0, 1)])
    b = Digraph.from_arcs(3, [(1, 2)])
    assert sorted(a.union(b).arcs()) == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        a.union(a)
    with pytest.raises(ValueError):
        a.union(Digraph.empty(4))


def test_connectivity_modes():
    path = Digraph.from_arcs(3, [(0, 1), (1, 2)])
    assert path.is_connected("weak") and not path.is_connected("strong")
    assert not path.is_graph()
    cyc = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert cyc.is_connected("strong")
    with pytest.raises(ValueError):
        cyc.is_connected("sideways")


@given(digraphs(), st.randoms())
def test_relabel_preserves_structure(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(Permutation(perm))
    assert h.arc_count() == g.arc_count()
    assert sorted(h.out_degrees()) == sorted(g.out_degrees())


# -- Cayley digraphs and metacirculants ---------------------------------------

def zmul(n):
    return lambda a, b: (a + b) % n


def test_cayley_examples():
    c5 = cayley_digraph(list(range(5)), zmul(5), {1, 4})
    assert c5.is_graph() and c5.valency() == 2 and c5.is_connected()
    assert cayley_digraph(list(range(6)), zmul(6), set()) == Digraph.empty(6)
    with pytest.raises(ValueError):
        cayley_digraph(list(range(5)), zmul(5), {0})


@given(st.integers(2, 12), st.data())
def test_cayley_left_multiplication_automorphisms(n, data):
    S = data.draw(st.sets(st.integers(1, n - 1)))
    g = cayley_digraph(list(range(n)), zmul(n), S)
    for m in left_multiplications(list(range(n)), zmul(n)):
        assert g.is_automorphism(m)


def test_nonabelian_cayley_automorphisms():
    # Z7 : Z3 with (a,b)(c,d) = (a + 2^b c, b + d)
    elems = [(a, b) for b in range(3) for a in range(7)]
    mul = lambda x, y: ((x[0] + pow(2, x[1], 7) * y[0]) % 7, (x[1] + y[1]) % 3)  # noqa: E731
    g = cayley_digraph(elems, mul, [(1, 0), (0, 1)])
    for m in left_multiplications(elems, mul):
        assert g.is_automorphism(m)


def test_metacirculant_examples():
    mp = MetacirculantParams(1, 7, 1, (frozenset({1, 6}),))
    assert metacirculant(mp) == cayley_digraph(list(range(7)), zmul(7), {1, 6})
    three_cycles = metacirculant(MetacirculantParams(3, 5, 1, (frozenset({1, 4}), frozenset(), frozenset())))
    assert not three_cycles.is_connected() and three_cycles.valency() == 2
    MetacirculantParams(3, 7, 2, (frozenset({1}), frozenset(), frozenset()))  # 2^3 = 1 mod 7
    with pytest.raises(ValueError):
        MetacirculantParams(2, 7, 2, (frozenset({1}), frozenset()))  # 2^2 = 4 does not fix {1}
    with pytest.raises(ValueError):
        MetacirculantParams(1, 5, 1, (frozenset({0}),))


@given(st.sampled_from([(3, 7, 2), (3, 7, 4), (5, 11, 3), (3, 13, 3), (2, 5, 4)]), st.data())
def test_metacirculant_maps_are_automorphisms(mna, data):
    m, n, a = mna
    am = pow(a, m, n)
    orbits_mod = []
    seen = set()
    for x in range(n):
        if x not in seen:
            orb = {x * pow(am, k, n) % n for k in range(n)}
            seen |= orb
            orbits_mod.append(orb)
    subsets = []
    for i in range(m):
        chosen = data.draw(st.lists(st.booleans(), min_size=len(orbits_mod), max_size=len(orbits_mod)))
        s = set().union(*[o for o, c in zip(orbits_mod, chosen) if c]) if any(chosen) else set()
        if i == 0:
            s.discard(0)
        subsets.append(frozenset(s))
    mp = MetacirculantParams(m, n, a, tuple(subsets))
    g = metacirculant(mp)
    rho, sigma = metacirculant_maps(mp)
    assert g.is_automorphism(rho) and g.is_automorphism(sigma)
    assert PermutationGroup([rho, sigma], m * n).is_transitive()


def test_metacirculant_alpha_must_be_unit():
    with pytest.raises(ValueError):
        MetacirculantParams(2, 6, 2, (frozenset(), frozenset()))


# -- orbitals -----------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_orbital_invariants(name):
    g = CORPUS[name]
    orbs = orbital_digraphs(g)
    total = 0
    seen = 0
    for o in orbs:
        assert orbs[o.paired_index].paired_index == o.index
        assert orbs[o.paired_index].valency == o.valency
        assert o.digraph.valency() == o.valency
        assert o.digraph.is_invariant_under(g)
        assert seen & sum(r << (u * g.degree) for u, r in enumerate(o.digraph.out)) == 0
        seen |= sum(r << (u * g.degree) for u, r in enumerate(o.digraph.out))
        total += o.digraph.arc_count()
    assert total == g.degree * (g.degree - 1)
    assert generalized_orbital_digraph(orbs, range(len(orbs))) == Digraph.complete(g.degree)


def test_two_transitive_single_orbital():
    orbs = orbital_digraphs(CORPUS["S5"])
    assert len(orbs) == 1 and orbs[0].digraph == Digraph.complete(5)


def test_generalized_orbital_bad_index():
    with pytest.raises(ValueError):
        generalized_orbital_digraph(CORPUS["D5"], {7})


# -- products and quotients ---------------------------------------------------

def test_lexicographic_product_definition():
    rng = random.Random(3)
    outer, inner = random_digraph(3, rng), random_digraph(4, rng)
    lex = lexicographic_product(outer, inner)
    for i in range(3):
        for j in range(4):
            for i2 in range(3):
                for j2 in range(4):
                    want = outer.has_arc(i, i2) or (i == i2 and inner.has_arc(j, j2))
                    assert lex.has_arc(i * 4 + j, i2 * 4 + j2) == want


def test_block_quotients():
    k5 = Digraph.complete(5)
    c3 = cayley_digraph(list(range(3)), zmul(3), {1})
    lex = lexicographic_product(k5, c3)
    natural = BlockSystem(tuple(i // 3 for i in range(15)))
    assert block_quotient(lex, natural) == k5
    cycles = metacirculant(MetacirculantParams(3, 5, 1, (frozenset({1, 4}), frozenset(), frozenset())))
    blocks = BlockSystem(tuple(i // 5 for i in range(15)))
    assert block_quotient(cycles, blocks) == Digraph.empty(3)
    assert lexicographic_product(k5, Digraph.empty(3)).valency() == 12


def test_circulant_via_group():
    g = cyclic_group(7)
    orbs = orbital_digraphs(g)
    assert len(orbs) == 6 and all(o.valency == 1 for o in orbs)
