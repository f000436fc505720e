import itertools

import pytest
from hypothesis import given, strategies as st

from pqdigraphs.autiso import are_isomorphic, automorphism_group, canonical_form
from pqdigraphs.cli import ConfigError, parse_subset
from pqdigraphs.field import MODULI, Field, Matrix2, field_make
from pqdigraphs.ms import (MSLabel, MSParams, all_params, classify_ms, dl_blocks, frobenius_perm,
                           ms_aut_fast, ms_context, ms_digraph, ms_from_orbitals,
                           ms_isomorphic_fast, nondegenerate_params, scalar_perm, sl2_on_dl,
                           sl2_on_vectors)
from pqdigraphs.perm import suborbits


def schoolbook_mul(a: int, b: int, s: int) -> int:
    """Carry-less product reduced bit by bit; shares nothing with the log tables."""
    mod = MODULI[s]
    out = 0
    for i in range(s):
        if b >> i & 1:
            out ^= a << i
    for bit in range(2 * s - 2, s - 1, -1):
        if out >> bit & 1:
            out ^= mod << (bit - s)
    return out


# -- field --------------------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2, 4, 8])
def test_field_against_schoolbook(s):
    f = field_make(s)
    elems = range(f.size) if s < 8 else range(0, 256, 7)
    for a in elems:
        assert f.add(a, a) == 0
        for b in elems:
            assert f.mul(a, b) == schoolbook_mul(a, b, s)
        if a:
            assert f.mul(a, f.inv(a)) == 1
        r = f.sqrt(a)
        assert f.mul(r, r) == a
    assert len({f.sqrt(a) for a in range(f.size)}) == f.size
    assert len({f.omega_pow(k) for k in range(f.units)}) == f.units


def test_field_examples():
    f4 = field_make(2)
    w = f4.omega
    assert f4.mul(w, w) ^ w ^ 1 == 0 and f4.pow(w, 3) == 1
    f16 = field_make(4)
    sw = f16.sqrt_omega_pow(1)
    assert f16.mul(sw, sw) == f16.omega
    assert f16.units == 15
    with pytest.raises(ValueError):
        Field(3)
    e = f16.element(5)
    assert (e * e.inverse()).bits == 1 and (e + e).is_zero()
    assert (e.sqrt() ** 2) == e


def test_matrix_shapes():
    f = field_make(4)
    a = f.omega_pow(3)
    k = Matrix2.k(f, a)
    assert k.b == k.c == 0 and f.mul(k.a, k.a) == a and k.is_special()
    h = Matrix2.h(f, 6)
    assert (h.a, h.c, h.d) == (1, 0, 1) and h.is_special()
    assert not Matrix2.scalar(f, a).is_special()
    assert (h * Matrix2.h(f, 6)) == Matrix2.identity(f)


# -- blocks and the SL action ---------------------------------------------------

def test_dl_block_shapes():
    f = field_make(4)
    assert dl_blocks(f, 15).block_count == 17
    assert dl_blocks(f, 1).block_count == 255
    three = dl_blocks(f, 3)
    assert three.block_count == 85 and three.block_size == 3
    assert three.is_invariant(sl2_on_vectors(f))
    with pytest.raises(ValueError):
        dl_blocks(f, 4)


def test_dl_blocks_lie_in_projective_points():
    ctx = ms_context(4, 5)
    f = ctx.field
    for i, vecs in enumerate(ctx.block_vecs):
        lab = ctx.label(i)
        for x, y in vecs:
            point = None if y == 0 else f.div(x, y)
            assert point == lab.c


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3), (4, 5)])
def test_sl2_action(s, q):
    ctx = ms_context(s, q)
    g = sl2_on_dl(ctx.field, ctx.ell)
    n = 1 << s
    assert g.degree == (n + 1) * q and g.order() == n * (n * n - 1)
    assert g.is_transitive() and ctx.fibres().is_invariant(g)
    sizes = sorted(len(o) for o in suborbits(g, 0))
    assert sizes == [1] * q + [n] * q


def test_sl2_small_case():
    g = sl2_on_dl(field_make(2), 1)
    assert g.degree == 15 and g.order() == 60


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3), (4, 5)])
def test_label_constraints(s, q):
    ctx = ms_context(s, q)
    f = ctx.field
    kw = ctx.matrix_perm(Matrix2.k(f, ctx.omega))
    for r in range(q):
        assert kw[ctx.index(MSLabel(None, r))] == ctx.index(MSLabel(None, r + 1))
        for c in range(f.size):
            assert kw[ctx.index(MSLabel(c, r))] == ctx.index(MSLabel(f.mul(c, ctx.omega), r + 1))
    for b in range(1, f.size):
        hb = ctx.matrix_perm(Matrix2.h(f, b))
        for r in range(q):
            assert hb[ctx.index(MSLabel(None, r))] == ctx.index(MSLabel(None, r))
            for c in range(f.size):
                assert hb[ctx.index(MSLabel(c, r))] == ctx.index(MSLabel(c ^ b, r))
    order_on_fibre = next(k for k in range(1, q + 1)
                          if (kw ** k)[ctx.index(MSLabel(None, 0))] == ctx.index(MSLabel(None, 0)))
    assert order_on_fibre == q


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3), (4, 5)])
def test_scalar_and_frobenius(s, q):
    ctx = ms_context(s, q)
    z = scalar_perm(ctx.field, ctx.ell, 1)
    for r in range(q):
        assert z[ctx.index(MSLabel(None, r))] == ctx.index(MSLabel(None, r + 1))
        for c in range(ctx.field.size):
            assert z[ctx.index(MSLabel(c, r))] == ctx.index(MSLabel(c, r - 1))
    assert z.order() == q
    assert scalar_perm(ctx.field, ctx.ell, q).is_identity()
    fr = frobenius_perm(ctx.field, ctx.ell)
    assert fr.order() == s
    sl = ctx.sl2()
    for h in sl.generators:
        assert sl.contains(~fr * h * fr)
    for i in range(q):
        zi = ctx.scalar_perm(i)
        for b in range(s):
            lhs = ~zi * (fr ** b) * zi * ~(fr ** b)
            assert lhs == zi ** ((1 << b) - 1)


# -- construction -------------------------------------------------------------

@pytest.mark.parametrize("s, q", [(2, 3), (4, 3)])
def test_construction_matches_orbitals_exhaustively(s, q):
    for p in all_params(s, q):
        assert ms_digraph(p) == ms_from_orbitals(p), str(p)


def test_construction_matches_orbitals_s4_q5():
    params = all_params(4, 5)
    assert len(params) == 16 * 32
    for p in params:
        assert ms_digraph(p) == ms_from_orbitals(p), str(p)


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3), (4, 5)])
def test_degree_valency_and_invariance(s, q):
    ctx = ms_context(s, q)
    for p in all_params(s, q)[::7]:
        g = ms_digraph(p)
        assert g.n == ((1 << s) + 1) * q
        assert g.valency() == len(p.S) + (1 << s) * len(p.T)
        for h in ctx.sl2().generators:
            assert g.is_automorphism(h)
        if p.T:
            tpart = ms_digraph(MSParams(s, q, frozenset(), p.T))
            assert tpart.is_graph()


def test_small_examples():
    assert ms_digraph(MSParams(4, 5, frozenset(), frozenset())).arc_count() == 0
    assert ms_digraph(MSParams(2, 3, {1, 2}, {0, 1, 2})).complement().arc_count() == 0
    x = ms_digraph(MSParams(4, 5, frozenset(), {0}))
    assert x.valency() == 16 and x.is_graph()
    with pytest.raises(ValueError):
        MSParams(4, 5, {0}, {1})
    with pytest.raises(ValueError):
        MSParams(4, 7, set(), {1})
    assert MSParams(4, 5, set(), {0}).ell == 3
    assert MSParams(4, 3, set(), set()).degenerate and MSParams(4, 3, set(), {0, 1, 2}).degenerate


def test_complement_params():
    p = MSParams(4, 5, {1, 4}, {0, 2})
    assert ms_digraph(p.complement()) == ms_digraph(p).complement()


# -- fast isomorphism and automorphisms ----------------------------------------

def test_fast_iso_examples():
    p = MSParams(4, 5, frozenset(), {0})
    assert ms_isomorphic_fast(p, p).is_identity()
    ctx = ms_context(4, 5)
    for i in range(5):
        other = MSParams(4, 5, frozenset(), {(0 - 2 * i) % 5})
        w = ms_isomorphic_fast(p, other)
        assert w is not None and ms_digraph(p).relabel(w) == ms_digraph(other)
        assert ms_digraph(p).relabel(ctx.scalar_perm(i)) == ms_digraph(other)
    with pytest.raises(ValueError):
        ms_isomorphic_fast(MSParams(4, 5, set(), set()), p)


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3)])
def test_fast_iso_agrees_with_general_search(s, q):
    params = nondegenerate_params(s, q)
    graphs = {p: ms_digraph(p) for p in params}
    forms = {p: canonical_form(g) for p, g in graphs.items()}
    for p1, p2 in itertools.combinations(params, 2):
        fast = ms_isomorphic_fast((p1, graphs[p1]), (p2, graphs[p2]))
        assert (fast is not None) == (forms[p1] == forms[p2]), (str(p1), str(p2))
        if fast is not None:
            assert graphs[p1].relabel(fast) == graphs[p2]
    # spot check the canonical-form shortcut against the witness search
    for p1, p2 in list(itertools.combinations(params, 2))[::37]:
        assert (are_isomorphic(graphs[p1], graphs[p2]) is not None) == (forms[p1] == forms[p2])


@pytest.mark.parametrize("s, q", [(2, 3), (4, 3)])
def test_fast_aut_agrees_with_general_search(s, q):
    sl = ms_context(s, q).sl2()
    for p in nondegenerate_params(s, q):
        g = ms_digraph(p)
        general = automorphism_group(g, sl)
        if classify_ms(p).case == "imprimitive":
            fast = ms_aut_fast(p, g)
            assert fast.order == general.order, str(p)
            for h in fast.generators:
                assert g.is_automorphism(h)
        else:
            assert classify_ms(p).predicted_order == general.order, str(p)


def test_fast_aut_sigma_l():
    p = MSParams(4, 5, frozenset(), {0})
    fast = ms_aut_fast(p)
    assert fast.order == 16320
    base = fast.group
    ctx = ms_context(4, 5)
    for k in range(1, 5):
        pk = MSParams(4, 5, frozenset(), {(-2 * k) % 5})
        gk = ms_aut_fast(pk).group
        assert gk.order() == 16320
        assert gk.same_group(base.conjugate(ctx.scalar_perm(k)))
        assert not gk.same_group(base)


def test_fast_aut_rejects_primitive():
    with pytest.raises(ValueError):
        ms_aut_fast(MSParams(2, 3, {1, 2}, {0}))


# -- classification -----------------------------------------------------------

def test_classification_examples():
    assert classify_ms(MSParams(2, 3, {1, 2}, {0, 1, 2})).case == "degenerate-complete"
    assert classify_ms(MSParams(2, 3, {1}, {0, 1, 2})).case == "degenerate-wreath"
    for t in range(3):
        c = classify_ms(MSParams(2, 3, {1, 2}, {t}))
        assert c.case == "primitive-line-graph-K6" and c.predicted_order == 720
    assert classify_ms(MSParams(4, 5, {1, 2, 3, 4}, {2})).case == "primitive-PGammaSp"
    assert classify_ms(MSParams(4, 3, {1, 2}, {0})).case == "imprimitive"


@pytest.mark.parametrize("S", [frozenset(), frozenset({1}), frozenset({1, 2})])
def test_degenerate_orders_match(S):
    p = MSParams(2, 3, S, {0, 1, 2})
    assert automorphism_group(ms_digraph(p)).order == classify_ms(p).predicted_order


# -- CLI subset syntax --------------------------------------------------------

@given(st.sets(st.integers(0, 4)))
def test_parse_subset_roundtrip(values):
    text = ",".join(map(str, sorted(values))) or "none"
    assert parse_subset(text, 5, allow_all=True) == frozenset(values)


def test_parse_subset_keywords():
    assert parse_subset("all", 5, allow_all=True) == frozenset(range(5))
    assert parse_subset("None", 5, allow_all=False) == frozenset()
    assert parse_subset("6,-1", 5, allow_all=False) == frozenset({1, 4})
    with pytest.raises(ConfigError):
        parse_subset("all", 5, allow_all=False)
    with pytest.raises(ConfigError):
        parse_subset("1;2", 5, allow_all=True)


def test_line_graph_example():
    # X(4,3,Z3*,{0}) has valency 2 + 4 = 6 while L(K6) has valency 8; kept as published
    from pqdigraphs.census.cases import line_graph_k6
    x = ms_digraph(MSParams(2, 3, {1, 2}, {0}))
    assert automorphism_group(x).order == 720
    assert are_isomorphic(x.complement(), line_graph_k6()) is not None
    assert are_isomorphic(x, line_graph_k6()) is not None
