"""Marušič-Scapellato digraphs X(2^s, q, S, T) and their fast iso/aut algorithms.

Vertices are the blocks of D_l, the orbits of the order-l scalar subgroup on
nonzero vectors of GF(2^s)^2, with l = (2^s-1)/q.  Labels (c, r) put c in
GF(2^s) or infinity (None) and r in Z_q:

* (inf, r) is the block of (sqrt(w)^r, 0);
* (0, r) is the block of (0, sqrt(w)^-r);
* (c, r) = h_c(0, r), the block of (c sqrt(w)^-r, sqrt(w)^-r).

These satisfy k_w(inf,r) = (inf,r+1), k_w(c,r) = (cw,r+1) and h_b(c,r) = (c+b,r).
With this choice the T-edges from (x, r) go to (inf, r-b) and
(x + w^i, -r+b+2i).  A scalar sqrt(w)^a shifts (inf, r) to (inf, r+a) and (x, r)
to (x, r-a), so the SL-invariant S-arcs are (inf,r) -> (inf,r+a) and
(x,r) -> (x,r-a).

Vertex index: (inf, r) -> r, (c, r) -> q(1+c) + r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable

from sympy import isprime, n_order

from .autiso import AutResult, automorphism_group
from .digraph import Digraph
from .field import Field, Matrix2, field_make
from .perm import BlockSystem, Permutation, PermutationGroup, schreier_sims

INF = None


@dataclass(frozen=True, order=True)
class MSLabel:
    c: int | None
    r: int

    def __str__(self) -> str:
        return f"({'inf' if self.c is None else self.c},{self.r})"


def _subset(values: Iterable[int], q: int) -> frozenset[int]:
    return frozenset(int(v) % q for v in values)


@dataclass(frozen=True)
class MSParams:
    s: int
    q: int
    S: frozenset[int]
    T: frozenset[int]
    omega: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "S", _subset(self.S, self.q))
        object.__setattr__(self, "T", _subset(self.T, self.q))
        f = field_make(self.s)
        if self.omega is None:
            object.__setattr__(self, "omega", f.omega)
        if not isprime(self.q) or f.units % self.q:
            raise ValueError(f"q={self.q} must be a prime dividing 2^{self.s}-1")
        if 0 in self.S:
            raise ValueError("0 in S would create loops")
        if self.omega == 0 or len({f.pow(self.omega, k) for k in range(f.units)}) != f.units:
            raise ValueError("omega is not a primitive element")

    @property
    def ell(self) -> int:
        return ((1 << self.s) - 1) // self.q

    @property
    def p(self) -> int:
        return (1 << self.s) + 1

    @property
    def order(self) -> int:
        return self.p * self.q

    @property
    def degenerate(self) -> bool:
        return not self.T or len(self.T) == self.q

    def complement(self) -> "MSParams":
        allq = set(range(self.q))
        return MSParams(self.s, self.q, allq - {0} - self.S, allq - self.T, self.omega)

    def __str__(self) -> str:
        fmt = lambda x: "{" + ",".join(map(str, sorted(x))) + "}"
        return f"X({1 << self.s},{self.q},{fmt(self.S)},{fmt(self.T)})"


def projective_points(f: Field) -> list[int | None]:
    """``None`` (infinity) followed by the field elements."""
    return [INF] + list(range(f.size))


def projective_point(f: Field, v: tuple[int, int]) -> int | None:
    x, y = v
    return INF if y == 0 else f.div(x, y)


class MSContext:
    """Blocks, labels and the natural permutation actions for fixed (s, q, omega)."""

    def __init__(self, s: int, q: int, omega: int | None = None):
        f = field_make(s)
        self.field = f
        self.s = s
        self.q = q
        if f.units % q:
            raise ValueError(f"{q} does not divide 2^{s}-1")
        self.ell = f.units // q
        self.omega = f.omega if omega is None else omega
        self._wlog = {f.pow(self.omega, k): k for k in range(f.units)}
        if len(self._wlog) != f.units:
            raise ValueError("omega is not a primitive element")
        self.sqrt_omega = f.sqrt(self.omega)
        self.degree = (f.size + 1) * q
        n = f.size
        self.vectors = [(x, y) for x in range(n) for y in range(n) if (x, y) != (0, 0)]
        self._vindex = {v: i for i, v in enumerate(self.vectors)}
        mu = [self.w_pow(q * j) for j in range(self.ell)]
        block_of_vec: dict[tuple[int, int], int] = {}
        block_vecs: list[list[tuple[int, int]]] = [[] for _ in range(self.degree)]
        for c, r, rep in self._label_reps():
            i = self.index(MSLabel(c, r))
            for m in mu:
                v = (f.mul(m, rep[0]), f.mul(m, rep[1]))
                if v in block_of_vec:
                    raise AssertionError("labels collide")
                block_of_vec[v] = i
                block_vecs[i].append(v)
        if len(block_of_vec) != len(self.vectors):
            raise AssertionError("labelled blocks do not cover the vectors")
        self.block_of_vec = block_of_vec
        self.block_vecs = block_vecs
        self.labels = [self.label(i) for i in range(self.degree)]

    # -- exponent helpers -------------------------------------------------
    def w_pow(self, k: int) -> int:
        return self.field.pow(self.omega, k)

    def sw_pow(self, k: int) -> int:
        return self.field.pow(self.sqrt_omega, k)

    def w_log(self, a: int) -> int:
        return self._wlog[a]

    def _label_reps(self):
        f = self.field
        for r in range(self.q):
            yield INF, r, (self.sw_pow(r), 0)
            y = self.sw_pow(-r)
            for c in range(f.size):
                yield c, r, (f.mul(c, y), y)

    # -- labels -----------------------------------------------------------
    def index(self, lab: MSLabel) -> int:
        r = lab.r % self.q
        return r if lab.c is None else self.q * (1 + lab.c) + r

    def label(self, i: int) -> MSLabel:
        c, r = divmod(i, self.q)
        return MSLabel(INF if c == 0 else c - 1, r)

    def dl_blocks(self) -> BlockSystem:
        """D_l as a partition of the nonzero vectors (in ``self.vectors`` order)."""
        return BlockSystem(tuple(self.block_of_vec[v] for v in self.vectors))

    def fibres(self) -> BlockSystem:
        """The partition of vertices by projective point (p blocks of size q)."""
        return BlockSystem(tuple(i // self.q for i in range(self.degree)))

    # -- actions ----------------------------------------------------------
    def vector_perm(self, fn) -> Permutation:
        return Permutation([self._vindex[fn(v)] for v in self.vectors])

    def block_perm(self, fn) -> Permutation:
        """Permutation of vertices induced by a map on vectors preserving D_l."""
        img = []
        for vecs in self.block_vecs:
            targets = {self.block_of_vec[fn(v)] for v in vecs}
            if len(targets) != 1:
                raise ValueError("map does not preserve D_l")
            img.append(targets.pop())
        return Permutation(img)

    def matrix_perm(self, m: Matrix2) -> Permutation:
        return self.block_perm(m.apply)

    def sl2_generators(self) -> list[Matrix2]:
        f = self.field
        k_w = Matrix2(f, self.sqrt_omega, 0, 0, f.inv(self.sqrt_omega))
        return [k_w, Matrix2.h(f, 1), Matrix2.swap(f)]

    @property
    def sl2_order(self) -> int:
        n = self.field.size
        return n * (n * n - 1)

    def sl2(self) -> PermutationGroup:
        return _sl2_cached(self.s, self.q, self.omega)

    def scalar_perm(self, i: int) -> Permutation:
        """Action of ``sqrt(w)^i I``."""
        return self.matrix_perm(Matrix2.scalar(self.field, self.sw_pow(i)))

    def frobenius_perm(self) -> Permutation:
        fr = self.field.frobenius
        return self.block_perm(lambda v: (fr(v[0]), fr(v[1])))


@lru_cache(maxsize=None)
def ms_context(s: int, q: int, omega: int | None = None) -> MSContext:
    return MSContext(s, q, omega)


@lru_cache(maxsize=None)
def _sl2_cached(s: int, q: int, omega: int) -> PermutationGroup:
    ctx = ms_context(s, q, omega)
    gens = [ctx.matrix_perm(m) for m in ctx.sl2_generators()]
    return PermutationGroup(gens, ctx.degree, order=ctx.sl2_order, name=f"SL(2,{ctx.field.size})")


def _ctx(params: MSParams) -> MSContext:
    return ms_context(params.s, params.q, params.omega)


# -- module-level operations --------------------------------------------------

def dl_blocks(f: Field, ell: int) -> BlockSystem:
    """D_l on the nonzero vectors, ordered ``(x, y)`` lexicographically."""
    if ell <= 0 or f.units % ell:
        raise ValueError(f"{ell} does not divide {f.units}")
    q = f.units // ell
    if q == 1:
        # whole projective points
        vecs = [(x, y) for x in range(f.size) for y in range(f.size) if (x, y) != (0, 0)]
        pts = {}
        return BlockSystem(tuple(pts.setdefault(projective_point(f, v), len(pts)) for v in vecs))
    return ms_context(f.s, q).dl_blocks()


def sl2_on_vectors(f: Field) -> PermutationGroup:
    vecs = [(x, y) for x in range(f.size) for y in range(f.size) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    r = f.sqrt(f.omega)
    mats = [Matrix2(f, r, 0, 0, f.inv(r)), Matrix2.h(f, 1), Matrix2.swap(f)]
    gens = [Permutation([index[m.apply(v)] for v in vecs]) for m in mats]
    n = f.size
    return PermutationGroup(gens, len(vecs), order=n * (n * n - 1))


def sl2_on_dl(f: Field, ell: int) -> PermutationGroup:
    """SL(2,2^s) on the blocks of D_l, as permutations of MS vertex indices."""
    if f.units % ell:
        raise ValueError(f"{ell} does not divide {f.units}")
    return ms_context(f.s, f.units // ell).sl2()


def label_bijection(f: Field, ell: int) -> dict[frozenset[tuple[int, int]], MSLabel]:
    ctx = ms_context(f.s, f.units // ell)
    return {frozenset(vs): ctx.label(i) for i, vs in enumerate(ctx.block_vecs)}


def scalar_perm(f: Field, ell: int, i: int) -> Permutation:
    return ms_context(f.s, f.units // ell).scalar_perm(i)


def frobenius_perm(f: Field, ell: int) -> Permutation:
    return ms_context(f.s, f.units // ell).frobenius_perm()


def ms_digraph(params: MSParams) -> Digraph:
    ctx = _ctx(params)
    f = ctx.field
    q = params.q
    idx = ctx.index
    rows = [0] * ctx.degree
    for r in range(q):
        u = idx(MSLabel(INF, r))
        for a in params.S:
            rows[u] |= 1 << idx(MSLabel(INF, r + a))
        for b in params.T:
            for y in range(f.size):
                rows[u] |= 1 << idx(MSLabel(y, r + b))
        for x in range(f.size):
            u = idx(MSLabel(x, r))
            for a in params.S:
                rows[u] |= 1 << idx(MSLabel(x, r - a))
            for b in params.T:
                rows[u] |= 1 << idx(MSLabel(INF, r - b))
                for i in range(f.units):
                    rows[u] |= 1 << idx(MSLabel(x ^ ctx.w_pow(i), -r + b + 2 * i))
    return Digraph(ctx.degree, rows)


def ms_from_orbitals(params: MSParams) -> Digraph:
    """Union of the SL-orbitals through ((inf,0),(inf,a)) for a in S and ((inf,0),(0,t)) for t in T."""
    ctx = _ctx(params)
    g = ctx.sl2()
    chain = g.chain_with_base([0])
    trans = chain.transversal[0]
    stab = g.stabilizer(0)
    out0: set[int] = set()
    for a in params.S:
        out0 |= set(stab.orbit(ctx.index(MSLabel(INF, a))))
    for t in params.T:
        out0 |= set(stab.orbit(ctx.index(MSLabel(0, t))))
    rows = []
    for v in range(ctx.degree):
        u = trans[v]
        rows.append(sum(1 << u[d] for d in out0))
    return Digraph(ctx.degree, rows)


def _as_params_and_digraph(x) -> tuple[MSParams, Digraph]:
    if isinstance(x, MSParams):
        return x, ms_digraph(x)
    if isinstance(x, tuple) and len(x) == 2:
        return x
    raise TypeError("expected MSParams or (MSParams, Digraph)")


def ms_isomorphic_fast(g1, g2) -> Permutation | None:
    """Witness ``scalar(i) . frobenius^j`` carrying X1 onto X2, or None.

    Only these q*s maps need testing for nondegenerate MS digraphs sharing
    (s, q, omega).
    """
    p1, d1 = _as_params_and_digraph(g1)
    p2, d2 = _as_params_and_digraph(g2)
    if (p1.s, p1.q, p1.omega) != (p2.s, p2.q, p2.omega):
        raise ValueError("MS digraphs built over different parameters")
    if p1.degenerate or p2.degenerate:
        raise ValueError("degenerate MS digraph")
    ctx = _ctx(p1)
    fr = ctx.frobenius_perm()
    frj = Permutation.identity(ctx.degree)
    for _j in range(p1.s):
        for i in range(p1.q):
            delta = ctx.scalar_perm(i) * frj
            if d1.relabel(delta) == d2:
                return delta
        frj = fr * frj
    return None


def ms_candidate_maps(ctx: MSContext) -> list[tuple[int, int, Permutation]]:
    """``(k, r, d^-k f^(2^r) d^k)`` for ``k`` in Z_q and ``0 <= r <= t``."""
    t = ctx.s.bit_length() - 1
    fr = ctx.frobenius_perm()
    out = []
    for k in range(ctx.q):
        dk = ctx.scalar_perm(k)
        for r in range(t + 1):
            out.append((k, r, (~dk) * (fr ** (1 << r)) * dk))
    return out


@dataclass
class FastAut:
    group: PermutationGroup
    order: int
    accepted: list[tuple[int, int]]
    generators: list[Permutation] = field(default_factory=list)


def ms_aut_fast(params: MSParams, digraph: Digraph | None = None) -> FastAut:
    """Aut of a nondegenerate MS digraph with imprimitive automorphism group.

    Tests the (t+1) q maps ``d^-k f^(2^r) d^k`` and returns the group they
    generate together with SL(2,2^s).
    """
    cls = classify_ms(params)
    if cls.case != "imprimitive":
        raise ValueError(f"ms_aut_fast needs the imprimitive case, got {cls.case}")
    ctx = _ctx(params)
    g = digraph if digraph is not None else ms_digraph(params)
    sl = ctx.sl2()
    for h in sl.generators:
        if not g.is_automorphism(h):
            raise AssertionError("SL(2,2^s) is not in Aut; construction bug")
    accepted = []
    extra = []
    for k, r, m in ms_candidate_maps(ctx):
        if not m.is_identity() and g.is_automorphism(m):
            accepted.append((k, r))
            extra.append(m)
    gens = list(sl.generators) + extra
    if extra:
        chain = schreier_sims(gens, ctx.degree)
        group = PermutationGroup(gens, ctx.degree, order=chain.order())
    else:
        group = sl
    return FastAut(group, group.order(), accepted, gens)


@dataclass(frozen=True)
class MSClassification:
    case: str  # degenerate-empty | degenerate-complete | degenerate-wreath | primitive-* | imprimitive
    description: str
    predicted_order: int | None


def _cayley_zq_aut_order(q: int, S: frozenset[int]) -> int:
    """|Aut(Cay(Z_q, S))| for prime q: S_q if S in {empty, all}, else Z_q x| <multipliers of S>."""
    if not S or len(S) == q - 1:
        return factorial(q)
    mults = sum(1 for m in range(1, q) if {m * x % q for x in S} == set(S))
    return q * mults


def psgammasp4_order(k: int) -> int:
    """|PGammaSp(4,k)| for k a power of 2."""
    return k ** 4 * (k * k - 1) * (k ** 4 - 1) * (k.bit_length() - 1)


def classify_ms(params: MSParams) -> MSClassification:
    """Predicted case of the automorphism-group classification, with the order when it is known.

    The primitive symplectic family needs ``p = k^2 + 1`` and ``q = k + 1``,
    i.e. ``s = 2`` (Aut = S_6, the line graph of K_6) or ``s = 4, q = 5``.
    """
    q, p, s = params.q, params.p, params.s
    S, T = params.S, params.T
    full_S = len(S) == q - 1
    if params.degenerate:
        if (T and full_S) or (not T and not S):
            kind = "degenerate-complete" if T else "degenerate-empty"
            return MSClassification(kind, "complete or arcless; Aut = S_pq", factorial(p * q))
        cay = _cayley_zq_aut_order(q, S)
        shape = "K_p wr Cay(Z_q,S)" if T else "p disjoint copies of Cay(Z_q,S)"
        return MSClassification("degenerate-wreath", f"{shape}; Aut = S_p wr Aut(Cay(Z_q,S))",
                                factorial(p) * cay ** p)
    k = 1 << (s // 2)
    symplectic = s % 2 == 0 and p == k * k + 1 and q == k + 1
    if symplectic and ((full_S and len(T) == 1) or (not S and len(T) == q - 1)):
        which = "|T| = 1" if full_S else "complement of the |T| = 1 case"
        if s == 2:
            return MSClassification("primitive-line-graph-K6",
                                    f"{which}; line graph of K_6 or its complement, Aut = S_6", 720)
        return MSClassification("primitive-PGammaSp",
                                f"{which}; Aut = d^-1 PGammaSp(4,{k}) d", psgammasp4_order(k))
    return MSClassification("imprimitive", "Aut = d^-k <SL(2,2^s), L> d^k", None)


def nondegenerate_params(s: int, q: int) -> list[MSParams]:
    out = []
    units = list(range(1, q))
    for ks in range(len(units) + 1):
        for S in combinations(units, ks):
            for kt in range(1, q):
                for T in combinations(range(q), kt):
                    out.append(MSParams(s, q, frozenset(S), frozenset(T)))
    return out


def all_params(s: int, q: int) -> list[MSParams]:
    out = []
    units = list(range(1, q))
    for ks in range(len(units) + 1):
        for S in combinations(units, ks):
            for kt in range(q + 1):
                for T in combinations(range(q), kt):
                    out.append(MSParams(s, q, frozenset(S), frozenset(T)))
    return out


def ms_automorphism_group(params: MSParams, budget: float | None = None) -> AutResult:
    """General automorphism search seeded with SL(2,2^s)."""
    return automorphism_group(ms_digraph(params), _ctx(params).sl2(), budget=budget)


def ms_order_2_of(q: int) -> int:
    """Multiplicative order of 2 modulo q."""
    return int(n_order(2, q))
