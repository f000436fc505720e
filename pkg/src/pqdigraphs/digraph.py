"""Loopless digraphs stored as out-neighbour bitsets, and the standard constructions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .perm import PermutationGroup, BlockSystem, Permutation, suborbits


class LoopError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Digraph:
    """Digraph on ``range(n)``; ``out[u]`` has bit ``v`` set for each arc ``u -> v``."""

    __slots__ = ("n", "out", "__dict__")

    def __init__(self, n: int, out: Sequence[int]):
        if len(out) != n:
            raise ValueError("need one out-set per vertex")
        full = (1 << n) - 1
        for u, row in enumerate(out):
            if row >> u & 1:
                raise LoopError(f"loop at vertex {u}")
            if row & ~full:
                raise ValueError(f"vertex {u} has an out-neighbour outside 0..{n - 1}")
        self.n = n
        self.out: tuple[int, ...] = tuple(out)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            rows[u] |= 1 << v
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << u) for u in range(n)])

    @classmethod
    def from_matrix(cls, a: np.ndarray) -> "Digraph":
        return cls(a.shape[0], _rows_from_matrix(a))

    # -- basic queries -----------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"<Digraph n={self.n} arcs={self.arc_count()}>"

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_neighbors(self, u: int) -> list[int]:
        return list(_bits(self.out[u]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(_bits(self.inn[v]))

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.out):
            for v in _bits(row):
                yield u, v

    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def out_degrees(self) -> list[int]:
        return [row.bit_count() for row in self.out]

    def valency(self) -> int:
        """Common out-degree; raises if out-degrees differ."""
        degs = set(self.out_degrees())
        if len(degs) != 1:
            raise ValueError("digraph is not regular")
        return degs.pop()

    @cached_property
    def inn(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.arcs():
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, row in enumerate(self.out):
            for v in _bits(row):
                a[u, v] = 1
        a.setflags(write=False)
        return a

    def is_graph(self) -> bool:
        return self.out == self.inn

    # -- set algebra -------------------------------------------------------
    def complement(self) -> "Digraph":
        full = (1 << self.n) - 1
        return Digraph(self.n, [full ^ row ^ (1 << u) for u, row in enumerate(self.out)])

    def union(self, other: "Digraph") -> "Digraph":
        if self.n != other.n:
            raise ValueError("orders differ")
        if any(a & b for a, b in zip(self.out, other.out)):
            raise ValueError("digraphs share arcs")
        return Digraph(self.n, [a | b for a, b in zip(self.out, other.out)])

    def __or__(self, other: "Digraph") -> "Digraph":
        return self.union(other)

    def reverse(self) -> "Digraph":
        return Digraph(self.n, self.inn)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image under ``perm``: arc ``(u, v)`` becomes ``(perm[u], perm[v])``."""
        if len(perm) != self.n:
            raise ValueError("permutation degree differs from the order")
        inv = np.argsort(np.asarray(perm, dtype=np.int64))
        return Digraph(self.n, _rows_from_matrix(self.matrix[np.ix_(inv, inv)]))

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if len(perm) != self.n:
            return False
        if self.n > 32:
            p = np.asarray(perm, dtype=np.int64)
            a = self.matrix
            return bool(np.array_equal(a[np.ix_(p, p)], a))
        out = self.out
        for u, row in enumerate(out):
            img = 0
            for v in _bits(row):
                img |= 1 << perm[v]
            if img != out[perm[u]]:
                return False
        return True

    def is_invariant_under(self, group: PermutationGroup) -> bool:
        return all(self.is_automorphism(g) for g in group.generators)

    def is_connected(self, mode: str = "weak") -> bool:
        if mode not in ("weak", "strong"):
            raise ValueError("mode must be 'weak' or 'strong'")
        if self.n == 0:
            return True
        if mode == "weak":
            nbr = [a | b for a, b in zip(self.out, self.inn)]
            return _reach(nbr, 0) == (1 << self.n) - 1
        full = (1 << self.n) - 1
        return _reach(list(self.out), 0) == full and _reach(list(self.inn), 0) == full

    def components(self) -> list[list[int]]:
        """Weak components, each sorted, ordered by smallest vertex."""
        nbr = [a | b for a, b in zip(self.out, self.inn)]
        seen = 0
        comps = []
        for v in range(self.n):
            if not seen >> v & 1:
                r = _reach(nbr, v)
                seen |= r
                comps.append(list(_bits(r)))
        return comps

    # -- text format -------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"digraph {self.n}"]
        for u in range(self.n):
            if self.out[u]:
                lines.append(f"{u}: " + " ".join(map(str, self.out_neighbors(u))))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        n = None
        rows: list[int] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != "digraph":
                    raise ValueError(f"line {lineno}: expected 'digraph n'")
                n = int(parts[1])
                rows = [0] * n
                continue
            head, _, tail = line.partition(":")
            if not _:
                raise ValueError(f"line {lineno}: expected 'u: v1 v2 ...'")
            u = int(head)
            if not 0 <= u < n:
                raise ValueError(f"line {lineno}: vertex {u} out of range")
            for tok in tail.split():
                v = int(tok)
                if not 0 <= v < n:
                    raise ValueError(f"line {lineno}: vertex {v} out of range")
                rows[u] |= 1 << v
        if n is None:
            raise ValueError("missing 'digraph n' header")
        return cls(n, rows)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: str | Path) -> "Digraph":
        return cls.from_text(Path(path).read_text())


def _rows_from_matrix(a: np.ndarray) -> list[int]:
    packed = np.packbits(np.asarray(a, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _reach(nbr: Sequence[int], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= nbr[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def complement(g: Digraph) -> Digraph:
    return g.complement()


def union(a: Digraph, b: Digraph) -> Digraph:
    return a.union(b)


def is_graph(g: Digraph) -> bool:
    return g.is_graph()


def is_connected(g: Digraph, mode: str = "weak") -> bool:
    return g.is_connected(mode)


# -- constructions -----------------------------------------------------------

def cayley_digraph(elements: Sequence[Hashable], mul: Callable[[Hashable, Hashable], Hashable],
                   connection_set: Iterable[Hashable]) -> Digraph:
    """Arcs ``(g, g*s)``; vertex ``i`` is ``elements[i]``."""
    index = {e: i for i, e in enumerate(elements)}
    conn = list(connection_set)
    for s in conn:
        if s not in index:
            raise ValueError(f"{s!r} is not a group element")
    ident = [e for e in elements if all(mul(e, x) == x for x in elements[:3])]
    if ident and ident[0] in conn:
        raise ValueError("identity in connection set")
    rows = [0] * len(elements)
    for i, g in enumerate(elements):
        for s in conn:
            rows[i] |= 1 << index[mul(g, s)]
    return Digraph(len(elements), rows)


def left_multiplications(elements: Sequence[Hashable],
                         mul: Callable[[Hashable, Hashable], Hashable]) -> list[Permutation]:
    """Permutations ``x -> h*x`` of the vertex set of a Cayley digraph."""
    index = {e: i for i, e in enumerate(elements)}
    return [Permutation._raw(index[mul(h, x)] for x in elements) for h in elements]


@dataclass(frozen=True)
class MetacirculantParams:
    m: int
    n: int
    alpha: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.subsets) != self.m:
            raise ValueError("need one subset per element of Z_m")
        from math import gcd
        if gcd(self.alpha, self.n) != 1:
            raise ValueError("alpha must be a unit mod n")
        am = pow(self.alpha, self.m, self.n)
        norm = tuple(frozenset(x % self.n for x in s) for s in self.subsets)
        object.__setattr__(self, "subsets", norm)
        for i, s in enumerate(norm):
            if frozenset(am * x % self.n for x in s) != s:
                raise ValueError(f"alpha^m S_{i} != S_{i}")
        if 0 in norm[0]:
            raise ValueError("0 in S_0 would create loops")


def metacirculant(params: MetacirculantParams) -> Digraph:
    """Vertex ``(l, j)`` is index ``l*n + j``; ``(l,j) -> (l+i,k)`` iff ``k-j`` in ``alpha^l S_i``."""
    m, n, a = params.m, params.n, params.alpha
    rows = [0] * (m * n)
    for l in range(m):
        al = pow(a, l, n)
        for i, s in enumerate(params.subsets):
            shifted = [al * x % n for x in s]
            for j in range(n):
                for d in shifted:
                    rows[l * n + j] |= 1 << (((l + i) % m) * n + (j + d) % n)
    return Digraph(m * n, rows)


def metacirculant_maps(params: MetacirculantParams) -> tuple[Permutation, Permutation]:
    """``rho(l,j) = (l,j+1)`` and ``sigma(l,j) = (l+1, alpha*j)``."""
    m, n, a = params.m, params.n, params.alpha
    rho = Permutation._raw(l * n + (j + 1) % n for l in range(m) for j in range(n))
    sigma = Permutation._raw(((l + 1) % m) * n + a * j % n for l in range(m) for j in range(n))
    return rho, sigma


@dataclass(frozen=True)
class Orbital:
    index: int
    digraph: Digraph
    paired_index: int
    valency: int

    @property
    def self_paired(self) -> bool:
        return self.paired_index == self.index


def orbital_digraphs(group: PermutationGroup) -> list[Orbital]:
    """Nontrivial orbital digraphs, sorted by (valency, smallest arc)."""
    n = group.degree
    subs = [s for s in suborbits(group, 0) if s != [0]]
    chain = group.chain_with_base([0])
    trans = chain.transversal[0]
    where = {}
    for i, s in enumerate(subs):
        for d in s:
            where[d] = i
    digraphs = []
    for s in subs:
        rows = [0] * n
        for v in range(n):
            u = trans[v]
            mask = 0
            for d in s:
                mask |= 1 << u[d]
            rows[v] = mask
        digraphs.append(Digraph(n, rows))
    paired = []
    for s in subs:
        d = s[0]
        # reversed arc (d, 0) maps to (0, u_d^-1(0))
        paired.append(where[(~trans[d])[0]])
    order = sorted(range(len(subs)), key=lambda i: (len(subs[i]), subs[i][0]))
    pos = {old: new for new, old in enumerate(order)}
    return [Orbital(pos[i], digraphs[i], pos[paired[i]], len(subs[i])) for i in order]


def generalized_orbital_digraph(orbitals: Sequence[Orbital] | PermutationGroup,
                                selection: Iterable[int]) -> Digraph:
    orbs = orbital_digraphs(orbitals) if isinstance(orbitals, PermutationGroup) else orbitals
    sel = sorted(set(selection))
    if not orbs:
        raise ValueError("no orbitals")
    n = orbs[0].digraph.n
    rows = [0] * n
    for i in sel:
        if not 0 <= i < len(orbs):
            raise ValueError(f"orbital index {i} out of range")
        for u, r in enumerate(orbs[i].digraph.out):
            rows[u] |= r
    return Digraph(n, rows)


def lexicographic_product(outer: Digraph, inner: Digraph) -> Digraph:
    """Vertex ``(i, j)`` is ``i*inner.n + j``."""
    m, k = outer.n, inner.n
    rows = [0] * (m * k)
    block = (1 << k) - 1
    for i in range(m):
        across = 0
        for i2 in _bits(outer.out[i]):
            across |= block << (i2 * k)
        for j in range(k):
            rows[i * k + j] = across | (inner.out[j] << (i * k))
    return Digraph(m * k, rows)


def block_quotient(g: Digraph, bs: BlockSystem) -> Digraph:
    m = bs.block_count
    rows = [0] * m
    for u, v in g.arcs():
        bu, bv = bs.block_of[u], bs.block_of[v]
        if bu != bv:
            rows[bu] |= 1 << bv
    return Digraph(m, rows)
