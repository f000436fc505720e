"""Automorphism groups, canonical forms and isomorphism of digraphs.

Individualization-refinement.  Refinement is colour refinement on both
out- and in-neighbourhoods: a vertex's new colour is its old colour together
with how many out- and in-neighbours it has in each current cell.  New colours
are ranked by sorting these signatures, so the refined partition depends only
on the isomorphism type of (digraph, partition).  Each refinement also yields
a trace digest used to compare search-tree nodes.

The automorphism group is found bottom-up along the first path of the tree:
at depth ``i`` every vertex of the target cell that is not already in the
orbit of the known stabilizer is tested by looking for a matching leaf below
it.  ``|Aut|`` is the product of the final orbit lengths.

The canonical form is the smallest ``(trace sequence, relabelled adjacency)``
over all leaves.  Once ``Aut`` is known exactly, it is enough to expand one
child per orbit of the pointwise stabilizer of a node's individualized
vertices, since orbit-equivalent children root isomorphic subtrees; subtrees
whose trace prefix exceeds the best one found are cut.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .digraph import Digraph
from .perm import Permutation, PermutationGroup


class AutBudgetExceeded(RuntimeError):
    pass


class NotAnAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class ColoredPartition:
    """Ordered partition; ``colors[v]`` is the index of the cell holding ``v``."""

    colors: tuple[int, ...]

    @classmethod
    def unit(cls, n: int) -> "ColoredPartition":
        return cls((0,) * n)

    @classmethod
    def from_cells(cls, cells: Sequence[Iterable[int]], n: int | None = None) -> "ColoredPartition":
        cells = [list(c) for c in cells]
        n = n if n is not None else sum(len(c) for c in cells)
        colors = [-1] * n
        for i, c in enumerate(cells):
            for v in c:
                colors[v] = i
        if -1 in colors:
            raise ValueError("cells do not cover all vertices")
        return cls(tuple(colors))

    @property
    def cells(self) -> list[list[int]]:
        k = max(self.colors) + 1 if self.colors else 0
        out: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return [c for c in out if c]

    def is_discrete(self) -> bool:
        return len(set(self.colors)) == len(self.colors)

    def individualize(self, v: int) -> "ColoredPartition":
        c = self.colors[v]
        return ColoredPartition(tuple(2 * x + (x == c and u != v) for u, x in enumerate(self.colors)))


_WEIGHTS = np.random.default_rng(20240611).integers(1, 2**63, size=4096, dtype=np.uint64) | 1


def _weights(m: int) -> np.ndarray:
    return _WEIGHTS[:m]


def _rank(colors: np.ndarray) -> np.ndarray:
    _, inv = np.unique(colors, return_inverse=True)
    return inv.astype(np.int64)


class _Refiner:
    def __init__(self, g: Digraph):
        self.n = g.n
        a = np.asarray(g.matrix, dtype=np.float32)
        self.a = a
        self.at = np.ascontiguousarray(a.T)
        self.adj = np.asarray(g.matrix, dtype=bool)

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, bytes]:
        h = hashlib.blake2b(digest_size=16)
        colors = _rank(colors)
        k = int(colors.max()) + 1 if self.n else 0
        h.update(np.bincount(colors, minlength=k).astype(np.int32).tobytes())
        while k < self.n:
            onehot = np.zeros((self.n, k), dtype=np.float32)
            onehot[np.arange(self.n), colors] = 1.0
            counts = np.empty((self.n, 2 * k), dtype=np.uint64)
            counts[:, :k] = self.a @ onehot
            counts[:, k:] = self.at @ onehot
            # 64-bit fingerprint of each count row; ties broken by nothing else,
            # so a collision would only coarsen the partition (never unsound)
            key = counts @ _weights(2 * k)
            order = np.lexsort((key, colors))
            sc, sk = colors[order], key[order]
            starts = np.empty(self.n, dtype=bool)
            starts[0] = True
            starts[1:] = (sc[1:] != sc[:-1]) | (sk[1:] != sk[:-1])
            newk = int(starts.sum())
            if newk == k:
                break
            new = np.empty(self.n, dtype=np.int64)
            new[order] = np.cumsum(starts) - 1
            h.update(sk[starts].tobytes())
            h.update(np.diff(np.flatnonzero(np.append(starts, True))).astype(np.int32).tobytes())
            colors = new
            k = newk
        return colors, h.digest()

    def child(self, colors: np.ndarray, v: int) -> tuple[np.ndarray, bytes]:
        c = colors[v]
        nxt = 2 * colors + (colors == c)
        nxt[v] = 2 * c
        return self.refine(nxt)

    @staticmethod
    def target(colors: np.ndarray) -> np.ndarray | None:
        """Vertices of the first smallest non-singleton cell, or None if discrete."""
        sizes = np.bincount(colors)
        big = np.flatnonzero(sizes > 1)
        if len(big) == 0:
            return None
        cell = big[np.argmin(sizes[big])]
        return np.flatnonzero(colors == cell)

    def is_automorphism(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(self.adj[np.ix_(g, g)], self.adj))

    def certificate(self, leaf: np.ndarray) -> bytes:
        inv = np.argsort(leaf)
        return np.packbits(self.adj[np.ix_(inv, inv)]).tobytes()


def refine(g: Digraph, partition: ColoredPartition | None = None) -> ColoredPartition:
    """Coarsest equitable refinement of ``partition`` (unit partition by default)."""
    colors = np.zeros(g.n, dtype=np.int64) if partition is None else np.array(partition.colors)
    out, _ = _Refiner(g).refine(colors)
    return ColoredPartition(tuple(int(x) for x in out))


def is_equitable(g: Digraph, partition: ColoredPartition) -> bool:
    cells = partition.cells
    for cell in cells:
        sigs = set()
        for v in cell:
            outs = g.out[v]
            ins = g.inn[v]
            sigs.add(tuple((sum(outs >> u & 1 for u in c), sum(ins >> u & 1 for u in c))
                           for c in cells))
        if len(sigs) > 1:
            return False
    return True


class AutResult:
    """Automorphism group of a digraph with certified order.

    ``canonical_form`` is computed on first access.
    """

    def __init__(self, digraph: Digraph, generators: list[Permutation], order: int,
                 base: list[int], refiner: _Refiner, first_colors: np.ndarray):
        self.digraph = digraph
        self.generators = generators
        self.order = order
        self.base = base
        self._refiner = refiner
        self._root = first_colors
        self._canon: tuple[bytes, np.ndarray] | None = None
        self._group: PermutationGroup | None = None

    @property
    def group(self) -> PermutationGroup:
        if self._group is None:
            self._group = PermutationGroup(self.generators, self.digraph.n, order=self.order)
        return self._group

    def _canonical(self) -> tuple[bytes, np.ndarray]:
        if self._canon is None:
            self._canon = _canonical_search(self._refiner, self._root, self.group)
        return self._canon

    @property
    def canonical_form(self) -> str:
        cert, _ = self._canonical()
        return f"{self.digraph.n}:{cert.hex()}"

    @property
    def canonical_labeling(self) -> list[int]:
        """``labeling[v]`` is the position of vertex ``v`` in the canonical relabelling."""
        return [int(x) for x in self._canonical()[1]]

    def canonical_digraph(self) -> Digraph:
        return self.digraph.relabel(self.canonical_labeling)


def _orbit(gens: Sequence[Sequence[int]], point: int) -> set[int]:
    seen = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def automorphism_group(g: Digraph, seed: PermutationGroup | Iterable[Permutation] | None = None,
                       budget: float | None = None,
                       partition: ColoredPartition | None = None) -> AutResult:
    """Exact automorphism group; ``seed`` holds known automorphisms used for pruning.

    With ``partition`` the result is the colour-preserving automorphism group.
    """
    n = g.n
    deadline = None if budget is None else time.monotonic() + budget
    if isinstance(seed, PermutationGroup):
        seed_group = seed
        seed_gens = list(seed.generators)
    else:
        seed_gens = [s if isinstance(s, Permutation) else Permutation(s) for s in (seed or [])]
        seed_group = PermutationGroup(seed_gens, n) if seed_gens else None
    for s in seed_gens:
        if len(s) != n or not g.is_automorphism(s):
            raise NotAnAutomorphism("seed element is not an automorphism")

    ref = _Refiner(g)
    start = np.zeros(n, dtype=np.int64) if partition is None else np.array(partition.colors)
    if partition is not None:
        for s in seed_gens:
            if any(start[s[v]] != start[v] for v in range(n)):
                raise NotAnAutomorphism("seed element does not preserve the partition")
    root, h0 = ref.refine(start)
    nodes = [root]
    traces = [h0]
    base: list[int] = []
    while True:
        cell = ref.target(nodes[-1])
        if cell is None:
            break
        v = int(cell[0])
        base.append(v)
        c, h = ref.child(nodes[-1], v)
        nodes.append(c)
        traces.append(h)
    first_leaf = nodes[-1]
    first_inv = np.argsort(first_leaf)
    depth = len(base)

    if seed_group is not None and seed_gens and depth:
        chain = seed_group.chain_with_base(base)
        seed_levels = [chain.stabilizer_generators(i) for i in range(depth)]
    else:
        seed_levels = [[] for _ in range(depth)]

    found: list[tuple[int, Permutation]] = []  # (level, automorphism fixing base[:level])

    def check_time():
        if deadline is not None and time.monotonic() > deadline:
            raise AutBudgetExceeded("automorphism search exceeded its time budget")

    def dive(colors: np.ndarray, d: int) -> np.ndarray | None:
        cell = ref.target(colors)
        if cell is None:
            perm = np.argsort(colors)[first_leaf]
            return perm if ref.is_automorphism(perm) else None
        check_time()
        for u in cell:
            c2, h = ref.child(colors, int(u))
            if h != traces[d + 1]:
                continue
            res = dive(c2, d + 1)
            if res is not None:
                return res
        return None

    orbit_sizes = [1] * depth
    for i in range(depth - 1, -1, -1):
        gens_i = list(seed_levels[i]) + [p for lvl, p in found if lvl >= i]
        v = base[i]
        orbit = _orbit(gens_i, v)
        cell = ref.target(nodes[i])
        rejected: set[int] = set()
        for w in cell:
            w = int(w)
            if w in orbit or w in rejected:
                continue
            c2, h = ref.child(nodes[i], w)
            res = dive(c2, i + 1) if h == traces[i + 1] else None
            if res is None:
                rejected |= _orbit(gens_i, w)
                continue
            perm = Permutation._raw(int(x) for x in res)
            found.append((i, perm))
            gens_i.append(perm)
            orbit = _orbit(gens_i, v)
        orbit_sizes[i] = len(orbit)

    gens = seed_gens + [p for _, p in found]
    order = prod(orbit_sizes)
    return AutResult(g, gens, order, base, ref, root)


def _canonical_search(ref: _Refiner, root: np.ndarray, group: PermutationGroup
                      ) -> tuple[bytes, np.ndarray]:
    best: list = [None, None, None]  # traces, certificate, leaf colours
    orbit_cache: dict[tuple[int, ...], list[list[int]]] = {}

    def reps(seq: tuple[int, ...], cell: np.ndarray) -> list[int]:
        if group.is_trivial() or not group.generators:
            return [int(u) for u in cell]
        if seq not in orbit_cache:
            if seq:
                chain = group.chain_with_base(seq)
                gens = chain.stabilizer_generators(len(seq))
            else:
                gens = group.generators
            orbit_cache[seq] = gens
        gens = orbit_cache[seq]
        out = []
        seen: set[int] = set()
        for u in cell:
            u = int(u)
            if u not in seen:
                out.append(u)
                seen |= _orbit(gens, u)
        return out

    def visit(colors: np.ndarray, trace: list[bytes], seq: tuple[int, ...], tied: bool):
        if tied and best[0] is not None:
            d = len(trace) - 1
            if d < len(best[0]):
                if trace[d] > best[0][d]:
                    return
                if trace[d] < best[0][d]:
                    tied = False
        cell = ref.target(colors)
        if cell is None:
            cert = ref.certificate(colors)
            if best[0] is None or (trace, cert) < (best[0], best[1]):
                best[:] = [list(trace), cert, colors]
            return
        for u in reps(seq, cell):
            c2, h = ref.child(colors, u)
            visit(c2, trace + [h], seq + (u,), tied)

    _, h0 = ref.refine(root)
    visit(root, [h0], (), True)
    return best[1], best[2]


def canonical_form(g: Digraph, seed: PermutationGroup | None = None) -> str:
    return automorphism_group(g, seed).canonical_form


def are_isomorphic(g1: Digraph, g2: Digraph, seed1: PermutationGroup | None = None,
                   seed2: PermutationGroup | None = None) -> Permutation | None:
    """Permutation mapping ``g1`` onto ``g2``, or None when they are not isomorphic."""
    if g1.n != g2.n or g1.arc_count() != g2.arc_count():
        return None
    if sorted(g1.out_degrees()) != sorted(g2.out_degrees()):
        return None
    a1 = automorphism_group(g1, seed1)
    a2 = automorphism_group(g2, seed2)
    if a1.canonical_form != a2.canonical_form:
        return None
    lab1, lab2 = a1.canonical_labeling, a2.canonical_labeling
    inv2 = [0] * g2.n
    for v, pos in enumerate(lab2):
        inv2[pos] = v
    witness = Permutation._raw(inv2[lab1[v]] for v in range(g1.n))
    assert g1.relabel(witness) == g2
    return witness


def is_arc_transitive(g: Digraph, aut: AutResult | PermutationGroup | None = None) -> bool:
    """True when ``Aut`` has a single orbit on arcs (vacuously for arcless digraphs)."""
    group = _group_of(g, aut)
    arcs = list(g.arcs())
    if not arcs:
        return True
    u, v = arcs[0]
    return group.order() // group.pointwise_stabilizer([u, v]).order() == len(arcs)


def is_2_arc_transitive(g: Digraph, aut: AutResult | PermutationGroup | None = None) -> bool:
    """Single orbit on directed paths ``u -> v -> w`` with ``w != u``."""
    group = _group_of(g, aut)
    if not is_arc_transitive(g, group):
        return False
    count = 0
    first = None
    for u, v in g.arcs():
        for w in g.out_neighbors(v):
            if w != u:
                count += 1
                if first is None:
                    first = (u, v, w)
    if first is None:
        return True
    return group.order() // group.pointwise_stabilizer(list(first)).order() == count


def _group_of(g: Digraph, aut) -> PermutationGroup:
    if aut is None:
        return automorphism_group(g).group
    if isinstance(aut, AutResult):
        return aut.group
    return aut
