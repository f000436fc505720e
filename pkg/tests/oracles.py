"""Brute-force oracles used to cross-check the chain-based and search-based code.

Nothing here imports the algorithms it checks, apart from the container types.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from pqdigraphs.digraph import Digraph


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[x]] for x in range(len(q)))


def closure(generators: Sequence[Sequence[int]], n: int) -> set[tuple[int, ...]]:
    """All elements of the group generated by ``generators`` (breadth first)."""
    ident = tuple(range(n))
    gens = [tuple(g) for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orbits(elements: set[tuple[int, ...]], n: int) -> list[list[int]]:
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        orb = sorted({g[x] for g in elements})
        seen |= set(orb)
        out.append(orb)
    return out


def suborbit_sizes(elements: set[tuple[int, ...]], n: int, point: int = 0) -> list[int]:
    stab = {g for g in elements if g[point] == point}
    return sorted(len(o) for o in orbits(stab, n))


def block_systems(elements: set[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    """Every nontrivial invariant partition, as a canonical block-of tuple.

    Enumerates candidate blocks containing 0 (subsets closed under the stabilizer
    action of being a block), which is exhaustive for transitive groups.
    """
    out = set()
    for size in range(2, n):
        if n % size:
            continue
        for rest in itertools.combinations(range(1, n), size - 1):
            block = frozenset((0,) + rest)
            images = {frozenset(g[x] for x in block) for g in elements}
            if any(b != block and b & block for b in images):
                continue
            cover = set().union(*images)
            if len(cover) != n:
                continue
            label = {x: min(b) for b in images for x in b}
            ids = sorted(set(label.values()))
            out.add(tuple(ids.index(label[x]) for x in range(n)))
    return out


def is_primitive(elements: set[tuple[int, ...]], n: int) -> bool:
    return not block_systems(elements, n)


def conjugacy_classes(elements: set[tuple[int, ...]]) -> list[set[tuple[int, ...]]]:
    inv = {g: tuple(int(i) for i in np.argsort(g)) for g in elements}
    left, out = set(elements), []
    while left:
        x = next(iter(left))
        cls = {compose(compose(g, x), inv[g]) for g in elements}
        out.append(cls)
        left -= cls
    return out


def is_quasiprimitive(elements: set[tuple[int, ...]], n: int) -> bool:
    """Direct definition: every nontrivial normal closure of one element is transitive.

    The normal closure of x is generated by its conjugacy class.
    """
    ident = tuple(range(n))
    for cls in conjugacy_classes(elements):
        if ident in cls:
            continue
        if len(orbits(closure(sorted(cls), n), n)) != 1:
            return False
    return True


_PERMS: dict[int, np.ndarray] = {}


def all_perms(n: int) -> np.ndarray:
    if n not in _PERMS:
        _PERMS[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    return _PERMS[n]


def aut_order(g: Digraph) -> int:
    """|Aut(g)| by testing every permutation of the vertices (n <= 8)."""
    a = g.matrix.astype(bool)
    P = all_perms(g.n).astype(np.intp)
    # relabelled[k][u][v] = a[P[k,u], P[k,v]]
    relabelled = a[P[:, :, None], P[:, None, :]]
    return int(np.all(relabelled == a, axis=(1, 2)).sum())


def isomorphic(g1: Digraph, g2: Digraph) -> bool:
    if g1.n != g2.n:
        return False
    a, b = g1.matrix.astype(bool), g2.matrix.astype(bool)
    P = all_perms(g1.n).astype(np.intp)
    return bool(np.any(np.all(a[P[:, :, None], P[:, None, :]] == b, axis=(1, 2))))
