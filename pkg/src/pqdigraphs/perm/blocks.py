"""Block systems, induced actions, coset actions and related predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .chain import random_schreier_sims
from .group import PermutationGroup
from .permutation import Permutation


class NotTransitiveError(ValueError):
    pass


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSystem:
    """Partition of ``range(degree)`` into equal blocks; ids follow smallest element."""

    block_of: tuple[int, ...]

    def __post_init__(self):
        # renumber so block ids appear in order of first occurrence
        relabel: dict[int, int] = {}
        ids = tuple(relabel.setdefault(b, len(relabel)) for b in self.block_of)
        object.__setattr__(self, "block_of", ids)
        sizes = [0] * len(relabel)
        for b in ids:
            sizes[b] += 1
        if len(set(sizes)) > 1:
            raise ValueError(f"blocks of unequal sizes {sorted(set(sizes))}")

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], degree: int | None = None) -> "BlockSystem":
        n = degree if degree is not None else sum(len(b) for b in blocks)
        block_of = [-1] * n
        for i, blk in enumerate(blocks):
            for x in blk:
                if block_of[x] != -1:
                    raise ValueError(f"point {x} in two blocks")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the domain")
        return cls(tuple(block_of))

    @property
    def degree(self) -> int:
        return len(self.block_of)

    @property
    def block_count(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    @property
    def block_size(self) -> int:
        return self.degree // self.block_count if self.block_of else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def is_trivial(self) -> bool:
        return self.block_count in (1, self.degree)

    def image(self, g: Permutation) -> list[int]:
        """Action of ``g`` on block ids; raises if ``g`` does not preserve the partition."""
        img = [-1] * self.block_count
        for x, b in enumerate(self.block_of):
            gb = self.block_of[g[x]]
            if img[b] == -1:
                img[b] = gb
            elif img[b] != gb:
                raise NotInvariantError("partition is not invariant")
        return img

    def is_invariant(self, group: PermutationGroup) -> bool:
        try:
            for g in group.generators:
                self.image(g)
        except NotInvariantError:
            return False
        return True

    def refines(self, other: "BlockSystem") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        seen: dict[int, int] = {}
        return all(seen.setdefault(b, o) == o for b, o in zip(self.block_of, other.block_of))


@dataclass
class ActionResult:
    """Image group of an action; ``hom`` maps any element of the source group."""

    group: PermutationGroup
    point_map: list[Any] = field(default_factory=list)
    hom: Callable[[Permutation], Permutation] | None = None


def _require_transitive(group: PermutationGroup) -> None:
    if not group.is_transitive():
        raise NotTransitiveError("group is not transitive")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _closure(group: PermutationGroup, pairs: Sequence[tuple[int, int]]) -> BlockSystem:
    n = group.degree
    uf = _UnionFind(n)
    queue = []
    for a, b in pairs:
        if uf.union(a, b):
            queue.append((a, b))
    gens = group.generators
    while queue:
        x, y = queue.pop()
        for g in gens:
            if uf.union(g[x], g[y]):
                queue.append((g[x], g[y]))
    return BlockSystem(tuple(uf.find(x) for x in range(n)))


def minimal_block_system(group: PermutationGroup, a: int, b: int) -> BlockSystem:
    """Finest group-invariant partition in which ``a`` and ``b`` share a block."""
    _require_transitive(group)
    if a == b:
        raise ValueError("a and b must differ")
    return _closure(group, [(a, b)])


def _join(group: PermutationGroup, x: BlockSystem, y: BlockSystem) -> BlockSystem:
    pairs = []
    for bs in (x, y):
        for blk in bs.blocks():
            pairs.extend((blk[0], z) for z in blk[1:])
    return _closure(group, pairs)


def _sort_key(bs: BlockSystem):
    return (bs.block_size, bs.block_of)


def all_block_systems(group: PermutationGroup) -> list[BlockSystem]:
    """Every nontrivial invariant partition, sorted by block size."""
    _require_transitive(group)
    n = group.degree
    found: dict[tuple[int, ...], BlockSystem] = {}
    for b in range(1, n):
        bs = minimal_block_system(group, 0, b)
        if not bs.is_trivial():
            found.setdefault(bs.block_of, bs)
    frontier = list(found.values())
    while frontier:
        new = []
        current = list(found.values())
        for x in frontier:
            for y in current:
                j = _join(group, x, y)
                if not j.is_trivial() and j.block_of not in found:
                    found[j.block_of] = j
                    new.append(j)
        frontier = new
    return sorted(found.values(), key=_sort_key)


def is_primitive(group: PermutationGroup) -> bool:
    _require_transitive(group)
    return all(minimal_block_system(group, 0, b).block_count == 1
               for b in range(1, group.degree))


def _block_action_chain(group: PermutationGroup, bs: BlockSystem):
    """Chain of the group acting on points and blocks simultaneously.

    Base starts with the block points, so the stabilizer at that depth is the
    kernel of the action on blocks.
    """
    n, m = group.degree, bs.block_count
    combined = []
    for g in group.generators:
        combined.append(Permutation._raw(list(g) + [n + b for b in bs.image(g)]))
    base = list(range(n, n + m))
    chain = random_schreier_sims(combined, n + m, group.order(), base=base, seed=1)
    return chain, m


def fixer(group: PermutationGroup, bs: BlockSystem) -> PermutationGroup:
    """Subgroup fixing every block setwise."""
    if bs.degree != group.degree or not bs.is_invariant(group):
        raise NotInvariantError("partition is not invariant under the group")
    chain, m = _block_action_chain(group, bs)
    n = group.degree
    gens = [Permutation._raw(g[:n]) for g in chain.stabilizer_generators(m)]
    return PermutationGroup(gens, n, order=chain.stabilizer_order(m))


def induced_action(group: PermutationGroup, bs: BlockSystem) -> ActionResult:
    if bs.degree != group.degree or not bs.is_invariant(group):
        raise NotInvariantError("partition is not invariant under the group")
    m = bs.block_count
    gens = [Permutation._raw(bs.image(g)) for g in group.generators]
    kernel_order = fixer(group, bs).order()
    image = PermutationGroup(gens, m, order=group.order() // kernel_order)
    return ActionResult(image, bs.blocks(), lambda g: Permutation._raw(bs.image(g)))


def is_quasiprimitive(group: PermutationGroup) -> bool:
    _require_transitive(group)
    return all(fixer(group, bs).order() == 1 for bs in all_block_systems(group))


def suborbits(group: PermutationGroup, point: int = 0) -> list[list[int]]:
    """Orbits of the point stabilizer, sorted by (size, smallest element)."""
    _require_transitive(group)
    stab = group.stabilizer(point)
    return sorted(stab.orbits(), key=lambda o: (len(o), o[0]))


def point_stabilizer(group: PermutationGroup, point: int) -> PermutationGroup:
    return group.stabilizer(point)


def coset_action(group: PermutationGroup, subgroup: PermutationGroup,
                 max_subgroup_order: int = 200000) -> ActionResult:
    """Action of ``group`` by left multiplication on the cosets ``gH``.

    ``point_map[i]`` is a representative of the i-th coset, coset 0 being H.
    """
    for h in subgroup.generators:
        if not group.contains(h):
            raise ValueError("subgroup generator not in group")
    if subgroup.order() > max_subgroup_order:
        raise ValueError("subgroup too large for coset enumeration")
    h_elems = list(subgroup.elements())

    def key(g: Permutation) -> Permutation:
        return min(g * h for h in h_elems)

    ident = group.identity()
    reps = [ident]
    index = {key(ident): 0}
    images: list[list[int]] = [[] for _ in group.generators]
    k = 0
    while k < len(reps):
        r = reps[k]
        for gi, g in enumerate(group.generators):
            kk = key(g * r)
            j = index.get(kk)
            if j is None:
                j = len(reps)
                index[kk] = j
                reps.append(g * r)
            images[gi].append(j)
        k += 1
    gens = [Permutation._raw(img) for img in images]

    def hom(g: Permutation) -> Permutation:
        return Permutation._raw(index[key(g * r)] for r in reps)

    return ActionResult(PermutationGroup(gens, len(reps)), reps, hom)


def orbit_action(group: PermutationGroup, seed_object: Any, act) -> ActionResult:
    """Action on the orbit of ``seed_object`` under ``act(g, obj)``; objects must be hashable."""
    objs = [seed_object]
    index = {seed_object: 0}
    images: list[list[int]] = [[] for _ in group.generators]
    k = 0
    while k < len(objs):
        o = objs[k]
        for gi, g in enumerate(group.generators):
            img = act(g, o)
            j = index.get(img)
            if j is None:
                j = len(objs)
                index[img] = j
                objs.append(img)
            images[gi].append(j)
        k += 1
    gens = [Permutation._raw(img) for img in images]

    def hom(g: Permutation) -> Permutation:
        return Permutation._raw(index[act(g, o)] for o in objs)

    return ActionResult(PermutationGroup(gens, len(objs)), objs, hom)
