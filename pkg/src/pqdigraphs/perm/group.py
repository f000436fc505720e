"""Permutation groups given by generators, with a lazily built stabilizer chain."""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .chain import StabilizerChain, random_schreier_sims, schreier_sims
from .permutation import Permutation


class PermutationGroup:
    """Subgroup of Sym(n) generated by ``generators``.

    ``order`` may be supplied when it is already certified (for example the
    same abstract group acting faithfully elsewhere); the chain is then built
    by random sifting until that order is reached.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 order: int | None = None, name: str | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators: list[Permutation] = gens
        self.name = name
        self._order_hint = order
        self._chain: StabilizerChain | None = None
        self._chains: dict[tuple[int, ...], StabilizerChain] = {}

    # -- chain -------------------------------------------------------------
    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            if self._order_hint is not None:
                self._chain = random_schreier_sims(self.generators, self.degree,
                                                   self._order_hint)
            else:
                self._chain = schreier_sims(self.generators, self.degree)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        """A complete chain whose base starts with ``prefix``."""
        key = tuple(prefix)
        if key not in self._chains:
            main = self.chain
            if tuple(main.base[:len(key)]) == key:
                self._chains[key] = main
            else:
                self._chains[key] = random_schreier_sims(
                    self.generators, self.degree, main.order(), base=key, source=main)
        return self._chains[key]

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, g: Sequence[int]) -> bool:
        return self.chain.contains(g if isinstance(g, Permutation) else Permutation(g))

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    def random_element(self, rng: random.Random) -> Permutation:
        return self.chain.random_element(rng)

    # -- orbits ------------------------------------------------------------
    def orbit(self, point: int) -> list[int]:
        """Sorted orbit of ``point`` under the generators."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        done = [False] * self.degree
        out = []
        for x in range(self.degree):
            if not done[x]:
                orb = self.orbit(x)
                for y in orb:
                    done[y] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    # -- subgroups ---------------------------------------------------------
    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        if not points:
            return self
        chain = self.chain_with_base(points)
        k = len(points)
        gens = chain.stabilizer_generators(k)
        return PermutationGroup(gens, self.degree, order=chain.stabilizer_order(k))

    def stabilizer(self, point: int) -> "PermutationGroup":
        return self.pointwise_stabilizer([point])

    def subgroup(self, generators: Iterable[Permutation]) -> "PermutationGroup":
        gens = list(generators)
        for g in gens:
            if not self.contains(g):
                raise ValueError("generator not in group")
        return PermutationGroup(gens, self.degree)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        return all(self.contains(h.conjugate(g))
                   for g in other.generators for h in self.generators)

    def same_group(self, other: "PermutationGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def conjugate(self, g: Permutation) -> "PermutationGroup":
        """The group ``g H g^-1``."""
        return PermutationGroup([h.conjugate(g) for h in self.generators], self.degree,
                                order=self.order())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermutationGroup{label} degree={self.degree} gens={len(self.generators)}>"


def symmetric_group(n: int) -> PermutationGroup:
    if n <= 1:
        return PermutationGroup([], max(n, 1) if n else 0)
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return PermutationGroup(gens, n)


def cyclic_group(n: int) -> PermutationGroup:
    return PermutationGroup([Permutation.from_cycles([list(range(n))], n)] if n > 1 else [], n)
