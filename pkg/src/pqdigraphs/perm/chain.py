"""Stabilizer chains (base and strong generating set) via Schreier-Sims.

Two builders are provided.  ``schreier_sims`` is the deterministic algorithm:
every Schreier generator at every level is sifted, so the resulting chain is
complete regardless of input.  ``random_schreier_sims`` sifts random group
elements and stops once the chain accounts for a group order that is already
certified (for instance by a deterministic chain of the same group on another
base); a chain whose basic orbits multiply to the true order is complete.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .permutation import Permutation

_mul = Permutation.__mul__


class StabilizerChain:
    """Base points with, per level, strong generators and an orbit transversal.

    ``transversal[i][y]`` is a group element mapping ``base[i]`` to ``y`` and
    fixing ``base[:i]`` pointwise.
    """

    def __init__(self, degree: int, base: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[list[Permutation]] = []
        self.transversal: list[dict[int, Permutation]] = []
        self.inverse_transversal: list[dict[int, Permutation]] = []
        self._identity = Permutation.identity(degree)
        for b in base:
            self._add_level(b)

    def _add_level(self, b: int) -> None:
        self.base.append(b)
        self.strong.append([])
        self.transversal.append({b: self._identity})
        self.inverse_transversal.append({b: self._identity})

    def _extend_orbit(self, i: int) -> None:
        trans = self.transversal[i]
        inv = self.inverse_transversal[i]
        gens = self.strong[i]
        queue = list(trans)
        k = 0
        # re-scan all points: new generators may act on old points
        while k < len(queue):
            x = queue[k]
            k += 1
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    u = _mul(s, ux)
                    trans[y] = u
                    inv[y] = ~u
                    queue.append(y)

    def add_strong_generator_from(self, g: Permutation, lo: int, hi: int) -> None:
        """Add residue ``g`` (fixing ``base[:hi]``) to levels ``lo..hi``."""
        if hi >= len(self.base):
            moved = [x for x in g.support() if x not in self.base]
            self._add_level(moved[0])
            hi = len(self.base) - 1
        for level in range(lo, hi + 1):
            self.strong[level].append(g)
            self._extend_orbit(level)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through the chain from level ``start``.

        Returns the residue and the level at which stripping stopped
        (``len(base)`` when every level was passed).
        """
        for i in range(start, len(self.base)):
            y = g[self.base[i]]
            inv = self.inverse_transversal[i].get(y)
            if inv is None:
                return g, i
            g = _mul(inv, g)
        return g, len(self.base)

    def contains(self, g: Permutation) -> bool:
        if len(g) != self.degree:
            return False
        residue, _ = self.sift(g)
        return residue.is_identity()

    def order(self) -> int:
        n = 1
        for t in self.transversal:
            n *= len(t)
        return n

    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.transversal]

    def stabilizer_generators(self, level: int) -> list[Permutation]:
        """Strong generators of the pointwise stabilizer of ``base[:level]``."""
        if level >= len(self.base):
            return []
        return list(self.strong[level])

    def stabilizer_order(self, level: int) -> int:
        n = 1
        for t in self.transversal[level:]:
            n *= len(t)
        return n

    def random_element(self, rng: random.Random) -> Permutation:
        g = self._identity
        for t in self.transversal:
            g = _mul(g, t[rng.choice(list(t))])
        return g

    def elements(self) -> Iterator[Permutation]:
        """Enumerate every group element exactly once."""

        def rec(level: int, acc: Permutation) -> Iterator[Permutation]:
            if level == len(self.base):
                yield acc
                return
            for u in self.transversal[level].values():
                yield from rec(level + 1, _mul(acc, u))

        yield from rec(0, self._identity)

    def verify_short_products(self, generators: Sequence[Permutation]) -> bool:
        """Membership of every generator and every product of two generators."""
        for a in generators:
            if not self.contains(a):
                return False
            for b in generators:
                if not self.contains(_mul(a, b)):
                    return False
        return True


def _clean(gens: Iterable[Permutation]) -> list[Permutation]:
    out = []
    seen = set()
    for g in gens:
        if not g.is_identity() and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def schreier_sims(generators: Iterable[Permutation], degree: int,
                  base: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims; ``base`` is a prefix the chain must start with."""
    gens = _clean(generators)
    chain = StabilizerChain(degree, base)
    if not gens:
        return chain
    if all(all(g[b] == b for b in chain.base) for g in gens):
        moved = [x for x in gens[0].support() if x not in chain.base]
        chain._add_level(moved[0])
    for g in gens:
        # level of g = index of first base point it moves
        upto = next(i for i, b in enumerate(chain.base) if g[b] != b) if any(
            g[b] != b for b in chain.base) else None
        if upto is None:
            moved = [x for x in g.support() if x not in chain.base]
            chain._add_level(moved[0])
            upto = len(chain.base) - 1
        for level in range(upto + 1):
            chain.strong[level].append(g)
    for level in range(len(chain.base)):
        chain._extend_orbit(level)

    i = len(chain.base) - 1
    while i >= 0:
        restarted = False
        trans = chain.transversal[i]
        inv = chain.inverse_transversal[i]
        for beta in list(trans):
            u_beta = trans[beta]
            for s in list(chain.strong[i]):
                h = _mul(inv[s[beta]], _mul(s, u_beta))
                residue, j = chain.sift(h, i + 1)
                if not residue.is_identity():
                    chain.add_strong_generator_from(residue, i + 1, j)
                    i = j if j < len(chain.base) else len(chain.base) - 1
                    restarted = True
                    break
            if restarted:
                break
        if not restarted:
            i -= 1
    return chain


def random_schreier_sims(generators: Sequence[Permutation], degree: int, order: int,
                         base: Sequence[int] = (), seed: int = 0,
                         source: StabilizerChain | None = None,
                         max_rounds: int = 200000) -> StabilizerChain:
    """Chain with prescribed base prefix for a group of certified ``order``.

    Random elements come from ``source`` (a complete chain of the same group,
    giving uniform samples) or from a product-replacement walk on
    ``generators``.
    """
    rng = random.Random(seed)
    chain = StabilizerChain(degree, base)
    gens = _clean(generators)
    if order == 1 or not gens:
        return chain
    if source is None:
        walker = _ProductReplacement(gens, rng)
        sample = walker.next
    else:
        def sample() -> Permutation:
            return source.random_element(rng)
    # seed the chain with the generators themselves
    pending = list(gens)
    rounds = 0
    while chain.order() < order:
        g = pending.pop() if pending else sample()
        residue, j = chain.sift(g)
        if not residue.is_identity():
            if not chain.base or all(residue[b] == b for b in chain.base):
                j = len(chain.base)
            chain.add_strong_generator_from(residue, 0, j)
        rounds += 1
        if rounds > max_rounds:
            raise RuntimeError("random Schreier-Sims did not reach the certified order")
        if chain.order() > order:
            raise ValueError("certified order is smaller than the group")
    return chain


class _ProductReplacement:
    def __init__(self, gens: Sequence[Permutation], rng: random.Random, slots: int = 10):
        self.rng = rng
        state = list(gens)
        while len(state) < slots:
            state.extend(gens)
        self.state = state[:max(slots, len(gens))]
        self.acc = Permutation.identity(len(gens[0]))
        for _ in range(50):
            self.next()

    def next(self) -> Permutation:
        st = self.state
        i, j = self.rng.sample(range(len(st)), 2)
        if self.rng.random() < 0.5:
            st[i] = _mul(st[i], st[j])
        else:
            st[i] = _mul(st[i], ~st[j])
        self.acc = _mul(self.acc, st[i])
        return self.acc
