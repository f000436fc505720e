"""Regular subgroups and metacirculant witnesses inside a permutation group.

Both searches hinge on a cyclic subgroup ``<x>`` of prime order generated by a
semiregular element.  Elements normalizing ``<x>`` are enumerated exactly by
backtracking over base images: with a base beginning ``b, x(b), x^2(b), ...``
an element ``g`` with ``g x g^-1 = x^k`` is forced on that whole orbit once
``g(b)`` is chosen.  When the prime divides the group order exactly once, all
subgroups of that order are conjugate (Sylow), so one ``<x>`` decides the
answer; otherwise small groups fall back to element enumeration over
conjugacy classes and large ones raise ``SearchInconclusive``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterator, Literal

from sympy import factorint

from .group import PermutationGroup
from .permutation import Permutation

_mul = Permutation.__mul__

ENUMERATION_LIMIT = 200000


class SearchInconclusive(RuntimeError):
    """Raised when a search cannot certify absence within its limits."""


@dataclass
class RegularSubgroup:
    group: PermutationGroup
    shape: Literal["cyclic", "metacyclic-nonabelian", "other"]
    generators: tuple[Permutation, ...]


def _is_semiregular_of_order(x: Permutation, p: int) -> bool:
    return all(len(c) == p for c in x.cycles(include_fixed=True))


def _element_of_order(group: PermutationGroup, p: int, rng: random.Random,
                      tries: int = 20000) -> Permutation | None:
    if group.order() % p:
        return None
    for _ in range(tries):
        g = group.random_element(rng)
        o = g.order()
        if o % p == 0:
            return g ** (o // p)
    raise SearchInconclusive(f"no element of order {p} sampled")


def normalizer_elements(group: PermutationGroup, x: Permutation) -> Iterator[tuple[Permutation, int]]:
    """Yield every ``(g, k)`` with ``g`` in the group and ``g x g^-1 = x^k``.

    ``x`` must be semiregular (all cycles of equal length).
    """
    p = x.order()
    if not _is_semiregular_of_order(x, p):
        raise ValueError("x must be semiregular")
    b = 0
    orbit = [b]
    for _ in range(p - 1):
        orbit.append(x[orbit[-1]])
    chain = group.chain_with_base(orbit)
    base = chain.base
    powers = [Permutation.identity(group.degree)]
    for _ in range(p - 1):
        powers.append(_mul(x, powers[-1]))
    levels = len(base)

    def rec(level: int, acc: Permutation, targets: list[int] | None, k: int):
        # acc fixes nothing in particular; we build g = acc * (element of stabilizer)
        if level == levels:
            if _mul(acc, x) == _mul(powers[k], acc):
                yield acc
            return
        trans = chain.transversal[level]
        if targets is not None and level < p:
            want = targets[level]
            # need acc * u (base[level]) = want, i.e. u(base[level]) = acc^-1(want)
            pre = (~acc)[want]
            u = trans.get(pre)
            if u is None:
                return
            yield from rec(level + 1, _mul(acc, u), targets, k)
            return
        for u in trans.values():
            yield from rec(level + 1, _mul(acc, u), targets, k)

    ident = Permutation.identity(group.degree)
    for c in group.orbit(b):
        for k in range(1, p):
            targets = [c]
            for j in range(1, p):
                targets.append(powers[(k * j) % p][c])
            for g in rec(0, ident, targets, k):
                yield g, k


def _sylow_candidates(group: PermutationGroup, p: int, rng: random.Random) -> list[Permutation]:
    """Representatives of the conjugacy classes of order-p subgroups."""
    order = group.order()
    e = factorint(order).get(p, 0)
    if e == 0:
        return []
    if e == 1:
        x = _element_of_order(group, p, rng)
        return [x] if x is not None else []
    if order > ENUMERATION_LIMIT:
        raise SearchInconclusive(
            f"order {order} has {p}^{e} with e > 1 and is too large to enumerate")
    subgroups: dict[frozenset, Permutation] = {}
    for g in group.elements():
        if not g.is_identity() and g.order() == p:
            key = frozenset(g ** i for i in range(1, p))
            subgroups.setdefault(key, g)
    reps = []
    done: set[frozenset] = set()
    for key, g in sorted(subgroups.items(), key=lambda kv: kv[1]):
        if key in done:
            continue
        reps.append(g)
        stack = [key]
        done.add(key)
        while stack:
            cur = stack.pop()
            for h in group.generators:
                conj = frozenset(y.conjugate(h) for y in cur)
                if conj not in done:
                    done.add(conj)
                    stack.append(conj)
    return reps


def _prime_pair(n: int) -> tuple[int, int] | tuple[int]:
    f = factorint(n)
    if len(f) == 1 and list(f.values()) == [1]:
        return (n,)
    if len(f) == 2 and all(v == 1 for v in f.values()):
        q, p = sorted(f)
        return (p, q)
    raise ValueError(f"degree {n} is neither prime nor a product of two distinct primes")


def find_regular_subgroup(group: PermutationGroup, seed: int = 0,
                          budget: float | None = None) -> RegularSubgroup | None:
    """A regular subgroup for a group of prime or ``pq`` degree, or None if none exists."""
    if not group.is_transitive():
        raise ValueError("group is not transitive")
    n = group.degree
    rng = random.Random(seed)
    deadline = None if budget is None else time.monotonic() + budget
    primes = _prime_pair(n)
    p = primes[0]
    for x in _sylow_candidates(group, p, rng):
        if not _is_semiregular_of_order(x, p):
            continue
        if len(primes) == 1:
            return RegularSubgroup(PermutationGroup([x], n, order=p), "cyclic", (x,))
        q = primes[1]
        for g, k in normalizer_elements(group, x):
            if deadline is not None and time.monotonic() > deadline:
                raise SearchInconclusive("time budget exhausted")
            o = g.order()
            if o % q:
                continue
            y = g ** (o // q)
            # <x> is normal in <x, y>, so |<x, y>| = pq; regular iff transitive
            kk = pow(k, o // q, p)
            cand = PermutationGroup([x, y], n, order=p * q)
            if not cand.is_transitive():
                continue
            shape = "cyclic" if kk == 1 else "metacyclic-nonabelian"
            return RegularSubgroup(cand, shape, (x, y))
    return None


def find_semiregular_pair_metacirculant(group: PermutationGroup, m: int, n: int,
                                        seed: int = 0) -> tuple[Permutation, Permutation] | None:
    """Witness ``(rho, sigma)`` that the group's digraphs are (m, n)-metacirculants.

    ``rho`` is semiregular of order ``n`` with ``m`` orbits; ``sigma``
    normalizes ``<rho>``, permutes its orbits cyclically and ``sigma^m`` fixes
    a point, so labelling by orbits gives the metacirculant coordinates.
    ``n`` must be prime.
    """
    if group.degree != m * n:
        raise ValueError("degree must equal m*n")
    rng = random.Random(seed)
    for rho in _sylow_candidates(group, n, rng):
        if not _is_semiregular_of_order(rho, n):
            continue
        cyc = rho.cycles(include_fixed=True)
        orbit_of = [0] * group.degree
        for i, c in enumerate(cyc):
            for v in c:
                orbit_of[v] = i
        for g, _k in normalizer_elements(group, rho):
            perm = [orbit_of[g[c[0]]] for c in cyc]
            if m > 1:
                # must be a single m-cycle on the orbits
                j, steps = perm[0], 1
                while j != 0:
                    j = perm[j]
                    steps += 1
                if steps != m:
                    continue
            for t in range(n):
                sigma = _mul(g, rho ** t)
                if (sigma ** m).fixed_points():
                    return rho, sigma
    return None
