"""Group actions used by the census cases."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from sympy import primitive_root

from ..perm import (Permutation, PermutationGroup, coset_action, orbit_action,
                    read_generators)

M23_ORDER = 10200960


class BuildError(RuntimeError):
    """A builder could not produce a valid group (bad data or construction bug)."""


def data_dir() -> Path:
    env = os.environ.get("CENSUS_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("pqdigraphs") / "data"))


# -- projective lines over prime fields ---------------------------------------

def _mobius(q: int, a: int, b: int, c: int, d: int) -> Permutation:
    """``x -> (ax+b)/(cx+d)`` on ``0..q-1`` plus ``q`` for infinity."""
    img = []
    for x in range(q + 1):
        if x == q:
            img.append(q if c == 0 else a * pow(c, -1, q) % q)
        else:
            den = (c * x + d) % q
            img.append(q if den == 0 else (a * x + b) * pow(den, -1, q) % q)
    return Permutation(img)


def projective_line_group(q: int, full: bool = False) -> PermutationGroup:
    """PSL(2,q), or PGL(2,q) when ``full``, on the q+1 points of the projective line."""
    g = primitive_root(q)
    scale = g if full else g * g % q
    gens = [_mobius(q, 1, 1, 0, 1), _mobius(q, 0, q - 1, 1, 0), _mobius(q, scale, 0, 0, 1)]
    order = q * (q * q - 1) // (1 if full else 2)
    return PermutationGroup(gens, q + 1, order=order,
                            name=f"{'PGL' if full else 'PSL'}(2,{q})")


def find_a4(group: PermutationGroup) -> PermutationGroup:
    """Some subgroup ``<a, b>`` of order 12 with |a| = 3, |b| = 2 and |ab| = 3."""
    elems = list(group.elements())
    threes = [g for g in elems if g.order() == 3]
    twos = [g for g in elems if g.order() == 2]
    for a in threes:
        for b in twos:
            if (a * b).order() == 3:
                h = PermutationGroup([a, b], group.degree)
                if h.order() == 12:
                    return h
    raise BuildError("no A4 subgroup found")


def _normalizing_outside(big: PermutationGroup, small: PermutationGroup,
                         sub: PermutationGroup) -> Permutation:
    """An element of ``big`` outside ``small`` normalizing ``sub``."""
    for g in big.elements():
        if not small.contains(g) and all(sub.contains(h.conjugate(g)) for h in sub.generators):
            return g
    raise BuildError("no normalizing element outside the subgroup")


@dataclass
class LinearPair:
    """PSL(2,q) and PGL(2,q) acting on the same points."""

    psl: PermutationGroup
    pgl: PermutationGroup


def psl2_on_a4_cosets(q: int) -> LinearPair:
    """PSL(2,q) on cosets of A4, with PGL(2,q) on cosets of the S4 normalizing it.

    For these q the S4 meets PSL(2,q) in the A4, so both act on the same
    ``|PSL(2,q)|/12`` points.
    """
    psl = projective_line_group(q)
    pgl = projective_line_group(q, full=True)
    a4 = find_a4(psl)
    t = _normalizing_outside(pgl, psl, a4)
    s4 = PermutationGroup(a4.generators + [t], q + 1)
    if s4.order() != 24:
        raise BuildError(f"normalizer has order {s4.order()}, expected 24")
    act = coset_action(pgl, s4)
    n = pgl.order() // 24
    big = PermutationGroup(act.group.generators, n, order=pgl.order(), name=f"PGL(2,{q})")
    small = PermutationGroup([act.hom(g) for g in psl.generators], n, order=psl.order(),
                             name=f"PSL(2,{q})")
    if not (small.is_transitive() and small.stabilizer(0).order() == 12):
        raise BuildError("PSL action has the wrong point stabilizer")
    return LinearPair(small, big)


def build_psl2_11_degree55() -> LinearPair:
    return psl2_on_a4_cosets(11)


def build_psl2_13_degree91() -> LinearPair:
    return psl2_on_a4_cosets(13)


# -- PSL(3,2) on the flags of the Fano plane ----------------------------------

@dataclass
class FlagAction:
    psl: PermutationGroup
    with_duality: PermutationGroup
    flags: list[tuple[tuple[int, ...], tuple[int, ...]]]


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) % 2 for i in range(3))


def _inverse_transpose_gf2(m):
    for cand in itertools.product(range(2), repeat=9):
        inv = [cand[0:3], cand[3:6], cand[6:9]]
        if all(sum(m[i][k] * inv[k][j] for k in range(3)) % 2 == (i == j)
               for i in range(3) for j in range(3)):
            return [[inv[j][i] for j in range(3)] for i in range(3)]
    raise BuildError("singular matrix")


def build_psl3_2_degree21() -> FlagAction:
    """Points ``x`` and lines ``y`` of PG(2,2) with ``x . y = 0``; matrices act as ``(Mx, M^-T y)``."""
    vecs = [v for v in itertools.product(range(2), repeat=3) if any(v)]
    flags = [(x, y) for x in vecs for y in vecs if sum(a * b for a, b in zip(x, y)) % 2 == 0]
    index = {f: i for i, f in enumerate(flags)}

    def act(m):
        mt = _inverse_transpose_gf2(m)
        return Permutation([index[(_mat_vec(m, x), _mat_vec(mt, y))] for x, y in flags])

    gens = [act([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), act([[0, 0, 1], [1, 0, 0], [0, 1, 0]])]
    duality = Permutation([index[(y, x)] for x, y in flags])
    psl = PermutationGroup(gens, 21, name="PSL(3,2)")
    full = PermutationGroup(gens + [duality], 21, name="PSL(3,2).2")
    if psl.order() != 168 or full.order() != 336:
        raise BuildError("flag action has the wrong order")
    return FlagAction(psl, full, flags)


# -- M23 on the 253 heptads ---------------------------------------------------

def load_m23(path: Path | None = None) -> PermutationGroup:
    path = path or data_dir() / "m23.gens"
    if not path.exists():
        raise BuildError(f"missing generator file {path}")
    try:
        g = read_generators(path)
    except ValueError as exc:
        raise BuildError(f"{path}: {exc}") from None
    if g.degree != 23 or not g.is_transitive() or g.order() != M23_ORDER:
        raise BuildError(f"{path} does not generate M23 (order {g.order()})")
    g.name = "M23"
    return g


def _heptad_orbit_ok(m23: PermutationGroup, heptad: frozenset[int]) -> PermutationGroup | None:
    act = orbit_action(m23, heptad, lambda g, s: frozenset(g[x] for x in s))
    if act.group.degree != 253:
        return None
    return PermutationGroup(act.group.generators, 253, order=M23_ORDER, name="M23")


def find_heptad(m23: PermutationGroup) -> frozenset[int]:
    """A 7-set whose orbit has 253 members (setwise stabilizer of order 40320).

    Any four points lie in exactly one block of S(4,7,23); the remaining three
    points of that block form an orbit of the pointwise stabilizer of the four.
    """
    four = [0, 1, 2, 3]
    stab = m23.pointwise_stabilizer(four)
    for orb in stab.orbits():
        if len(orb) == 3:
            hept = frozenset(four + orb)
            if _heptad_orbit_ok(m23, hept) is not None:
                return hept
    raise BuildError("heptad search failed")


def build_m23_degree253(cache: Path | None = None) -> tuple[PermutationGroup, frozenset[int]]:
    """M23 on the orbit of a heptad; the heptad is cached as JSON next to the generators."""
    m23 = load_m23()
    cache = cache or data_dir() / "m23_heptad.json"
    hept = None
    if cache.exists():
        try:
            hept = frozenset(json.loads(cache.read_text())["heptad"])
        except (ValueError, KeyError, TypeError):
            hept = None
    group = _heptad_orbit_ok(m23, hept) if hept and len(hept) == 7 else None
    if group is None:
        hept = find_heptad(m23)
        group = _heptad_orbit_ok(m23, hept)
        try:
            cache.write_text(json.dumps({"heptad": sorted(hept)}) + "\n")
        except OSError:
            pass
    if group.stabilizer(0).order() != 40320:
        raise BuildError("heptad stabilizer has the wrong order")
    return group, hept
