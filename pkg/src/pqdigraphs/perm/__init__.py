"""Permutation-group engine."""

from .blocks import (ActionResult, BlockSystem, NotInvariantError, NotTransitiveError,
                     all_block_systems, coset_action, fixer, induced_action, is_primitive,
                     is_quasiprimitive, minimal_block_system, orbit_action, point_stabilizer,
                     suborbits)
from .chain import StabilizerChain, random_schreier_sims, schreier_sims
from .group import PermutationGroup, cyclic_group, symmetric_group
from .io import format_generators, parse_generators, read_generators, write_generators
from .permutation import Permutation, compose, inverse
from .search import (RegularSubgroup, SearchInconclusive, find_regular_subgroup,
                     find_semiregular_pair_metacirculant, normalizer_elements)


def orbit(group: PermutationGroup, point: int) -> list[int]:
    return group.orbit(point)


__all__ = [
    "ActionResult", "BlockSystem", "NotInvariantError", "NotTransitiveError", "Permutation",
    "PermutationGroup", "RegularSubgroup", "SearchInconclusive", "StabilizerChain",
    "all_block_systems", "compose", "coset_action", "cyclic_group", "find_regular_subgroup",
    "find_semiregular_pair_metacirculant", "fixer", "format_generators", "induced_action",
    "inverse", "is_primitive", "is_quasiprimitive", "minimal_block_system",
    "normalizer_elements", "orbit", "orbit_action", "parse_generators", "point_stabilizer",
    "random_schreier_sims", "read_generators", "schreier_sims", "suborbits",
    "symmetric_group", "write_generators",
]
