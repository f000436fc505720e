"""Permutation groups, digraph automorphisms and a verification census for
vertex-transitive digraphs of order pq."""

from .autiso import are_isomorphic, automorphism_group, canonical_form
from .digraph import Digraph, cayley_digraph, metacirculant, orbital_digraphs
from .ms import MSParams, classify_ms, ms_aut_fast, ms_digraph, ms_isomorphic_fast
from .perm import Permutation, PermutationGroup

__all__ = [
    "Digraph", "MSParams", "Permutation", "PermutationGroup", "are_isomorphic",
    "automorphism_group", "canonical_form", "cayley_digraph", "classify_ms", "metacirculant",
    "ms_aut_fast", "ms_digraph", "ms_isomorphic_fast", "orbital_digraphs",
]
