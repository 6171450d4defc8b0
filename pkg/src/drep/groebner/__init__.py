"""Exact Groebner bases, syzygies and Hilbert functions for graded modules over Q."""

from .basis import GBEngine
from .modules import (FreeModuleMap, GroebnerBasis, InhomogeneousError, MinimalGenerators,
                      ModulePresentation, buchberger, minimal_subset, minimal_subset_indices,
                      syzygies)
from .ring import Poly, PolyRing, unit_vector, vector_degree, zero_vector


def normal_form(f, gb: GroebnerBasis):
    return gb.normal_form(f)


def hilbert_function(mp: ModulePresentation, up_to: int):
    return mp.hilbert_function(up_to)


def minimal_generators(mp: ModulePresentation) -> MinimalGenerators:
    return mp.minimal_generators()


__all__ = [
    "FreeModuleMap", "GBEngine", "GroebnerBasis", "InhomogeneousError", "MinimalGenerators",
    "ModulePresentation", "Poly", "PolyRing", "buchberger", "hilbert_function",
    "minimal_generators", "minimal_subset", "minimal_subset_indices", "normal_form",
    "syzygies", "unit_vector", "vector_degree", "zero_vector",
]
