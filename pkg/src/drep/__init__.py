"""Derived representation schemes: matrix expansion of almost-free DG resolutions,
cohomology of the expanded algebras, and derived tangent spaces."""

from .cohomology import CohomologyClass, Complex
from .expand import ExpandedAlgebra, detect_weights, expand, h0_ideal
from .ncalg import Generator, NCPoly, Resolution, validate_resolution
from .parser import parse_algebra, parse_rep, print_algebra, print_rep
from .tangent import Representation, check_p2, hh_koszul, tangent_cohomology, validate_rep

__version__ = "0.1.0"

__all__ = [
    "CohomologyClass", "Complex", "ExpandedAlgebra", "Generator", "NCPoly", "Representation",
    "Resolution", "check_p2", "detect_weights", "expand", "h0_ideal", "hh_koszul",
    "parse_algebra", "parse_rep", "print_algebra", "print_rep", "tangent_cohomology",
    "validate_rep", "validate_resolution",
]
