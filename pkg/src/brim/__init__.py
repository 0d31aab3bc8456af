"""Associated Buchsbaum-Rim multiplicities of direct sums R/I_1 + ... + R/I_r
for m-primary monomial ideals, computed exactly from lattice counts."""

from .engine import RegionSpec, br_function, br_function2, br_function2_region, l_module
from .formats import parse_ideal_string
from .ideals import ModuleSpec, MonomialIdeal, colength, minimalize, random_m_primary_ideal, random_module
from .lab import (
    associated_multiplicities,
    br_multiplicity,
    hs_multiplicity,
    l_multiplicity_sum,
    mixed_multiplicities,
)

__all__ = [
    "ModuleSpec",
    "MonomialIdeal",
    "RegionSpec",
    "associated_multiplicities",
    "br_function",
    "br_function2",
    "br_function2_region",
    "br_multiplicity",
    "colength",
    "hs_multiplicity",
    "l_module",
    "l_multiplicity_sum",
    "minimalize",
    "mixed_multiplicities",
    "parse_ideal_string",
    "random_m_primary_ideal",
    "random_module",
]
