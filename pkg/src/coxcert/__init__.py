"""Exact certificates for infinite generation of total coordinate rings.

The package verifies, in exact arithmetic, the combinatorial and lattice
conditions under which the total coordinate ring of a blowup of projective
space at a finite point configuration fails to be finitely generated:
pencil and net base loci, Mordell-Weil style rank counts from incidence
data, Weyl-orbit growth of exceptional classes, and the Galois-twisted
vector-group actions whose invariant rings realize the same phenomenon.
"""

from .fields import Field, Element, UniPoly, FieldError, field_create

__all__ = [
    "Field",
    "Element",
    "UniPoly",
    "FieldError",
    "field_create",
]

__version__ = "0.1.0"
