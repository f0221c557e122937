"""Koszulity, distributivity and Hilbert series for algebras with one homogeneous relation."""

from .exactlin import GF, Subspace, Tensor, contains, extend, intersect, span, subspace_sum
from .presentation import (
    Presentation,
    ResourceError,
    free_product,
    graded_dim,
    nu,
    w_space,
)

__all__ = [
    "GF",
    "Presentation",
    "ResourceError",
    "Subspace",
    "Tensor",
    "contains",
    "extend",
    "free_product",
    "graded_dim",
    "intersect",
    "nu",
    "span",
    "subspace_sum",
    "w_space",
]

__version__ = "0.1.0"
