"""Association schemes on Schubert cells of Grassmannians over finite fields.

The scheme on a cell relates two points by the pivot set of their
difference; it coincides with the generalized wreath product of one-class
schemes over the poset of the cell's free coordinates.
"""

from .fields import FieldSpec, FiniteField, make_field
from .posets import (
    Poset,
    alpha_to_partition,
    antichains,
    down_set,
    ferrers_poset,
    is_antichain,
    partition_to_alpha,
    subpartitions,
)
from .schemes import SchemeInstance, is_symmetric, one_class_scheme, valencies, verify_scheme
from .schubert import SchubertCell, all_cells, cell_scheme, enumerate_cell, make_cell
from .verify import gaussian_binomial, verify_cell, verify_grassmannian
from .wreath import GwpLabel, GwpSpec, build_gwp, one_class_gwp

__all__ = [
    "FieldSpec",
    "FiniteField",
    "make_field",
    "Poset",
    "alpha_to_partition",
    "antichains",
    "down_set",
    "ferrers_poset",
    "is_antichain",
    "partition_to_alpha",
    "subpartitions",
    "SchemeInstance",
    "is_symmetric",
    "one_class_scheme",
    "valencies",
    "verify_scheme",
    "SchubertCell",
    "all_cells",
    "cell_scheme",
    "enumerate_cell",
    "make_cell",
    "gaussian_binomial",
    "verify_cell",
    "verify_grassmannian",
    "GwpLabel",
    "GwpSpec",
    "build_gwp",
    "one_class_gwp",
]

__version__ = "0.1.0"
