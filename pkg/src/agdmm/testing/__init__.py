from ._testing import (
    all_small_semigroups,
    make_block_instance,
    make_hermitian_scheme,
    random_matdot_instance,
    responder_subsets,
    semigroups_with_small_generators,
)
from .._field import random_matrix

__all__ = [
    "all_small_semigroups",
    "make_block_instance",
    "make_hermitian_scheme",
    "random_matdot_instance",
    "random_matrix",
    "responder_subsets",
    "semigroups_with_small_generators",
]
