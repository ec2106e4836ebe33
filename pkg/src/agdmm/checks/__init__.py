from ._semigroups import (
    check_semigroup_additive_closure,
    check_apery_conductor_relation,
    check_delta_bound_half_conductor,
)
from ._solutions import (
    check_solution_validity,
    check_threshold_matches_sets,
    check_threshold_above_lower_bound,
    check_threshold_gap_to_lower_bound,
    check_matdot_symmetry,
)
from ._schemes import (
    check_enough_places,
    check_registry_triangular,
    check_poly_basis_multiplicative,
    check_matdot_basis_indicator,
    check_places_on_curve,
    check_spare_workers,
)

__all__ = [
    "check_semigroup_additive_closure",
    "check_apery_conductor_relation",
    "check_delta_bound_half_conductor",
    "check_solution_validity",
    "check_threshold_matches_sets",
    "check_threshold_above_lower_bound",
    "check_threshold_gap_to_lower_bound",
    "check_matdot_symmetry",
    "check_enough_places",
    "check_registry_triangular",
    "check_poly_basis_multiplicative",
    "check_matdot_basis_indicator",
    "check_places_on_curve",
    "check_spare_workers",
]
