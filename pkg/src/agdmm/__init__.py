import importlib.metadata

from ._exceptions import (
    AgdmmError,
    NotPrimeError,
    ReducibleModulusError,
    NoDefaultModulusError,
    FieldDivisionByZeroError,
    GcdNotOneError,
    NotInSemigroupError,
    InvalidDeltaError,
    OutOfRangeError,
    NotInSpanError,
    InvalidSolutionError,
    DInSetsError,
    BasisTweakError,
    MTooSmallError,
    MNotInSemigroupError,
    NoUniqueMultipleError,
    ApInsufficiencyError,
    HypothesisUnmetError,
    SearchSpaceTooLargeError,
    NoSolutionInBoundError,
    DimensionMismatchError,
    PartitionIndivisibleError,
    NotEnoughPlacesError,
    SemigroupCurveMismatchError,
    TooFewRespondersError,
    DuplicatePlaceError,
    RankDeficientError,
    CrossTermMismatchError,
    StragglerModelError,
)
from ._field import FieldSpec, make_field, field_from_order, field_arith, enumerate_field, random_matrix
from ._field import read_matrix_csv, write_matrix_csv
from ._semigroup import NumericalSemigroup, DeltaProfile, natural_numbers, hermitian_semigroup
from ._function_field import (
    CurveKind,
    CurveModel,
    RationalPlace,
    FunctionElement,
    BasisRegistry,
    get_places,
    monomial_basis,
    multiply,
    project,
    expand,
    evaluate,
    evaluation_matrix,
    tweak_polynomial_basis,
    tweak_matdot_basis,
)
from ._constructions import (
    SolutionKind,
    SolutionPair,
    validate_poly,
    validate_matdot,
    poly_classical,
    poly_trivial,
    poly_apery,
    poly_recursive,
    poly_zero_variant,
    matdot_classical,
    matdot_trivial,
    matdot_optimal,
    poly_lower_bound,
    construct,
    brute_force_optimal,
)
from ._codec import (
    CodeScheme,
    EncodedShare,
    WorkerResult,
    build_scheme,
    scheme_from_solution,
    encode,
    worker_multiply,
    build_G,
    right_inverse,
    decode,
    decode_and_verify,
    run_dmm,
)
from ._simulation import StragglerModel, StragglerKind, parse_straggler_model, simulate, speedup_report
from ._asymptotic import excess_limit, asymptotic_report
from ._registration import available_checks, register_check
from ._types import Importance, Severity, AuditMessage
from ._configuration import load_config, validate_config, configure_checks
from ._audit import run_checks, audit_scheme
from ._formatting import (
    format_messages,
    print_to_console,
    save_report,
    MessageFormatter,
    FormatterOptions,
    AgdmmOutputJSONEncoder,
)
from ._organization import organize_messages
from .checks import *  # These need to be imported to trigger registration with 'available_checks', but are not exposed

default_check_registry = {check.__name__: check for check in available_checks}

try:
    __version__ = importlib.metadata.version(distribution_name="agdmm")
except importlib.metadata.PackageNotFoundError:
    __version__ = "0.0.0"

from .testing import make_hermitian_scheme  # noqa: F401

__all__ = [
    "AgdmmError",
    "NotPrimeError",
    "ReducibleModulusError",
    "NoDefaultModulusError",
    "FieldDivisionByZeroError",
    "GcdNotOneError",
    "NotInSemigroupError",
    "InvalidDeltaError",
    "OutOfRangeError",
    "NotInSpanError",
    "InvalidSolutionError",
    "DInSetsError",
    "BasisTweakError",
    "MTooSmallError",
    "MNotInSemigroupError",
    "NoUniqueMultipleError",
    "ApInsufficiencyError",
    "HypothesisUnmetError",
    "SearchSpaceTooLargeError",
    "NoSolutionInBoundError",
    "DimensionMismatchError",
    "PartitionIndivisibleError",
    "NotEnoughPlacesError",
    "SemigroupCurveMismatchError",
    "TooFewRespondersError",
    "DuplicatePlaceError",
    "RankDeficientError",
    "CrossTermMismatchError",
    "StragglerModelError",
    "FieldSpec",
    "make_field",
    "field_from_order",
    "field_arith",
    "enumerate_field",
    "random_matrix",
    "read_matrix_csv",
    "write_matrix_csv",
    "NumericalSemigroup",
    "DeltaProfile",
    "natural_numbers",
    "hermitian_semigroup",
    "CurveKind",
    "CurveModel",
    "RationalPlace",
    "FunctionElement",
    "BasisRegistry",
    "get_places",
    "monomial_basis",
    "multiply",
    "project",
    "expand",
    "evaluate",
    "evaluation_matrix",
    "tweak_polynomial_basis",
    "tweak_matdot_basis",
    "SolutionKind",
    "SolutionPair",
    "validate_poly",
    "validate_matdot",
    "poly_classical",
    "poly_trivial",
    "poly_apery",
    "poly_recursive",
    "poly_zero_variant",
    "matdot_classical",
    "matdot_trivial",
    "matdot_optimal",
    "poly_lower_bound",
    "construct",
    "brute_force_optimal",
    "CodeScheme",
    "EncodedShare",
    "WorkerResult",
    "build_scheme",
    "scheme_from_solution",
    "encode",
    "worker_multiply",
    "build_G",
    "right_inverse",
    "decode",
    "decode_and_verify",
    "run_dmm",
    "StragglerModel",
    "StragglerKind",
    "parse_straggler_model",
    "simulate",
    "speedup_report",
    "excess_limit",
    "asymptotic_report",
    "available_checks",
    "default_check_registry",
    "register_check",
    "Importance",
    "Severity",
    "AuditMessage",
    "validate_config",
    "load_config",
    "configure_checks",
    "run_checks",
    "audit_scheme",
    "format_messages",
    "print_to_console",
    "save_report",
    "MessageFormatter",
    "FormatterOptions",
    "AgdmmOutputJSONEncoder",
    "organize_messages",
    "__version__",
    # Public submodules
    "checks",
    "testing",
    "utils",
]
