"""Running the registered checks over semigroups, solution pairs and built schemes."""

import traceback
from collections.abc import Callable, Iterable, Iterator
from typing import Optional, Type, Union

from tqdm import tqdm

from . import checks as _checks  # noqa: F401  (importing registers the checks)
from ._codec import CodeScheme
from ._configuration import configure_checks
from ._constructions import SolutionPair
from ._registration import AuditMessage, Importance
from ._semigroup import NumericalSemigroup
from .utils import OptionalListOfStrings

AuditTarget = Union[NumericalSemigroup, SolutionPair, CodeScheme]


def _error_message(check_function: Callable, audited_object: AuditTarget, exception: Exception) -> AuditMessage:
    return AuditMessage(
        message=traceback.format_exc(),
        importance=Importance.ERROR,
        check_function_name=f"During evaluation of '{check_function.__name__}' - {type(exception)}: {exception}",
        object_type=type(audited_object).__name__,
    )


def run_checks(
    audited_object: AuditTarget,
    checks: list,
    progress_bar_class: Optional[Type[tqdm]] = None,
    progress_bar_options: Optional[dict] = None,
) -> Iterator[AuditMessage]:
    """
    Run every check whose target type matches ``audited_object``, yielding its messages.

    Messages take the importance of the check as configured, which may differ from the registered one. A check
    that raises yields a single ERROR message carrying the traceback, and the remaining checks still run.
    """
    applicable = [check for check in checks if isinstance(audited_object, check.target_type)]
    if progress_bar_class is not None:
        applicable = progress_bar_class(iterable=applicable, total=len(applicable), **(progress_bar_options or {}))

    for check_function in applicable:
        try:
            output = check_function(audited_object)
        except Exception as exception:
            yield _error_message(check_function=check_function, audited_object=audited_object, exception=exception)
            continue

        if output is None:
            continue
        for message in [output] if isinstance(output, AuditMessage) else output:
            message.importance = check_function.importance
            yield message


def _audit_targets(scheme: AuditTarget) -> Iterator[AuditTarget]:
    """The object itself, then the solution and semigroup it contains."""
    yield scheme
    solution = scheme.solution if isinstance(scheme, CodeScheme) else scheme
    if isinstance(solution, SolutionPair):
        if solution is not scheme:
            yield solution
        yield solution.semigroup


def audit_scheme(
    scheme: AuditTarget,
    config: Optional[dict] = None,
    ignore: OptionalListOfStrings = None,
    select: OptionalListOfStrings = None,
    importance_threshold: Union[str, Importance] = Importance.BEST_PRACTICE_SUGGESTION,
) -> Iterable[AuditMessage]:
    """
    Audit a scheme together with its solution and semigroup.

    Solutions and semigroups may also be passed directly, in which case only the levels below them are audited.

    Parameters
    ----------
    scheme : CodeScheme, SolutionPair or NumericalSemigroup
    config : dict, optional
        Must be valid against the config schema.
    ignore : list of strings, optional
        Names of checks to skip.
    select : list of strings, optional
        Names of the only checks to run.
    importance_threshold : string or Importance
        Checks with a configured importance below this level are not run.
    """
    if isinstance(importance_threshold, str):
        importance_threshold = Importance[importance_threshold]
    checks = configure_checks(config=config, ignore=ignore, select=select, importance_threshold=importance_threshold)

    for target in _audit_targets(scheme):
        yield from run_checks(audited_object=target, checks=checks)
