"""The decorator that adds a check function to the audit registry and fills in the messages it returns."""

from collections.abc import Callable, Iterable
from functools import wraps
from typing import Optional, Union

from ._codec import CodeScheme
from ._constructions import SolutionPair
from ._semigroup import NumericalSemigroup
from ._types import AuditMessage, Importance, Severity

available_checks: list[Callable] = list()

REGISTRABLE_IMPORTANCE = (Importance.CRITICAL, Importance.BEST_PRACTICE_VIOLATION, Importance.BEST_PRACTICE_SUGGESTION)

# A scheme holds its solution, which holds its semigroup.
LOCATIONS: dict[type, str] = {
    CodeScheme: "/",
    SolutionPair: "/solution",
    NumericalSemigroup: "/solution/semigroup",
}

CheckOutput = Union[AuditMessage, list[AuditMessage], None]


def register_check(importance: Importance, target_type: type) -> Callable:
    """
    Add the decorated check function to the registry and parse its output into complete AuditMessages.

    Parameters
    ----------
    importance : Importance
        One of
            CRITICAL
                - an invariant of the construction is broken; decoding may fail or return a wrong product
            BEST_PRACTICE_VIOLATION
                - valid, but clearly wasteful
            BEST_PRACTICE_SUGGESTION
                - valid, with room for improvement
    target_type : type
        The class the check applies to: NumericalSemigroup, SolutionPair or CodeScheme.
    """

    def register(check_function: Callable) -> Callable:
        if importance not in REGISTRABLE_IMPORTANCE:
            raise ValueError(
                f"Indicated importance ({importance}) of custom check ({check_function.__name__}) is not a valid "
                "importance level! Please choose one of Importance.CRITICAL, Importance.BEST_PRACTICE_VIOLATION, "
                "or Importance.BEST_PRACTICE_SUGGESTION."
            )
        check_function.importance = importance  # type: ignore
        check_function.target_type = target_type  # type: ignore

        @wraps(check_function)
        def parsed_check(*args, **kwargs) -> CheckOutput:
            audited_object = args[0] if args else next(iter(kwargs.values()))
            output = check_function(*args, **kwargs)
            if output is None:
                return None
            if isinstance(output, AuditMessage):
                return _fill_message(check_function=check_function, audited_object=audited_object, message=output)

            messages = _fill_messages(check_function=check_function, audited_object=audited_object, messages=output)
            return messages or None

        available_checks.append(parsed_check)
        return parsed_check

    return register


def _fill_messages(check_function: Callable, audited_object: object, messages: Iterable) -> list[AuditMessage]:
    return [
        _fill_message(check_function=check_function, audited_object=audited_object, message=message)
        for message in messages
        if message is not None
    ]


def _fill_message(check_function: Callable, audited_object: object, message: AuditMessage) -> AuditMessage:
    if not isinstance(message.severity, Severity):
        raise ValueError(
            f"Indicated severity ({message.severity}) of custom check "
            f"({check_function.__name__}) is not a valid severity level! Please choose one of "
            "Severity.HIGH, Severity.LOW, or do not specify any severity."
        )
    message.importance = check_function.importance  # type: ignore
    message.check_function_name = check_function.__name__
    message.object_type = type(audited_object).__name__
    message.object_name = _parse_name(audited_object=audited_object)
    message.location = _parse_location(audited_object=audited_object)
    return message


def _parse_name(audited_object: object) -> str:
    if isinstance(audited_object, CodeScheme):
        return f"{audited_object.solution.method} {audited_object.kind.value} on {audited_object.curve}"
    if isinstance(audited_object, SolutionPair):
        return f"{audited_object.method} {audited_object.kind.value}"
    return str(audited_object)


def _parse_location(audited_object: object) -> Optional[str]:
    return next((location for cls, location in LOCATIONS.items() if isinstance(audited_object, cls)), None)
