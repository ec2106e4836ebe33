"""Grouping audit messages into nested report sections."""

from collections import defaultdict
from enum import Enum
from typing import Any, Optional

from natsort import natsorted

from ._types import AuditMessage

UNGROUPABLE_ATTRIBUTES = ("message", "object_name", "severity")


def _ordered_keys(keys: list, reverse: bool) -> list:
    # Enums list their most important member first; locations and names sort naturally so "/" leads "/solution".
    if keys and isinstance(keys[0], Enum):
        return sorted(keys, key=lambda key: key.value, reverse=not reverse)
    return natsorted(keys, key=str, reverse=reverse)


def _group_by(messages: list[AuditMessage], attribute: str) -> dict[Any, list[AuditMessage]]:
    groups: dict[Any, list[AuditMessage]] = defaultdict(list)
    for message in messages:
        groups[getattr(message, attribute)].append(message)
    return groups


def organize_messages(
    messages: list[AuditMessage], levels: list[str], reverse: Optional[list[bool]] = None
) -> dict:
    """
    Nest AuditMessages into dictionaries keyed by the values of each attribute in ``levels``, outermost first.

    The innermost lists hold messages of HIGH severity before LOW.

    Parameters
    ----------
    messages : list of AuditMessage
    levels : list of str
        AuditMessage attributes, excluding 'message', 'object_name' and 'severity'.
    reverse : list of bool, optional
        One flag per level; True reverses the ordering of that level.
    """
    excluded = [level for level in levels if level in UNGROUPABLE_ATTRIBUTES]
    if excluded:
        raise ValueError(
            f"Indicated levels {excluded} cannot be used for organization! Please choose other attributes of "
            "AuditMessage than the text message, object_name, or severity."
        )
    reverse = list(reverse) if reverse is not None else [False] * len(levels)
    if len(reverse) != len(levels):
        raise ValueError(f"Indicated reverse flags ({reverse}) do not match the number of levels ({levels})!")

    level, *inner_levels = levels
    groups = _group_by(messages=messages, attribute=level)
    organized = {}
    for key in _ordered_keys(list(groups), reverse=reverse[0]):
        if inner_levels:
            organized[key] = organize_messages(messages=groups[key], levels=inner_levels, reverse=reverse[1:])
        else:
            organized[key] = sorted(groups[key], key=lambda message: -message.severity.value)
    return organized
