"""Rendering collected audit messages and command output as text reports and JSON."""

import json
import os
import sys
from collections import Counter
from collections.abc import Iterator
from dataclasses import asdict, dataclass
from datetime import datetime
from enum import Enum
from fractions import Fraction
from pathlib import Path
from platform import platform
from typing import Any, Optional, Union

import numpy as np
from packaging.version import Version

from ._organization import organize_messages
from ._types import AuditMessage
from .utils import PathType, get_package_version

DEFAULT_LEVELS = ("location", "importance")
BANNER = "*" * 50


class AgdmmOutputJSONEncoder(json.JSONEncoder):
    """JSON encoder for audit messages, enums, exact fractions and field arrays."""

    def default(self, o: object) -> Any:  # noqa D102
        if isinstance(o, AuditMessage):
            return asdict(o)
        if isinstance(o, Enum):
            return o.name
        if isinstance(o, (Version, Fraction)):
            return str(o)
        # galois arrays are ndarray subclasses and serialize as their integer codes
        if isinstance(o, np.ndarray):
            return np.asarray(o.view(np.ndarray)).tolist()
        if isinstance(o, np.generic):
            return o.item()
        return super().default(o)


def _get_report_header() -> dict[str, str]:
    """System information at the time the report is generated."""
    return dict(
        Timestamp=str(datetime.now().astimezone()),
        Platform=platform(),
        agdmm_version=str(get_package_version("agdmm")),
    )


@dataclass
class FormatterOptions:
    """
    Layout parameters of a text report.

    Parameters
    ----------
    indent_size : int
        Spaces between a section or message number and its text.
    indent : str, optional
        Explicit separator between number and text; overrides ``indent_size``.
    section_headers : tuple of str
        Underline characters per section depth; the last one repeats for deeper sections.
    """

    indent_size: int = 2
    indent: Optional[str] = None
    section_headers: tuple[str, ...] = ("=", "-", "~")

    @property
    def separator(self) -> str:
        return self.indent if self.indent is not None else " " * self.indent_size

    def underline(self, depth: int) -> str:
        return self.section_headers[min(depth, len(self.section_headers) - 1)]


def _label(value: Union[Enum, str, None]) -> str:
    return value.name if isinstance(value, Enum) else str(value)


class MessageFormatter:
    """
    Numbered text report of audit messages, nested by the requested levels.

    Sections are numbered by their position ("0", "0.1", ...). Messages carry the number of their innermost
    section followed by a running message counter, so every message in a report has a distinct number.
    """

    def __init__(
        self,
        messages: list[AuditMessage],
        levels: list[str],
        reverse: Optional[list[bool]] = None,
        formatter_options: Optional[FormatterOptions] = None,
    ) -> None:
        if formatter_options is not None and not isinstance(formatter_options, FormatterOptions):
            raise TypeError(f"Indicated formatter_options ({formatter_options}) is not a FormatterOptions instance!")
        self.messages = messages
        self.levels = list(levels)
        self.options = formatter_options or FormatterOptions()
        self.tree = organize_messages(messages=messages, levels=self.levels, reverse=reverse)
        self.unused_levels = set(AuditMessage.__annotations__) - set(self.levels) - {"message", "severity"}
        self._message_counter = 0

    def _summary(self) -> list[str]:
        header = _get_report_header()
        audited_objects = {message.location for message in self.messages}
        counts = Counter(message.importance for message in self.messages)
        lines = [
            BANNER,
            "agdmm Audit Report Summary",
            "",
            f"Timestamp: {header['Timestamp']}",
            f"Platform: {header['Platform']}",
            f"agdmm version: {header['agdmm_version']}",
            "",
            f"Found {len(self.messages)} issues over {len(audited_objects)} objects:",
        ]
        for importance in sorted(counts, key=lambda level: -level.value):
            lines.append(f"{counts[importance]:>8} - {importance.name}")
        return lines + [BANNER, "", ""]

    def _describe(self, message: AuditMessage) -> str:
        """What the message is about, leaving out anything already named by an enclosing section."""
        parts = []
        if "check_function_name" in self.unused_levels:
            parts.append(message.check_function_name)
        if "importance" in self.unused_levels:
            parts.append(f"Importance level '{message.importance.name}'")
        target = f"{message.object_type} '{message.object_name}'"
        if "location" in self.unused_levels and message.location:
            target += f" at '{message.location}'"
        parts.append(target)
        return " - ".join(parts)

    def _render(self, tree: dict, depth: int, path: tuple[int, ...]) -> Iterator[str]:
        sep = self.options.separator
        if depth < len(self.levels) - 1:
            for index, (key, subtree) in enumerate(tree.items()):
                section_path = path + (index,)
                title = ".".join(map(str, section_path)) + sep + _label(key)
                yield title
                yield self.options.underline(depth) * len(title)
                yield ""
                yield from self._render(subtree, depth=depth + 1, path=section_path)
            return

        prefix = ".".join(map(str, path))
        for key, messages in tree.items():
            for message in messages:
                number = f"{prefix}.{self._message_counter}" if prefix else str(self._message_counter)
                yield f"{number}{sep}{_label(key)}: {self._describe(message)}"
                yield " " * len(number + sep) + f"  Message: {message.message}"
                yield ""
                self._message_counter += 1

    def format_messages(self) -> list[str]:
        self._message_counter = 0
        return self._summary() + list(self._render(self.tree, depth=0, path=()))


def format_messages(
    messages: list[AuditMessage],
    levels: Optional[list[str]] = None,
    reverse: Optional[list[bool]] = None,
) -> list[str]:
    """Render AuditMessages as report lines, organized by location then importance unless told otherwise."""
    formatter = MessageFormatter(messages=messages, levels=list(levels or DEFAULT_LEVELS), reverse=reverse)
    return formatter.format_messages()


def print_to_console(formatted_messages: list[str]) -> None:
    sys.stdout.write(os.linesep * 2)
    sys.stdout.write("".join(line + "\n" for line in formatted_messages))


def save_report(report_file_path: PathType, formatted_messages: list[str], overwrite: bool = False) -> None:
    """Write report lines to a text file, refusing to replace an existing one unless ``overwrite`` is set."""
    report_file_path = Path(report_file_path)
    if report_file_path.exists() and not overwrite:
        raise FileExistsError(f"The file {report_file_path} already exists! Set 'overwrite=True' or pass --overwrite.")

    report_file_path.write_text("".join(line + "\n" for line in formatted_messages), encoding="utf-8")
