"""Commonly reused logic for parsing command-line values and sizing worker pools."""

import os
from importlib import metadata as importlib_metadata
from typing import Optional, Union

from packaging import version

PathType = Union[str, os.PathLike]
OptionalListOfStrings = Optional[list[str]]


def parse_int_list(value: Optional[str]) -> list[int]:
    """
    Parse a comma-separated list of integers such as ``"3,4"``.

    An empty string or None gives an empty list; whitespace around the items is ignored.
    """
    if value is None or not value.strip():
        return []
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise ValueError(f"Indicated value ({value!r}) is not a comma-separated list of integers!") from None


def parse_key_values(value: str) -> dict[str, str]:
    """Parse ``"tau=1,lambda=0.5"`` into ``{"tau": "1", "lambda": "0.5"}``; bare items map to an empty string."""
    parsed = {}
    for item in value.split(","):
        if not item.strip():
            continue
        key, _, setting = item.partition("=")
        parsed[key.strip()] = setting.strip()
    return parsed


def get_package_version(name: str) -> version.Version:
    """The installed version of a distribution, or 0.0.0 when running from a source tree."""
    try:
        return version.parse(importlib_metadata.version(name))
    except importlib_metadata.PackageNotFoundError:
        return version.parse("0.0.0")


def calculate_number_of_cpu(requested_cpu: int = 1) -> int:
    """
    Resolve a worker pool size, where zero or negative values count back from the available CPUs.

    Parameters
    ----------
    requested_cpu : int
        Positive for an explicit count; -1 leaves one CPU free, and so on.
    """
    total_cpu = os.cpu_count() or 1
    assert requested_cpu <= total_cpu, f"Requested more CPUs ({requested_cpu}) than are available ({total_cpu})!"
    assert requested_cpu > -total_cpu, f"Requested fewer CPUs ({requested_cpu}) than are available ({total_cpu})!"
    return requested_cpu if requested_cpu > 0 else total_cpu + requested_cpu


_TRUTHY = frozenset(("y", "yes", "t", "true", "on", "1"))
_FALSY = frozenset(("n", "no", "f", "false", "off", "0"))


def strtobool(val: str) -> bool:
    """Parse a CLI flag value such as 'true', 'Off' or '1'; anything unrecognized is a ValueError."""
    if not isinstance(val, str):
        raise TypeError(f"Invalid type of {val!r} - must be str for `strtobool`")
    lowered = val.lower()
    if lowered in _TRUTHY:
        return True
    if lowered in _FALSY:
        return False
    raise ValueError(f"Invalid truth value {val!r}")
