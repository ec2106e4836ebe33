"""Audit configurations: YAML files remapping check importance, validated against a JSON schema."""

import json
from collections.abc import Callable, Iterable
from functools import lru_cache
from pathlib import Path
from types import FunctionType
from typing import Optional

import jsonschema
import yaml

from ._registration import Importance, available_checks
from .utils import PathType

CONFIGS_FOLDER = Path(__file__).parent / "_internal_configs"
INTERNAL_CONFIGS: dict[str, Path] = dict(
    strict=CONFIGS_FOLDER / "strict.agdmm_config.yaml",
)
SKIP = "SKIP"


@lru_cache(maxsize=None)
def _config_schema() -> dict:
    return json.loads((CONFIGS_FOLDER / "config.schema.json").read_text(encoding="utf-8"))


def validate_config(config: dict) -> None:
    """Raise a jsonschema.ValidationError unless ``config`` maps importance names (or SKIP) to check names."""
    jsonschema.validate(instance=config, schema=_config_schema())


def _copy_function(function: Callable) -> Callable:
    """A new function object sharing code, globals and closure, with its own attribute dictionary."""
    copied_function = FunctionType(
        function.__code__, function.__globals__, function.__name__, function.__defaults__, function.__closure__
    )
    copied_function.__dict__.update(function.__dict__)
    return copied_function


def copy_check(check: Callable) -> Callable:
    """Copy a registered check and the check it wraps, so its importance can change without touching the registry."""
    copied_check = _copy_function(function=check)
    copied_check.__wrapped__ = _copy_function(function=check.__wrapped__)  # type: ignore
    return copied_check


def load_config(filepath_or_keyword: PathType) -> dict:
    """
    Load a config either by the keyword of an internal config or from a YAML file path.

    Internal keywords:
        - 'strict'
            Promotes unused places and threshold gaps to violations and broken matdot symmetry to critical.
    """
    file_path = INTERNAL_CONFIGS.get(str(filepath_or_keyword), Path(filepath_or_keyword))
    return yaml.safe_load(file_path.read_text(encoding="utf-8"))


def _remap_importance(checks: Iterable[Callable], config: dict) -> tuple[list[Callable], set[str]]:
    """Copies of ``checks`` carrying their configured importance, and the names the config skips."""
    validate_config(config=config)
    level_of = {name: level for level, names in config.items() for name in names}
    remapped, skipped = [], set()
    for check in checks:
        level = level_of.get(check.__name__)
        if level == SKIP:
            skipped.add(check.__name__)
        copied_check = copy_check(check=check)
        if level not in (None, SKIP):
            copied_check.importance = Importance[level]  # type: ignore
        remapped.append(copied_check)
    return remapped, skipped


def configure_checks(
    checks: Optional[list] = None,
    config: Optional[dict] = None,
    ignore: Optional[list[str]] = None,
    select: Optional[list[str]] = None,
    importance_threshold: Importance = Importance.BEST_PRACTICE_SUGGESTION,
) -> list:
    """
    Filter check functions (the whole registry by default) according to a configuration.

    Parameters
    ----------
    checks : list of check functions, optional
        Defaults to every registered check.
    config : dict, optional
        Valid against the config schema; maps importance levels or SKIP to check names.
    ignore : list of str, optional
        Names of checks to leave out.
    select : list of str, optional
        Names of the only checks to run. Cannot be combined with ``ignore``.
    importance_threshold : Importance
        Checks whose configured importance is below this level are dropped.
    """
    if ignore is not None and select is not None:
        raise ValueError("Options 'ignore' and 'select' cannot both be used.")
    if not isinstance(importance_threshold, Importance):
        raise ValueError(
            f"Indicated importance_threshold ({importance_threshold}) is not a valid importance level! Please choose "
            "from [CRITICAL, BEST_PRACTICE_VIOLATION, BEST_PRACTICE_SUGGESTION]."
        )

    configured = list(checks or available_checks)
    excluded = set(ignore or ())
    if config is not None:
        configured, skipped = _remap_importance(checks=configured, config=config)
        excluded |= skipped

    if select:
        configured = [check for check in configured if check.__name__ in select]
    else:
        configured = [check for check in configured if check.__name__ not in excluded]
    return [check for check in configured if check.importance.value >= importance_threshold.value]  # type: ignore
