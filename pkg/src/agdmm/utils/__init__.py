from ._utils import (
    strtobool,
    parse_int_list,
    parse_key_values,
    get_package_version,
    calculate_number_of_cpu,
    PathType,
    OptionalListOfStrings,
)

__all__ = [
    "strtobool",
    "parse_int_list",
    "parse_key_values",
    "get_package_version",
    "calculate_number_of_cpu",
    "PathType",
    "OptionalListOfStrings",
]
