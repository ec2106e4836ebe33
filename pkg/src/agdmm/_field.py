"""Exact arithmetic in small finite fields GF(p^k), plus the matrix CSV format shared with the codec."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import galois
import numpy as np

from ._exceptions import (
    FieldDivisionByZeroError,
    NoDefaultModulusError,
    NotPrimeError,
    ReducibleModulusError,
)
from .utils import PathType

# Coefficients are little-endian (constant term first) and monic.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # z^2 + z + 1
    (2, 3): (1, 1, 0, 1),  # z^3 + z + 1
    (3, 2): (1, 0, 1),  # z^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # z^4 + z + 1
    (5, 2): (2, 1, 1),  # z^2 + z + 2
    (3, 3): (1, 2, 0, 1),  # z^3 + 2z + 1
}
MAX_FIELD_ORDER = 2**16
ARITHMETIC_OPERATIONS = ("add", "sub", "mul", "div", "inv", "pow")

FieldElement = galois.FieldArray  # a 0-dimensional array; ``int(element)`` is its code
FieldLike = Union[int, galois.FieldArray]


@dataclass(frozen=True)
class FieldSpec:
    """
    A finite field GF(p^k) with a fixed monic irreducible modulus.

    Elements are identified with integer codes ``sum(c_i * p**i)`` of their polynomial coefficients, which is
    also the integer representation used by ``galois``.
    """

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def GF(self) -> type[galois.FieldArray]:  # noqa: N802
        """The ``galois`` array class realizing this field."""
        return _galois_field(self.p, self.k, self.modulus)

    def __call__(self, value: Union[int, Sequence, np.ndarray]) -> galois.FieldArray:
        """Shorthand for building field arrays (or scalars) from integer codes."""
        return self.GF(value)

    def header(self) -> str:
        return f"# gf {self.p} {self.k} modulus={','.join(str(c) for c in self.modulus)}"

    def __str__(self) -> str:
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def _galois_field(p: int, k: int, modulus: tuple[int, ...]) -> type[galois.FieldArray]:
    if k == 1:
        return galois.GF(p)
    irreducible_poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
    return galois.GF(p**k, irreducible_poly=irreducible_poly)


def _is_irreducible_by_trial_division(p: int, modulus: tuple[int, ...]) -> bool:
    """Divide by every monic polynomial of degree 1..k//2 over GF(p)."""
    prime_field = galois.GF(p)
    polynomial = galois.Poly(list(modulus), field=prime_field, order="asc")
    degree = len(modulus) - 1
    for divisor_degree in range(1, degree // 2 + 1):
        # Integer representations of the monic polynomials of this degree.
        for integer in range(p**divisor_degree, 2 * p**divisor_degree):
            divisor = galois.Poly.Int(integer, field=prime_field)
            if polynomial % divisor == 0:
                return False
    return True


def make_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
    Build and validate a FieldSpec.

    Parameters
    ----------
    p : int
        Prime characteristic.
    k : int, default: 1
        Extension degree.
    modulus : sequence of int, optional
        The k+1 little-endian coefficients of a monic irreducible polynomial over GF(p).
        When omitted, a built-in default is used; prime fields default to the modulus ``z``.
    """
    if not galois.is_prime(p):
        raise NotPrimeError(f"Indicated characteristic ({p}) is not a prime number!")
    if k < 1:
        raise ValueError(f"Indicated extension degree ({k}) must be at least 1!")
    if p**k > MAX_FIELD_ORDER:
        raise ValueError(f"Fields larger than {MAX_FIELD_ORDER} elements are not supported (requested {p}^{k})!")

    if modulus is None:
        if k == 1:
            modulus = (0, 1)
        elif (p, k) in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[(p, k)]
        else:
            raise NoDefaultModulusError(
                f"There is no built-in modulus for GF({p}^{k})! Please pass the 'modulus' coefficients explicitly."
            )
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise ReducibleModulusError(f"The modulus {modulus} is not a monic polynomial of degree {k}!")
    if any(not 0 <= c < p for c in modulus):
        raise ReducibleModulusError(f"The modulus {modulus} has coefficients outside of [0, {p})!")
    if not _is_irreducible_by_trial_division(p=p, modulus=modulus):
        raise ReducibleModulusError(f"The modulus {modulus} is reducible over GF({p})!")

    return FieldSpec(p=p, k=k, modulus=modulus)


def field_from_order(q: int) -> FieldSpec:
    """Build the default-modulus field with q elements."""
    if q < 2 or not galois.is_prime_power(q):
        raise NotPrimeError(f"Indicated field order ({q}) is not a prime power!")
    primes, exponents = galois.factors(q)
    return make_field(p=int(primes[0]), k=int(exponents[0]))


def field_arith(spec: FieldSpec, a: FieldLike, b: Optional[FieldLike], op: str) -> galois.FieldArray:
    """
    Apply one arithmetic operation.

    For ``inv`` the second operand is ignored; for ``pow`` it is a (possibly negative) integer exponent.
    """
    if op not in ARITHMETIC_OPERATIONS:
        raise ValueError(f"Indicated operation ({op}) is not one of {ARITHMETIC_OPERATIONS}!")
    x = spec.GF(int(a))
    if op == "inv":
        if x == 0:
            raise FieldDivisionByZeroError("The zero element has no multiplicative inverse!")
        return x**-1
    if op == "pow":
        exponent = int(b)  # type: ignore
        if exponent < 0 and x == 0:
            raise FieldDivisionByZeroError("Cannot raise the zero element to a negative power!")
        return x**exponent

    y = spec.GF(int(b))  # type: ignore
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if y == 0:
        raise FieldDivisionByZeroError(f"Division of {int(x)} by the zero element of {spec}!")
    return x / y


def enumerate_field(spec: FieldSpec) -> galois.FieldArray:
    """All q elements in code order 0, 1, ..., q-1."""
    return spec.GF.elements


def random_matrix(spec: FieldSpec, rows: int, cols: int, seed: Optional[int] = None) -> galois.FieldArray:
    return spec.GF.Random((rows, cols), seed=seed)


def write_matrix_csv(file_path: PathType, matrix: galois.FieldArray, spec: FieldSpec) -> None:
    """Write a matrix as a header line followed by one comma-separated row of integer codes per line."""
    codes = np.asarray(matrix.view(np.ndarray), dtype=int)
    with open(file=file_path, mode="w", encoding="utf-8", newline="\n") as file:
        file.write(spec.header() + "\n")
        for row in codes:
            file.write(",".join(str(code) for code in row) + "\n")


def read_matrix_csv(file_path: PathType) -> tuple[FieldSpec, galois.FieldArray]:
    """Read a matrix written by ``write_matrix_csv``, returning its field and contents."""
    with open(file=file_path, mode="r", encoding="utf-8") as file:
        lines = [line.strip() for line in file if line.strip()]
    if not lines or not lines[0].startswith("# gf "):
        raise ValueError(f"The file {file_path} does not start with a '# gf p k modulus=...' header!")

    _, _, p, k, modulus_field = lines[0].split()
    modulus = [int(c) for c in modulus_field.removeprefix("modulus=").split(",")]
    spec = make_field(p=int(p), k=int(k), modulus=modulus)

    rows = [[int(cell) for cell in line.split(",")] for line in lines[1:]]
    if len(set(len(row) for row in rows)) > 1:
        raise ValueError(f"The rows of {file_path} do not all have the same length!")
    if any(not 0 <= code < spec.order for row in rows for code in row):
        raise ValueError(f"The file {file_path} contains codes outside of [0, {spec.order})!")
    return spec, spec.GF(np.array(rows, dtype=int))
