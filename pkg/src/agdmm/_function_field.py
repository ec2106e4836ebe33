"""
Concrete models of L(infinity * Q) for the rational function field and for Hermitian curves.

A function is stored densely by pole order: the reduced monomial x^i y^j (j < q0 on a Hermitian curve) has the
pole order s = i*q0 + j*(q0 + 1), and distinct reduced monomials have distinct pole orders, so coefficient s of a
``FunctionElement`` is the coefficient of the unique reduced monomial of pole order s. On the rational function
field the monomial of pole order s is simply x^s.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Union

import galois
import numpy as np

from ._exceptions import BasisTweakError, DInSetsError, InvalidSolutionError, NotInSpanError
from ._field import FieldSpec, field_from_order, make_field
from ._semigroup import NumericalSemigroup, hermitian_semigroup, natural_numbers


class CurveKind(Enum):
    RATIONAL = "rational"
    HERMITIAN = "hermitian"


@dataclass(frozen=True)
class CurveModel:
    """
    A curve with a distinguished place Q at infinity.

    Hermitian curves y^q0 + y = x^(q0 + 1) are defined over GF(q0^2); rational curves over any supported GF(q).
    """

    kind: CurveKind
    field: FieldSpec
    q0: Optional[int] = None

    @classmethod
    def rational(cls, q: int) -> "CurveModel":
        return cls(kind=CurveKind.RATIONAL, field=field_from_order(q))

    @classmethod
    def hermitian(cls, q0: int) -> "CurveModel":
        base_field = field_from_order(q0)
        field_spec = make_field(p=base_field.p, k=2 * base_field.k)
        return cls(kind=CurveKind.HERMITIAN, field=field_spec, q0=q0)

    @classmethod
    def from_string(cls, curve: str) -> "CurveModel":
        """Parse the ``hermitian:<q0>`` / ``rational:<q>`` syntax used on the command line."""
        kind, _, parameter = curve.partition(":")
        if kind not in ("hermitian", "rational") or not parameter.isdigit():
            raise ValueError(f"Indicated curve ({curve}) is not of the form 'hermitian:<q0>' or 'rational:<q>'!")
        if kind == "hermitian":
            return cls.hermitian(q0=int(parameter))
        return cls.rational(q=int(parameter))

    @property
    def semigroup(self) -> NumericalSemigroup:
        """The Weierstrass semigroup at Q."""
        if self.kind is CurveKind.RATIONAL:
            return natural_numbers()
        return hermitian_semigroup(self.q0)  # type: ignore

    @property
    def place_count(self) -> int:
        if self.kind is CurveKind.RATIONAL:
            return self.field.order
        return self.q0**3  # type: ignore

    def monomial_exponents(self, pole_order: int) -> tuple[int, int]:
        """The exponents (i, j) of the reduced monomial with the given pole order."""
        if self.kind is CurveKind.RATIONAL:
            return pole_order, 0
        q0: int = self.q0  # type: ignore
        j = pole_order % q0
        i, remainder = divmod(pole_order - j * (q0 + 1), q0)
        if i < 0 or remainder:
            raise NotInSpanError(f"There is no reduced monomial of pole order {pole_order} on {self}!")
        return i, j

    def __str__(self) -> str:
        if self.kind is CurveKind.RATIONAL:
            return f"rational:{self.field.order}"
        return f"hermitian:{self.q0}"


@dataclass(frozen=True)
class RationalPlace:
    """An affine rational place, given by the integer codes of its coordinates."""

    index: int
    coordinates: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FunctionElement:
    """
    An element of L(infinity * Q), stored by pole order.

    ``coeffs[s]`` is the coefficient of the reduced monomial of pole order s. Trailing zeros are trimmed on
    construction, so the zero function has no coefficients and ``pole_order`` None.
    """

    curve: CurveModel
    coeffs: galois.FieldArray

    def __post_init__(self) -> None:
        nonzero = np.flatnonzero(np.asarray(self.coeffs.view(np.ndarray)))
        length = int(nonzero[-1]) + 1 if nonzero.size else 0
        object.__setattr__(self, "coeffs", self.curve.field.GF(self.coeffs[:length]))

    @classmethod
    def monomial(cls, curve: CurveModel, pole_order: int, coefficient: int = 1) -> "FunctionElement":
        curve.monomial_exponents(pole_order)
        coeffs = curve.field.GF.Zeros(pole_order + 1)
        coeffs[pole_order] = coefficient
        return cls(curve=curve, coeffs=coeffs)

    @classmethod
    def zero(cls, curve: CurveModel) -> "FunctionElement":
        return cls(curve=curve, coeffs=curve.field.GF.Zeros(0))

    @property
    def pole_order(self) -> Optional[int]:
        return len(self.coeffs) - 1 if len(self.coeffs) else None

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def coords(self) -> dict[tuple[int, int], int]:
        """Sparse monomial coordinates {(i, j): code}."""
        return {
            self.curve.monomial_exponents(int(s)): int(self.coeffs[s])
            for s in np.flatnonzero(np.asarray(self.coeffs.view(np.ndarray)))
        }

    def _padded(self, length: int) -> galois.FieldArray:
        padded = self.curve.field.GF.Zeros(length)
        padded[: len(self.coeffs)] = self.coeffs
        return padded

    def __add__(self, other: "FunctionElement") -> "FunctionElement":
        length = max(len(self.coeffs), len(other.coeffs))
        return FunctionElement(curve=self.curve, coeffs=self._padded(length) + other._padded(length))

    def __neg__(self) -> "FunctionElement":
        return FunctionElement(curve=self.curve, coeffs=-self.coeffs)

    def __sub__(self, other: "FunctionElement") -> "FunctionElement":
        return self + (-other)

    def scale(self, scalar: Union[int, galois.FieldArray]) -> "FunctionElement":
        return FunctionElement(curve=self.curve, coeffs=self.coeffs * self.curve.field.GF(int(scalar)))

    def __mul__(self, other: "FunctionElement") -> "FunctionElement":
        return multiply(curve=self.curve, f=self, g=other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionElement):
            return NotImplemented
        return self.curve == other.curve and np.array_equal(
            np.asarray(self.coeffs.view(np.ndarray)), np.asarray(other.coeffs.view(np.ndarray))
        )

    def __repr__(self) -> str:
        return f"FunctionElement({self.curve}, {self.coords})"


class BasisRegistry:
    """
    The basis {f_s} of L(bound * Q), one entry per semigroup element s <= bound with pole order exactly s.

    Entries may only be replaced until ``freeze`` is called.
    """

    def __init__(self, curve: CurveModel, bound: int, entries: dict[int, FunctionElement]) -> None:
        self.curve = curve
        self.bound = bound
        self._entries = dict(entries)
        self._frozen = False
        expected = set(curve.semigroup.elements_below(bound))
        assert set(self._entries) == expected, f"A registry up to {bound} needs exactly the entries {expected}!"

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(sorted(self._entries))

    def freeze(self) -> "BasisRegistry":
        self._frozen = True
        return self

    def copy(self) -> "BasisRegistry":
        return BasisRegistry(curve=self.curve, bound=self.bound, entries=self._entries)

    def __contains__(self, pole_order: int) -> bool:
        return pole_order in self._entries

    def __getitem__(self, pole_order: int) -> FunctionElement:
        if pole_order not in self._entries:
            raise NotInSpanError(f"The registry holds no basis function of pole order {pole_order}!")
        return self._entries[pole_order]

    def __setitem__(self, pole_order: int, function: FunctionElement) -> None:
        if self._frozen:
            raise RuntimeError("The basis registry is frozen and can no longer be modified!")
        if pole_order not in self._entries:
            raise NotInSpanError(f"Pole order {pole_order} is not a semigroup element below {self.bound}!")
        if function.pole_order != pole_order:
            raise ValueError(
                f"The basis function for pole order {pole_order} has pole order {function.pole_order} instead!"
            )
        self._entries[pole_order] = function

    def __len__(self) -> int:
        return len(self._entries)


def get_places(curve: CurveModel) -> tuple[RationalPlace, ...]:
    """All affine rational places (every one except Q), ordered lexicographically by coordinate codes."""
    elements = curve.field.GF.elements
    if curve.kind is CurveKind.RATIONAL:
        return tuple(RationalPlace(index=i, coordinates=(int(a),)) for i, a in enumerate(elements))

    q0: int = curve.q0  # type: ignore
    norm = np.asarray((elements ** (q0 + 1)).view(np.ndarray))
    trace = np.asarray((elements**q0 + elements).view(np.ndarray))
    on_curve = np.argwhere(np.equal.outer(norm, trace))
    places = tuple(
        RationalPlace(index=i, coordinates=(int(a), int(b))) for i, (a, b) in enumerate(on_curve.tolist())
    )
    assert len(places) == curve.place_count, f"{curve} should have {curve.place_count} affine rational places!"
    return places


def monomial_basis(curve: CurveModel, k_max: int) -> BasisRegistry:
    """The registry f_s = x^i y^j (or x^s on the rational curve) for every semigroup element s <= k_max."""
    entries = {s: FunctionElement.monomial(curve=curve, pole_order=s) for s in curve.semigroup.elements_below(k_max)}
    return BasisRegistry(curve=curve, bound=k_max, entries=entries)


def multiply(curve: CurveModel, f: FunctionElement, g: FunctionElement) -> FunctionElement:
    """
    Reduced product of two functions.

    A product of monomials with y-exponents j + j' >= q0 is reduced with y^q0 = x^(q0+1) - y, which keeps the
    monomial of pole order s + t and subtracts the one of pole order s + t - (q0^2 - 1). One reduction step is
    always enough since j + j' - q0 + 1 < q0.
    """
    if f.is_zero or g.is_zero:
        return FunctionElement.zero(curve)
    product = np.convolve(f.coeffs, g.coeffs)
    if curve.kind is CurveKind.HERMITIAN:
        q0: int = curve.q0  # type: ignore
        shift = q0 * q0 - 1
        f_residues = np.arange(len(f.coeffs)) % q0  # the y-exponent of pole order s is s mod q0
        g_residues = np.arange(len(g.coeffs)) % q0
        for j in range(1, q0):
            f_part = f.coeffs.copy()
            f_part[f_residues != j] = 0
            g_part = g.coeffs.copy()
            g_part[g_residues < q0 - j] = 0
            if not (np.any(f_part.view(np.ndarray)) and np.any(g_part.view(np.ndarray))):
                continue
            correction = np.convolve(f_part, g_part)
            product[: len(correction) - shift] -= correction[shift:]
    return FunctionElement(curve=curve, coeffs=product)


def _eliminate(registry: BasisRegistry, g: FunctionElement, stop: int) -> dict[int, galois.FieldArray]:
    """Triangular elimination of g against the registry, from its pole order down to ``stop``."""
    remainder = g.coeffs.copy()
    coefficients = {}
    for t in range(len(remainder) - 1, stop - 1, -1):
        if remainder[t] == 0:
            continue
        if t not in registry:
            raise NotInSpanError(
                f"The function {g} has a nonzero remainder at pole order {t}, outside of the registry!"
            )
        basis_coeffs = registry[t].coeffs
        coefficient = remainder[t] / basis_coeffs[t]
        remainder[: t + 1] -= coefficient * basis_coeffs
        coefficients[t] = coefficient
    return coefficients


def project(registry: BasisRegistry, g: FunctionElement, s: int) -> galois.FieldArray:
    """The coefficient of f_s in the expansion of g over the current registry."""
    if g.pole_order is not None and g.pole_order > registry.bound:
        raise NotInSpanError(f"The pole order of {g} exceeds the registry bound {registry.bound}!")
    coefficients = _eliminate(registry=registry, g=g, stop=max(s, 0))
    return coefficients.get(s, registry.curve.field.GF(0))


def expand(registry: BasisRegistry, g: FunctionElement) -> dict[int, galois.FieldArray]:
    """The full nonzero expansion {s: coefficient} of g over the current registry."""
    if g.pole_order is not None and g.pole_order > registry.bound:
        raise NotInSpanError(f"The pole order of {g} exceeds the registry bound {registry.bound}!")
    return _eliminate(registry=registry, g=g, stop=0)


def monomial_values(
    curve: CurveModel, places: Iterable[RationalPlace], max_pole_order: int
) -> galois.FieldArray:
    """Matrix of reduced monomial values, one row per place and one column per pole order (zero at gaps)."""
    GF = curve.field.GF
    places = list(places)
    xs = GF([place.coordinates[0] for place in places])
    ys = GF([place.coordinates[-1] for place in places])
    values = GF.Zeros((len(places), max_pole_order + 1))
    ones = GF.Ones(len(places))
    for s in curve.semigroup.elements_below(max_pole_order):
        i, j = curve.monomial_exponents(s)
        column = ones if i == 0 else xs**i
        if j:
            column = column * ys**j
        values[:, s] = column
    return values


def evaluation_matrix(
    registry: BasisRegistry, places: Iterable[RationalPlace], orders: Iterable[int]
) -> galois.FieldArray:
    """Values f_s(P) with one row per requested pole order s and one column per place."""
    orders = list(orders)
    GF = registry.curve.field.GF
    width = max(orders) + 1 if orders else 1
    basis = GF.Zeros((len(orders), width))
    for row, s in enumerate(orders):
        coeffs = registry[s].coeffs
        basis[row, : len(coeffs)] = coeffs
    return basis @ monomial_values(curve=registry.curve, places=places, max_pole_order=width - 1).T


def evaluate(curve: CurveModel, f: FunctionElement, place: RationalPlace) -> galois.FieldArray:
    if f.is_zero:
        return curve.field.GF(0)
    values = monomial_values(curve=curve, places=[place], max_pole_order=len(f.coeffs) - 1)[0]
    return np.sum(values * f.coeffs)


def _check_subsets(semigroup: NumericalSemigroup, *sets: Iterable[int]) -> None:
    for values in sets:
        for value in values:
            if value not in semigroup:
                raise InvalidSolutionError(f"The degree {value} is not an element of {semigroup}!")


def tweak_polynomial_basis(registry: BasisRegistry, D_A: Iterable[int], D_B: Iterable[int]) -> BasisRegistry:
    """
    Return a copy of the registry in which f_(a+b) = f_a * f_b for every (a, b) in D_A x D_B.

    Assignments run in ascending order of a + b; when 0 is in both sets the order does not matter.
    """
    D_A, D_B = sorted(set(D_A)), sorted(set(D_B))
    semigroup = registry.curve.semigroup
    _check_subsets(semigroup, D_A, D_B)
    sums = [a + b for a in D_A for b in D_B]
    if len(set(sums)) != len(sums):
        raise InvalidSolutionError(f"The sets {D_A} and {D_B} have colliding sums a + b, which must be distinct!")
    if max(sums) > registry.bound:
        raise NotInSpanError(f"The largest sum {max(sums)} exceeds the registry bound {registry.bound}!")

    tweaked = registry.copy()
    for a, b in sorted(((a, b) for a in D_A for b in D_B), key=lambda pair: pair[0] + pair[1]):
        tweaked[a + b] = tweaked[a] * tweaked[b]
    return tweaked


def _modify_for_products(
    registry: BasisRegistry, a: int, partners: list[int], d: int
) -> FunctionElement:
    """Successively modify f_a so that pi_(f_d)(f_a f_b) is 1 when a + b = d and 0 otherwise, for b in partners."""
    f_a = registry[a]
    for i, b in enumerate(partners):
        if i == 0 and a + b == d:
            value = project(registry=registry, g=f_a * registry[b], s=d)
            if value == 0:
                raise BasisTweakError(f"The projection of f_{a} f_{b} onto f_{d} vanished and cannot be inverted!")
            f_a = f_a.scale(value**-1)
            continue
        if (d - b) not in registry:
            raise BasisTweakError(f"The modification of f_{a} needs f_{d - b}, but {d - b} is not in the semigroup!")
        numerator = project(registry=registry, g=f_a * registry[b], s=d)
        if numerator == 0:
            continue
        denominator = project(registry=registry, g=registry[d - b] * registry[b], s=d)
        if denominator == 0:
            raise BasisTweakError(f"The projection of f_{d - b} f_{b} onto f_{d} vanished and cannot be inverted!")
        f_a = f_a - registry[d - b].scale(numerator / denominator)
    return f_a


def tweak_matdot_basis(registry: BasisRegistry, D_A: Iterable[int], D_B: Iterable[int], d: int) -> BasisRegistry:
    """
    Return a copy of the registry satisfying the matdot indicator property for every (a, b) in D_A x D_B.

    pi_(f_d)(f_a f_b) is 1 when a + b = d and 0 otherwise. Basis functions are modified in increasing order of
    pole order, starting at the first element of D_A | D_B with 2 d_j >= d. On the rational curve monomial
    products are already exact and the registry is returned unchanged.
    """
    D_A, D_B = sorted(set(D_A)), sorted(set(D_B))
    semigroup = registry.curve.semigroup
    _check_subsets(semigroup, D_A, D_B, [d])
    m = len(D_A)
    if len(D_B) != m:
        raise InvalidSolutionError(f"The sets {D_A} and {D_B} must have the same size!")
    pair_count = sum(1 for a in D_A for b in D_B if a + b == d)
    if pair_count != m:
        raise InvalidSolutionError(f"There are {pair_count} pairs summing to d = {d} instead of m = {m}!")

    tweaked = registry.copy()
    if registry.curve.kind is CurveKind.RATIONAL:
        return tweaked

    set_A, set_B = set(D_A), set(D_B)
    if d in set_A | set_B:
        raise DInSetsError(f"Indicated d ({d}) lies in D_A | D_B, which the basis modification does not allow!")

    D = sorted(set_A | set_B)
    start = next(index for index, value in enumerate(D) if 2 * value >= d)
    if 2 * D[start] == d and D[start] in set_A and D[start] in set_B:
        tweaked[d] = tweaked[D[start]] * tweaked[D[start]]

    for a in D[start:]:
        if a in set_A and a not in set_B:
            candidates = D_B
        elif a in set_B and a not in set_A:
            candidates = D_A
        else:
            candidates = D
        partners = [e for e in candidates if e < a and e + a >= d]
        tweaked[a] = _modify_for_products(registry=tweaked, a=a, partners=partners, d=d)
        if a in set_A and a in set_B and 2 * a > d:
            tweaked[2 * a] = tweaked[a] * tweaked[a]
    return tweaked


def matdot_indicator_holds(registry: BasisRegistry, D_A: Iterable[int], D_B: Iterable[int], d: int) -> bool:
    """Whether pi_(f_d)(f_a f_b) equals [a + b == d] for every pair."""
    for a in D_A:
        for b in D_B:
            expected = 1 if a + b == d else 0
            if int(project(registry=registry, g=registry[a] * registry[b], s=d)) != expected:
                return False
    return True


def dump_registry(registry: BasisRegistry) -> dict[str, dict[str, int]]:
    """JSON-friendly dump {s: {"(i,j)": code}} for debugging."""
    return {
        str(s): {f"({i},{j})": code for (i, j), code in registry[s].coords.items()} for s in registry.orders
    }
