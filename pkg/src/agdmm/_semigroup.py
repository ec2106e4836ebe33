"""Numerical semigroup combinatorics: membership, invariants, Apery sets, the order <=_S and the Delta/phi maps."""

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable

from ._exceptions import GcdNotOneError, InvalidDeltaError, NotInSemigroupError, OutOfRangeError


@dataclass(frozen=True)
class DeltaProfile:
    """Values of Delta(delta) = delta + 2 n(delta) over S intersected with [0, c]."""

    domain: tuple[int, ...]
    values: tuple[int, ...]
    argmax: int
    restricted_argmax: int

    @property
    def maximum(self) -> int:
        return max(self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.values))


@dataclass(frozen=True)
class NumericalSemigroup:
    """
    A numerical semigroup given by generators, with a membership table reaching past the conductor.

    Use ``from_generators`` rather than the constructor directly.
    """

    generators: tuple[int, ...]
    conductor: int
    _table: tuple[bool, ...] = field(repr=False, compare=False)

    @classmethod
    def from_generators(cls, generators: Iterable[int]) -> "NumericalSemigroup":
        gens = tuple(sorted(set(int(g) for g in generators)))
        if not gens or any(g <= 0 for g in gens):
            raise GcdNotOneError(f"Indicated generators ({gens}) must be a non-empty set of positive integers!")
        if reduce(gcd, gens) != 1:
            raise GcdNotOneError(f"Indicated generators ({gens}) have gcd {reduce(gcd, gens)}, not 1!")

        # Every integer >= (a-1)(b-1) is representable for coprime a, b; with gcd 1 overall the Frobenius
        # number is below max(g)^2, so scanning that far is enough to find the conductor.
        scan_bound = max(gens) ** 2 + max(gens) + 1
        members = [False] * (scan_bound + 1)
        members[0] = True
        for value in range(1, scan_bound + 1):
            members[value] = any(value >= g and members[value - g] for g in gens)
        conductor = 0
        for value in range(scan_bound, -1, -1):
            if not members[value]:
                conductor = value + 1
                break

        table_bound = conductor + max(gens) + 1
        return cls(generators=gens, conductor=conductor, _table=tuple(members[: table_bound + 1]))

    def __contains__(self, value: int) -> bool:
        if value < 0:
            return False
        if value >= self.conductor:
            return True
        return self._table[value]

    @property
    def table_bound(self) -> int:
        return len(self._table) - 1

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(value for value in range(self.conductor) if value not in self)

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def n(self) -> int:
        """Number of semigroup elements below the conductor."""
        return self.conductor - self.genus

    @property
    def multiplicity(self) -> int:
        return min(value for value in range(1, self.conductor + 2) if value in self)

    @property
    def is_symmetric(self) -> bool:
        return self.genus == self.n

    def elements_below(self, bound: int) -> tuple[int, ...]:
        """Semigroup elements in [0, bound]."""
        return tuple(value for value in range(bound + 1) if value in self)

    def next_element(self, value: int) -> int:
        """The smallest semigroup element greater than or equal to ``value``."""
        value = max(value, 0)
        while value not in self:
            value += 1
        return value

    def leq(self, a: int, b: int) -> bool:
        """The partial order a <=_S b, i.e. b - a is in S."""
        return (b - a) in self

    def apery(self, n: int) -> tuple[int, ...]:
        """
        The Apery set Ap(S, n): for each residue i mod n, the smallest element congruent to i.

        The relation c(S) = max(Ap) - n + 1 is asserted on the way out.
        """
        if n <= 0 or n not in self:
            raise NotInSemigroupError(f"Indicated modulus ({n}) is not a nonzero element of {self}!")
        apery_set = [-1] * n
        found = 0
        value = 0
        while found < n:
            if value in self and apery_set[value % n] < 0:
                apery_set[value % n] = value
                found += 1
            value += 1
        assert self.conductor == max(0, max(apery_set) - n + 1), (
            f"Apery set {apery_set} of {self} violates c(S) = max(Ap) - n + 1!"
        )
        return tuple(apery_set)

    def n_of(self, delta: int) -> int:
        """The number of semigroup elements in [delta, c-1]."""
        if delta not in self or delta > self.conductor:
            raise InvalidDeltaError(f"Indicated delta ({delta}) is not in S intersected with [0, {self.conductor}]!")
        return sum(1 for value in range(delta, self.conductor) if value in self)

    def delta(self, delta: int) -> int:
        return delta + 2 * self.n_of(delta)

    def delta_profile(self) -> DeltaProfile:
        domain = self.elements_below(self.conductor)
        values = tuple(self.delta(value) for value in domain)
        maximum = max(values)
        argmax = max(value for value, delta in zip(domain, values) if delta == maximum)
        restricted = [(value, delta) for value, delta in zip(domain, values) if 2 * value >= self.conductor]
        restricted_maximum = max(delta for _, delta in restricted)
        restricted_argmax = max(value for value, delta in restricted if delta == restricted_maximum)
        assert restricted_maximum == maximum, f"Delta of {self} is not maximized above c(S)/2!"
        return DeltaProfile(domain=domain, values=values, argmax=argmax, restricted_argmax=restricted_argmax)

    def phi(self, x: int) -> int:
        if self.conductor < 1 or not 0 <= x <= self.conductor - 1:
            raise OutOfRangeError(f"Indicated value ({x}) is outside of [0, {self.conductor - 1}]!")
        return self.conductor - 1 - x

    def phi_reverses_order(self, x: int, y: int) -> bool:
        """
        Whether x <=_S y holds exactly when phi(y) <=_S phi(x).

        phi(y) - phi(x) = x - y, so phi reverses <=_S; this is the form of the relation that actually holds.
        """
        return self.leq(x, y) == self.leq(self.phi(y), self.phi(x))

    @property
    def is_sparse(self) -> bool:
        """No two consecutive elements below the conductor."""
        return not any(t in self and t + 1 in self for t in range(self.conductor - 1))

    def info(self) -> dict:
        profile = self.delta_profile()
        return dict(
            generators=list(self.generators),
            conductor=self.conductor,
            gaps=list(self.gaps),
            genus=self.genus,
            n=self.n,
            multiplicity=self.multiplicity,
            sparse=self.is_sparse,
            delta_argmax=profile.argmax,
            delta_max=profile.maximum,
        )

    def __str__(self) -> str:
        return f"<{', '.join(str(g) for g in self.generators)}>"


def natural_numbers() -> NumericalSemigroup:
    return NumericalSemigroup.from_generators([1])


def hermitian_semigroup(q: int) -> NumericalSemigroup:
    """The semigroup <q, q+1> of a Hermitian curve; c = q(q-1) and g = n = c/2 are cross-checked."""
    if q < 2:
        raise ValueError(f"Indicated Hermitian parameter ({q}) must be at least 2!")
    semigroup = NumericalSemigroup.from_generators([q, q + 1])
    assert semigroup.conductor == q * (q - 1)
    assert semigroup.genus == semigroup.n == q * (q - 1) // 2
    return semigroup


def hermitian_n_of_multiple(q: int, k: int) -> int:
    """Closed form of n(kq) for <q, q+1> and k in [0, q-1]."""
    return (q - 1 - k) * (q + k) // 2
