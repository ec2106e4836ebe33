"""Degree sets D_A, D_B for AG polynomial and AG matdot codes, their validity predicates and a search oracle."""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence, Type, Union

from tqdm import tqdm

from ._exceptions import (
    ApInsufficiencyError,
    HypothesisUnmetError,
    InvalidSolutionError,
    MNotInSemigroupError,
    MTooSmallError,
    NoSolutionInBoundError,
    NotInSemigroupError,
    NoUniqueMultipleError,
    SearchSpaceTooLargeError,
)
from ._semigroup import NumericalSemigroup, natural_numbers
from .utils import calculate_number_of_cpu

MAX_SEARCH_SPACE = 10**7
POLY_METHODS = ("classical", "trivial", "apery", "recursive", "zero")
MATDOT_METHODS = ("classical", "trivial", "optimal")


class SolutionKind(Enum):
    POLY = "poly"
    MATDOT = "matdot"


@dataclass(frozen=True)
class SolutionPair:
    """
    Degree sets D_A and D_B together with the semigroup they live in.

    For matdot solutions ``d`` is the sum reached by exactly m pairs.
    """

    kind: SolutionKind
    D_A: tuple[int, ...]
    D_B: tuple[int, ...]
    semigroup: NumericalSemigroup
    d: Optional[int] = None
    method: str = "custom"

    @property
    def threshold(self) -> int:
        """The recovery threshold max(D_A) + max(D_B) + 1."""
        return max(self.D_A) + max(self.D_B) + 1

    @property
    def k(self) -> int:
        return max(self.D_A) + max(self.D_B)

    @property
    def m(self) -> int:
        return len(self.D_A)

    @property
    def n(self) -> int:
        return len(self.D_B)

    def matdot_partner(self, a: int) -> int:
        """The unique b in D_B with a + b = d."""
        assert self.kind is SolutionKind.MATDOT and self.d is not None
        return self.d - a


def _canonicalize(semigroup: NumericalSemigroup, values: Iterable[int], name: str) -> tuple[int, ...]:
    values = [int(value) for value in values]
    if not values:
        raise InvalidSolutionError(f"Indicated set {name} is empty!")
    if len(set(values)) != len(values):
        raise InvalidSolutionError(f"Indicated set {name} ({values}) contains duplicate elements!")
    for value in values:
        if value not in semigroup:
            raise NotInSemigroupError(f"Indicated element ({value}) of {name} is not in {semigroup}!")
    return tuple(sorted(values))


def _difference_set(values: Sequence[int]) -> set[int]:
    return {x - y for x in values for y in values if x > y}


def _sums_distinct(D_A: Sequence[int], D_B: Sequence[int]) -> bool:
    return len({a + b for a in D_A for b in D_B}) == len(D_A) * len(D_B)


def validate_poly(semigroup: NumericalSemigroup, D_A: Iterable[int], D_B: Iterable[int]) -> bool:
    """
    Whether all sums a + b are distinct, decided by disjointness of the difference sets E_A and E_B.

    The difference-set answer is cross-checked against the direct all-pairs test.
    """
    D_A = _canonicalize(semigroup=semigroup, values=D_A, name="D_A")
    D_B = _canonicalize(semigroup=semigroup, values=D_B, name="D_B")
    disjoint = _difference_set(D_A).isdisjoint(_difference_set(D_B))
    assert disjoint == _sums_distinct(D_A, D_B), f"Difference-set test disagrees with direct sums for {D_A}, {D_B}!"
    return disjoint


def validate_matdot(semigroup: NumericalSemigroup, D_A: Iterable[int], D_B: Iterable[int]) -> Optional[int]:
    """The smallest d reached by exactly m = |D_A| pairs (a, b), or None if there is no such d."""
    D_A = _canonicalize(semigroup=semigroup, values=D_A, name="D_A")
    D_B = _canonicalize(semigroup=semigroup, values=D_B, name="D_B")
    if len(D_A) != len(D_B):
        raise InvalidSolutionError(
            f"Matdot sets must have equal sizes, but |D_A| = {len(D_A)} and |D_B| = {len(D_B)}!"
        )
    counts = Counter(a + b for a in D_A for b in D_B)
    qualifying = [d for d, count in counts.items() if count == len(D_A)]
    return min(qualifying) if qualifying else None


def _check_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise ValueError(f"Indicated {name} ({value}) must be a positive integer!")


def _poly_solution(semigroup: NumericalSemigroup, D_A: Iterable[int], D_B: Iterable[int], method: str) -> SolutionPair:
    solution = SolutionPair(
        kind=SolutionKind.POLY, D_A=tuple(sorted(D_A)), D_B=tuple(sorted(D_B)), semigroup=semigroup, method=method
    )
    if not validate_poly(semigroup=semigroup, D_A=solution.D_A, D_B=solution.D_B):
        raise InvalidSolutionError(
            f"The {method} construction produced colliding sums for {solution.D_A}, {solution.D_B}!"
        )
    return solution


def _matdot_solution(semigroup: NumericalSemigroup, D_A: Iterable[int], d: int, method: str) -> SolutionPair:
    D_A = tuple(sorted(D_A))
    D_B = tuple(sorted(d - a for a in D_A))
    found = validate_matdot(semigroup=semigroup, D_A=D_A, D_B=D_B)
    if found != d:
        raise InvalidSolutionError(
            f"The {method} construction does not reach d = {d} exactly m times (found {found})!"
        )
    return SolutionPair(kind=SolutionKind.MATDOT, D_A=D_A, D_B=D_B, semigroup=semigroup, d=d, method=method)


def poly_classical(m: int, n: int) -> SolutionPair:
    """D_A = {0..m-1}, D_B = {0, m, ..., (n-1)m} over the natural numbers."""
    _check_positive(m=m, n=n)
    return _poly_solution(natural_numbers(), range(m), range(0, n * m, m), method="classical")


def poly_trivial(semigroup: NumericalSemigroup, m: int, n: int) -> SolutionPair:
    """The classical sets shifted by the conductor; threshold 2c + mn."""
    _check_positive(m=m, n=n)
    c = semigroup.conductor
    return _poly_solution(semigroup, (c + i for i in range(m)), (c + j * m for j in range(n)), method="trivial")


def poly_apery(semigroup: NumericalSemigroup, m: int, n: int) -> SolutionPair:
    """The m smallest elements of Ap(S, m') against multiples of m', where m' is the first element >= m."""
    _check_positive(m=m, n=n)
    m_prime = semigroup.next_element(m)
    apery_set = sorted(semigroup.apery(m_prime))
    if len(apery_set) < m:
        raise ApInsufficiencyError(f"Ap(S, {m_prime}) has fewer than {m} elements!")
    return _poly_solution(semigroup, apery_set[:m], (j * m_prime for j in range(n)), method="apery")


def recursive_multiples(semigroup: NumericalSemigroup, m: int, n: int) -> tuple[int, ...]:
    """m_1 = 0 and m_i = the first semigroup element >= m_(i-1) + m."""
    multiples = [0]
    while len(multiples) < n:
        multiples.append(semigroup.next_element(multiples[-1] + m))
    return tuple(multiples)


def poly_recursive(semigroup: NumericalSemigroup, m: int, n: int) -> SolutionPair:
    _check_positive(m=m, n=n)
    c = semigroup.conductor
    return _poly_solution(
        semigroup, range(c, c + m), recursive_multiples(semigroup=semigroup, m=m, n=n), method="recursive"
    )


def poly_zero_variant(semigroup: NumericalSemigroup, m: int, n: int) -> SolutionPair:
    """The recursive sets with the unique multiple of m in [c, c+m-1] replaced by 0; requires m in S."""
    _check_positive(m=m, n=n)
    if m not in semigroup:
        raise MNotInSemigroupError(f"Indicated m ({m}) is not an element of {semigroup}!")
    c = semigroup.conductor
    multiples = [value for value in range(c, c + m) if value % m == 0]
    if len(multiples) != 1:
        raise NoUniqueMultipleError(f"The interval [{c}, {c + m - 1}] holds {len(multiples)} multiples of {m}!")
    D_A = sorted({0} | (set(range(c, c + m)) - set(multiples)))
    return _poly_solution(semigroup, D_A, recursive_multiples(semigroup=semigroup, m=m, n=n), method="zero")


def matdot_classical(m: int) -> SolutionPair:
    _check_positive(m=m)
    return _matdot_solution(natural_numbers(), range(m), d=m - 1, method="classical")


def matdot_trivial(semigroup: NumericalSemigroup, m: int) -> SolutionPair:
    """D_A = D_B = c + {0..m-1} with d = 2c + m - 1."""
    _check_positive(m=m)
    c = semigroup.conductor
    return _matdot_solution(semigroup, range(c, c + m), d=2 * c + m - 1, method="trivial")


def matdot_optimal(semigroup: NumericalSemigroup, m: int) -> SolutionPair:
    """
    The minimum-threshold matdot solution for m >= 2c.

    With delta maximizing delta + 2 n(delta), d = m - 1 + 2c - 2 n(delta) and
    D_A = D_B = (S in [delta, c-1]) | [c, d-c] | (d - S in [delta, c-1]).
    """
    _check_positive(m=m)
    c = semigroup.conductor
    if m < 2 * c:
        raise MTooSmallError(f"Indicated m ({m}) is below 2c = {2 * c}, where the optimal construction applies!")
    delta = semigroup.delta_profile().argmax
    d = m - 1 + 2 * c - 2 * semigroup.n_of(delta)
    low = [value for value in range(delta, c) if value in semigroup]
    D_A = set(low) | set(range(c, d - c + 1)) | {d - value for value in low}
    assert len(D_A) == m, f"Optimal construction produced {len(D_A)} degrees instead of m = {m}!"
    solution = _matdot_solution(semigroup, D_A, d=d, method="optimal")
    assert solution.threshold == 2 * (d - delta) + 1
    return solution


def poly_lower_bound(semigroup: NumericalSemigroup, m: int, n: int) -> int:
    """g(S) + mn, a lower bound on any polynomial-code threshold when mn >= n(S)."""
    _check_positive(m=m, n=n)
    if m * n < semigroup.n:
        raise HypothesisUnmetError(f"The bound needs mn >= n(S), but mn = {m * n} < {semigroup.n}!")
    return semigroup.genus + m * n


def construct(
    semigroup: NumericalSemigroup, kind: Union[str, SolutionKind], method: str, m: int, n: Optional[int] = None
) -> SolutionPair:
    """Dispatch to a construction by kind and method name."""
    kind = SolutionKind(kind) if isinstance(kind, str) else kind
    if kind is SolutionKind.POLY:
        if n is None:
            raise ValueError("Polynomial constructions need both m and n!")
        if method == "classical":
            if semigroup.conductor != 0:
                raise ValueError(f"The classical construction lives on the natural numbers, not on {semigroup}!")
            return poly_classical(m=m, n=n)
        constructions = dict(trivial=poly_trivial, apery=poly_apery, recursive=poly_recursive, zero=poly_zero_variant)
        if method not in constructions:
            raise ValueError(f"Indicated method ({method}) is not one of {POLY_METHODS}!")
        return constructions[method](semigroup=semigroup, m=m, n=n)

    if method == "classical":
        if semigroup.conductor != 0:
            raise ValueError(f"The classical construction lives on the natural numbers, not on {semigroup}!")
        return matdot_classical(m=m)
    constructions = dict(trivial=matdot_trivial, optimal=matdot_optimal)
    if method not in constructions:
        raise ValueError(f"Indicated method ({method}) is not one of {MATDOT_METHODS}!")
    return constructions[method](semigroup=semigroup, m=m)


def method_comparison_rows(semigroup: NumericalSemigroup, m: int, n: int) -> list[dict]:
    """The trivial, Apery and recursive rows: formula value next to the threshold actually achieved."""
    c = semigroup.conductor
    m_prime = semigroup.next_element(m)
    multiples = recursive_multiples(semigroup=semigroup, m=m, n=n)
    mu = sum(multiples[i + 1] - multiples[i] - m for i in range(n - 1))
    rows = [
        ("trivial", poly_trivial, 2 * c + m * n),
        ("apery", poly_apery, c + m_prime * n),
        ("recursive", poly_recursive, c + m * n + mu),
    ]
    return [
        dict(method=method, formula=formula, threshold=construction(semigroup=semigroup, m=m, n=n).threshold)
        for method, construction, formula in rows
    ]


def solution_to_dict(solution: SolutionPair) -> dict:
    """The JSON shape printed by the ``construct`` and ``search`` commands."""
    lower_bound = None
    if solution.kind is SolutionKind.POLY and solution.m * solution.n >= solution.semigroup.n:
        lower_bound = poly_lower_bound(semigroup=solution.semigroup, m=solution.m, n=solution.n)
    return dict(
        kind=solution.kind.value,
        method=solution.method,
        m=solution.m,
        n=solution.n if solution.kind is SolutionKind.POLY else None,
        D_A=list(solution.D_A),
        D_B=list(solution.D_B),
        d=solution.d,
        threshold=solution.threshold,
        lower_bound=lower_bound,
        semigroup=dict(generators=list(solution.semigroup.generators), conductor=solution.semigroup.conductor),
    )


# Candidates are plain tuples (threshold, D_A, D_B, d) so they compare with the canonical tie-break and pickle cheaply.
_Candidate = tuple[int, tuple[int, ...], tuple[int, ...], Optional[int]]


def _search_poly_chunk(
    generators: tuple[int, ...], m: int, n: int, search_bound: int, first: int
) -> Optional[_Candidate]:
    """Best polynomial solution whose D_A starts at ``first``."""
    semigroup = NumericalSemigroup.from_generators(generators)
    elements = semigroup.elements_below(search_bound)
    rest = [value for value in elements if value > first]
    best: Optional[_Candidate] = None
    for tail in combinations(rest, m - 1):
        D_A = (first,) + tail
        for D_B in combinations(elements, n):
            threshold = D_A[-1] + D_B[-1] + 1
            if best is not None and threshold > best[0]:
                continue
            if not _sums_distinct(D_A, D_B):
                continue
            candidate = (threshold, D_A, D_B, None)
            if best is None or candidate < best:
                best = candidate
    return best


def _search_matdot_chunk(generators: tuple[int, ...], m: int, search_bound: int, first: int) -> Optional[_Candidate]:
    """
    Best matdot solution with min(D_A) = ``first``.

    D_B is forced to be d - D_A, and for fixed (min(D_A), d) the smallest admissible max(D_A) comes from the first
    m elements s with s and d - s both in S intersected with [0, bound].
    """
    semigroup = NumericalSemigroup.from_generators(generators)
    elements = [value for value in semigroup.elements_below(search_bound) if value >= first]
    best: Optional[_Candidate] = None
    for d in range(first, 2 * search_bound + 1):
        if not 0 <= d - first <= search_bound or (d - first) not in semigroup:
            continue
        admissible = []
        for value in elements:
            if 0 <= d - value <= search_bound and (d - value) in semigroup:
                admissible.append(value)
                if len(admissible) == m:
                    break
        if len(admissible) < m:
            continue
        D_A = tuple(admissible)
        D_B = tuple(sorted(d - value for value in D_A))
        candidate = (D_A[-1] + D_B[-1] + 1, D_A, D_B, d)
        if best is None or candidate < best:
            best = candidate
    return best


def search_space_size(semigroup: NumericalSemigroup, kind: SolutionKind, m: int, n: int, search_bound: int) -> int:
    """Number of candidates the exhaustive search would examine."""
    size = len(semigroup.elements_below(search_bound))
    if kind is SolutionKind.POLY:
        return comb(size, m) * comb(size, n)
    return size * (2 * search_bound + 1) * size


def brute_force_optimal(
    semigroup: NumericalSemigroup,
    kind: Union[str, SolutionKind],
    m: int,
    n: Optional[int] = None,
    search_bound: Optional[int] = None,
    n_jobs: int = 1,
    progress_bar: bool = False,
    progress_bar_class: Type[tqdm] = tqdm,
    progress_bar_options: Optional[dict] = None,
) -> SolutionPair:
    """
    Exhaustively search S intersected with [0, search_bound] for a minimum-threshold solution.

    Parameters
    ----------
    semigroup : NumericalSemigroup
    kind : str or SolutionKind
        Either "poly" or "matdot".
    m, n : int
        Partition sizes; n is ignored for matdot.
    search_bound : int, optional
        Largest degree considered. Defaults to 2c + 2(m + n), or 2c + 2m + 4 for matdot.
    n_jobs : int
        Number of jobs to use in parallel. Set to -1 to use all available resources.
        The result does not depend on this value.
    progress_bar : bool, optional
        Display a progress bar over the candidate first elements of D_A.

    Ties are broken towards the lexicographically smallest (D_A, D_B).
    """
    kind = SolutionKind(kind) if isinstance(kind, str) else kind
    n = m if kind is SolutionKind.MATDOT else n
    if n is None:
        raise ValueError("Polynomial search needs both m and n!")
    _check_positive(m=m, n=n)
    if search_bound is None:
        search_bound = 2 * semigroup.conductor + 2 * (m + n if kind is SolutionKind.POLY else m + 2)

    size = search_space_size(semigroup=semigroup, kind=kind, m=m, n=n, search_bound=search_bound)
    if size > MAX_SEARCH_SPACE:
        raise SearchSpaceTooLargeError(
            f"The search over S up to {search_bound} would examine {size} candidates, above the limit of "
            f"{MAX_SEARCH_SPACE}! Please lower the search bound."
        )

    firsts = semigroup.elements_below(search_bound)
    if kind is SolutionKind.POLY:
        chunk_options = [
            dict(generators=semigroup.generators, m=m, n=n, search_bound=search_bound, first=first) for first in firsts
        ]
        chunk_function = _search_poly_chunk
    else:
        chunk_options = [
            dict(generators=semigroup.generators, m=m, search_bound=search_bound, first=first) for first in firsts
        ]
        chunk_function = _search_matdot_chunk

    if progress_bar_options is None:
        progress_bar_options = dict(position=0, leave=False, desc="Searching")
    calculated_number_of_jobs = calculate_number_of_cpu(requested_cpu=n_jobs)
    candidates = []
    if calculated_number_of_jobs == 1:
        iterable = progress_bar_class(chunk_options, **progress_bar_options) if progress_bar else chunk_options
        for options in iterable:
            candidates.append(chunk_function(**options))
    else:
        progress_bar_options.update(total=len(chunk_options))
        with ProcessPoolExecutor(max_workers=calculated_number_of_jobs) as executor:
            futures = [executor.submit(chunk_function, **options) for options in chunk_options]
            completed = as_completed(futures)
            if progress_bar:
                completed = progress_bar_class(completed, **progress_bar_options)
            for future in completed:
                candidates.append(future.result())

    candidates = [candidate for candidate in candidates if candidate is not None]
    if not candidates:
        raise NoSolutionInBoundError(f"There is no {kind.value} solution with degrees up to {search_bound}!")
    _, D_A, D_B, d = min(candidates)
    if kind is SolutionKind.POLY:
        return _poly_solution(semigroup, D_A, D_B, method="search")
    return _matdot_solution(semigroup, D_A, d=d, method="search")  # type: ignore
