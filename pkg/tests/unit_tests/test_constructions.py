from unittest import TestCase

import pytest

from agdmm import (
    HypothesisUnmetError,
    InvalidSolutionError,
    MNotInSemigroupError,
    MTooSmallError,
    NotInSemigroupError,
    NumericalSemigroup,
    SearchSpaceTooLargeError,
    SolutionKind,
    brute_force_optimal,
    construct,
    matdot_classical,
    matdot_optimal,
    matdot_trivial,
    natural_numbers,
    poly_apery,
    poly_classical,
    poly_lower_bound,
    poly_recursive,
    poly_trivial,
    poly_zero_variant,
    validate_matdot,
    validate_poly,
)
from agdmm._constructions import method_comparison_rows, search_space_size, solution_to_dict
from agdmm.testing import all_small_semigroups, semigroups_with_small_generators


class TestPolynomialConstructions34(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.semigroup = NumericalSemigroup.from_generators([3, 4])

    def test_trivial(self):
        solution = poly_trivial(self.semigroup, m=2, n=2)
        assert (solution.D_A, solution.D_B) == ((6, 7), (6, 8))
        assert solution.threshold == 16

    def test_apery_with_m_outside_semigroup(self):
        solution = poly_apery(self.semigroup, m=2, n=2)
        assert (solution.D_A, solution.D_B) == ((0, 4), (0, 3))
        assert solution.threshold == 8

    def test_apery_with_m_in_semigroup(self):
        solution = poly_apery(self.semigroup, m=3, n=2)
        assert (solution.D_A, solution.D_B) == ((0, 4, 8), (0, 3))
        assert solution.threshold == self.semigroup.conductor + 3 * 2

    def test_recursive(self):
        solution = poly_recursive(self.semigroup, m=2, n=2)
        assert (solution.D_A, solution.D_B) == ((6, 7), (0, 3))
        assert solution.threshold == 11

    def test_zero_variant(self):
        solution = poly_zero_variant(self.semigroup, m=3, n=2)
        assert (solution.D_A, solution.D_B) == ((0, 7, 8), (0, 3))
        assert solution.threshold == 12

    def test_zero_variant_needs_m_in_semigroup(self):
        with self.assertRaises(MNotInSemigroupError):
            poly_zero_variant(self.semigroup, m=2, n=2)

    def test_nonpositive_m(self):
        with self.assertRaisesRegex(ValueError, "must be a positive integer"):
            poly_trivial(self.semigroup, m=0, n=2)

    def test_lower_bound(self):
        assert poly_lower_bound(self.semigroup, m=2, n=2) == 7

    def test_lower_bound_hypothesis(self):
        with self.assertRaises(HypothesisUnmetError):
            poly_lower_bound(self.semigroup, m=1, n=2)


def test_zero_variant_on_natural_numbers():
    solution = poly_zero_variant(natural_numbers(), m=2, n=2)
    assert solution.D_A == (0, 1)
    assert solution.D_B == (0, 2)


def test_poly_classical():
    solution = poly_classical(m=2, n=3)
    assert (solution.D_A, solution.D_B) == ((0, 1), (0, 2, 4))
    assert solution.threshold == 6


def test_matdot_classical():
    solution = matdot_classical(m=3)
    assert solution.D_A == solution.D_B == (0, 1, 2)
    assert solution.d == 2
    assert solution.threshold == 5


def test_matdot_trivial():
    solution = matdot_trivial(NumericalSemigroup.from_generators([3, 4]), m=2)
    assert solution.D_A == solution.D_B == (6, 7)
    assert solution.d == 13
    assert solution.threshold == 15


def test_matdot_optimal_on_23():
    solution = matdot_optimal(NumericalSemigroup.from_generators([2, 3]), m=4)
    assert solution.D_A == solution.D_B == (2, 3, 4, 5)
    assert solution.d == 7
    assert solution.threshold == 11


def test_matdot_optimal_on_34():
    solution = matdot_optimal(NumericalSemigroup.from_generators([3, 4]), m=12)
    assert solution.D_A == (3, 4, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16)
    assert solution.d == 19
    assert solution.threshold == 33
    assert solution.matdot_partner(3) == 16


def test_matdot_optimal_needs_large_m():
    with pytest.raises(MTooSmallError):
        matdot_optimal(NumericalSemigroup.from_generators([2, 3]), m=3)


@pytest.mark.parametrize("semigroup", semigroups_with_small_generators(max_conductor=12), ids=str)
def test_method_comparison_thresholds(semigroup):
    c = semigroup.conductor
    for m in range(1, 6):
        for n in range(1, 6):
            rows = {row["method"]: row for row in method_comparison_rows(semigroup=semigroup, m=m, n=n)}
            assert rows["trivial"]["threshold"] == rows["trivial"]["formula"] == 2 * c + m * n
            assert rows["recursive"]["threshold"] == rows["recursive"]["formula"]
            assert rows["apery"]["threshold"] <= rows["apery"]["formula"]
            if m in semigroup:
                assert rows["apery"]["threshold"] == rows["apery"]["formula"] == c + m * n
                assert rows["recursive"]["threshold"] == c + m * n


@pytest.mark.parametrize("semigroup", all_small_semigroups(), ids=str)
def test_poly_thresholds_above_lower_bound(semigroup):
    for m in range(1, 6):
        for n in range(1, 6):
            if m * n < semigroup.n:
                continue
            bound = poly_lower_bound(semigroup, m=m, n=n)
            methods = ["trivial", "apery", "recursive"] + (["zero"] if m in semigroup else [])
            for method in methods:
                try:
                    solution = construct(semigroup=semigroup, kind="poly", method=method, m=m, n=n)
                except ValueError:
                    continue
                assert solution.threshold >= bound


def test_validate_poly():
    semigroup = NumericalSemigroup.from_generators([2, 3])
    assert validate_poly(semigroup, D_A=[0, 3], D_B=[0, 2])
    assert not validate_poly(semigroup, D_A=[0, 2], D_B=[0, 2])


def test_validate_poly_duplicates():
    with pytest.raises(InvalidSolutionError, match="duplicate"):
        validate_poly(natural_numbers(), D_A=[0, 0], D_B=[1])


def test_validate_poly_outside_semigroup():
    with pytest.raises(NotInSemigroupError):
        validate_poly(NumericalSemigroup.from_generators([2, 3]), D_A=[0, 1], D_B=[0])


def test_validate_matdot():
    semigroup = NumericalSemigroup.from_generators([2, 3])
    assert validate_matdot(semigroup, D_A=[2, 3], D_B=[3, 2]) == 5
    assert validate_matdot(semigroup, D_A=[0, 2], D_B=[0, 3]) is None


def test_validate_matdot_unequal_sizes():
    with pytest.raises(InvalidSolutionError):
        validate_matdot(natural_numbers(), D_A=[0, 1], D_B=[0])


def test_construct_dispatch():
    semigroup = NumericalSemigroup.from_generators([3, 4])
    assert construct(semigroup=semigroup, kind="matdot", method="trivial", m=2).kind is SolutionKind.MATDOT
    with pytest.raises(ValueError, match="natural numbers"):
        construct(semigroup=semigroup, kind="poly", method="classical", m=2, n=2)
    with pytest.raises(ValueError, match="is not one of"):
        construct(semigroup=semigroup, kind="matdot", method="apery", m=2)
    with pytest.raises(ValueError, match="both m and n"):
        construct(semigroup=semigroup, kind="poly", method="trivial", m=2)


def test_solution_to_dict():
    report = solution_to_dict(poly_apery(NumericalSemigroup.from_generators([2, 3]), m=2, n=2))
    assert report["D_A"] == [0, 3]
    assert report["D_B"] == [0, 2]
    assert report["threshold"] == 6
    assert report["lower_bound"] == 5
    assert report["d"] is None


def test_brute_force_poly_on_23():
    solution = brute_force_optimal(NumericalSemigroup.from_generators([2, 3]), kind="poly", m=2, n=2)
    assert solution.threshold == 6
    assert solution.method == "search"
    assert validate_poly(solution.semigroup, solution.D_A, solution.D_B)


def test_brute_force_poly_on_natural_numbers_is_classical():
    assert brute_force_optimal(natural_numbers(), kind="poly", m=2, n=2).threshold == 4


def test_brute_force_independent_of_jobs():
    semigroup = NumericalSemigroup.from_generators([2, 3])
    serial = brute_force_optimal(semigroup, kind="matdot", m=4)
    parallel = brute_force_optimal(semigroup, kind="matdot", m=4, n_jobs=2)
    assert (serial.D_A, serial.D_B, serial.d) == (parallel.D_A, parallel.D_B, parallel.d)


@pytest.mark.parametrize("generators,m", [((2, 3), 4), ((2, 3), 5), ((2, 3), 6), ((2, 3), 7), ((3, 4), 12)])
def test_matdot_optimal_matches_search(generators, m):
    semigroup = NumericalSemigroup.from_generators(generators)
    assert matdot_optimal(semigroup, m=m).threshold == brute_force_optimal(semigroup, kind="matdot", m=m).threshold


def test_search_space_guard():
    semigroup = NumericalSemigroup.from_generators([2, 3])
    assert search_space_size(semigroup, kind=SolutionKind.POLY, m=3, n=3, search_bound=100) > 10**7
    with pytest.raises(SearchSpaceTooLargeError):
        brute_force_optimal(semigroup, kind="poly", m=3, n=3, search_bound=100)


@pytest.mark.parametrize("semigroup", semigroups_with_small_generators(max_conductor=12), ids=str)
def test_method_comparison_rows_respect_lower_bound(semigroup):
    for m in range(1, 6):
        for n in range(1, 6):
            rows = method_comparison_rows(semigroup=semigroup, m=m, n=n)
            assert [row["method"] for row in rows] == ["trivial", "apery", "recursive"]
            if m * n >= semigroup.n:
                bound = poly_lower_bound(semigroup, m=m, n=n)
                assert all(row["threshold"] >= bound for row in rows)


MATDOT_SEARCH_CASES = [((2, 3), 4), ((2, 3), 5), ((2, 3), 6), ((2, 3), 7), ((3, 4), 12)]


@pytest.mark.parametrize("generators,m", MATDOT_SEARCH_CASES)
def test_optimal_matdot_sets_are_the_elements_below_d_in_their_range(generators, m):
    semigroup = NumericalSemigroup.from_generators(generators)
    solution = brute_force_optimal(semigroup, kind="matdot", m=m)
    low, high = min(solution.D_A), max(solution.D_A)
    for s in semigroup.elements_below(high):
        if s >= low:
            assert semigroup.leq(s, solution.d) == (s in solution.D_A), f"{s} breaks the structure of {solution}"


@pytest.mark.parametrize("generators,m", MATDOT_SEARCH_CASES)
def test_optimal_matdot_sets_straddle_the_conductor(generators, m):
    semigroup = NumericalSemigroup.from_generators(generators)
    solution = brute_force_optimal(semigroup, kind="matdot", m=m)
    assert min(solution.D_A) <= semigroup.conductor
    assert max(solution.D_A) >= solution.d - semigroup.conductor


def test_optimal_matdot_search_on_23_with_m_4():
    # threshold 11 is also reached by the optimal construction, but (0, 2, 3, 4) wins the tie-break
    solution = brute_force_optimal(NumericalSemigroup.from_generators([2, 3]), kind="matdot", m=4)
    assert solution.D_A == (0, 2, 3, 4)
    assert solution.D_B == (2, 3, 4, 6)
    assert solution.d == 6
    assert solution.threshold == 11
