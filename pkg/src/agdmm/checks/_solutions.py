"""Check functions that apply to a SolutionPair."""

from typing import Optional

from .._constructions import SolutionKind, SolutionPair, recursive_multiples, validate_matdot, validate_poly
from .._registration import AuditMessage, Importance, Severity, register_check


def expected_threshold(solution: SolutionPair) -> Optional[int]:
    """The closed-form threshold of the construction that produced the solution, if it has one."""
    semigroup = solution.semigroup
    c, m, n = semigroup.conductor, solution.m, solution.n
    if solution.kind is SolutionKind.MATDOT:
        if solution.method == "classical":
            return 2 * m - 1
        if solution.method == "trivial":
            return 2 * (c + m) - 1
        if solution.method == "optimal":
            return 2 * (solution.d - semigroup.delta_profile().argmax) + 1  # type: ignore
        return None

    if solution.method == "classical":
        return m * n
    if solution.method == "trivial":
        return 2 * c + m * n
    if solution.method == "apery":
        return c + m * n if m in semigroup else None
    if solution.method == "recursive":
        multiples = recursive_multiples(semigroup=semigroup, m=m, n=n)
        return c + m * n + sum(multiples[i + 1] - multiples[i] - m for i in range(n - 1))
    return None


@register_check(importance=Importance.CRITICAL, target_type=SolutionPair)
def check_solution_validity(solution: SolutionPair) -> Optional[AuditMessage]:
    """Check the defining property of the degree sets."""
    if solution.kind is SolutionKind.POLY:
        if not validate_poly(semigroup=solution.semigroup, D_A=solution.D_A, D_B=solution.D_B):
            return AuditMessage(message="Two pairs (a, b) share the same sum a + b, so products cannot be separated.")
        return None

    found = validate_matdot(semigroup=solution.semigroup, D_A=solution.D_A, D_B=solution.D_B)
    if found != solution.d:
        return AuditMessage(message=f"The sum d = {solution.d} is not reached exactly m times (found d = {found}).")

    return None


@register_check(importance=Importance.CRITICAL, target_type=SolutionPair)
def check_threshold_matches_sets(solution: SolutionPair) -> Optional[AuditMessage]:
    """Check that the threshold agrees with the closed form of its construction."""
    expected = expected_threshold(solution)
    if expected is not None and expected != solution.threshold:
        return AuditMessage(
            message=(
                f"The {solution.method} construction should reach threshold {expected}, "
                f"but its degree sets give {solution.threshold}."
            )
        )

    return None


@register_check(importance=Importance.CRITICAL, target_type=SolutionPair)
def check_threshold_above_lower_bound(solution: SolutionPair) -> Optional[AuditMessage]:
    """Check threshold >= g(S) + mn for polynomial solutions with mn >= n(S)."""
    semigroup = solution.semigroup
    if solution.kind is not SolutionKind.POLY or solution.m * solution.n < semigroup.n:
        return None
    bound = semigroup.genus + solution.m * solution.n
    if solution.threshold < bound:
        return AuditMessage(message=f"The threshold {solution.threshold} is below the lower bound g + mn = {bound}.")

    return None


@register_check(importance=Importance.BEST_PRACTICE_SUGGESTION, target_type=SolutionPair)
def check_threshold_gap_to_lower_bound(solution: SolutionPair) -> Optional[AuditMessage]:
    """Report how far a polynomial threshold is above g(S) + mn."""
    semigroup = solution.semigroup
    if solution.kind is not SolutionKind.POLY or solution.m * solution.n < semigroup.n:
        return None
    gap = solution.threshold - semigroup.genus - solution.m * solution.n
    if gap > 0:
        return AuditMessage(
            message=(
                f"The threshold {solution.threshold} is {gap} above the lower bound g + mn. "
                "The apery and recursive constructions come within n(S) of it when m is in S."
            ),
            severity=Severity.HIGH if gap > semigroup.genus else Severity.LOW,
        )

    return None


@register_check(importance=Importance.BEST_PRACTICE_SUGGESTION, target_type=SolutionPair)
def check_matdot_symmetry(solution: SolutionPair) -> Optional[AuditMessage]:
    """Check D_B = d - D_A for matdot solutions."""
    if solution.kind is not SolutionKind.MATDOT or solution.d is None:
        return None
    mirrored = tuple(sorted(solution.d - a for a in solution.D_A))
    if mirrored != solution.D_B:
        return AuditMessage(message=f"D_B {list(solution.D_B)} is not the mirror d - D_A = {list(mirrored)}.")

    return None
