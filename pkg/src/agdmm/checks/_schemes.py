"""Check functions that apply to a built CodeScheme."""

from typing import Iterable, Optional

from .._codec import CodeScheme
from .._constructions import SolutionKind
from .._function_field import CurveKind, matdot_indicator_holds
from .._registration import AuditMessage, Importance, Severity, register_check


@register_check(importance=Importance.CRITICAL, target_type=CodeScheme)
def check_enough_places(scheme: CodeScheme) -> Optional[AuditMessage]:
    """Check threshold <= N <= number of affine rational places."""
    if scheme.N > scheme.curve.place_count:
        return AuditMessage(message=f"{scheme.N} workers exceed the {scheme.curve.place_count} places of the curve.")
    if scheme.threshold > scheme.N:
        return AuditMessage(message=f"The threshold {scheme.threshold} exceeds the {scheme.N} available workers.")

    return None


@register_check(importance=Importance.CRITICAL, target_type=CodeScheme)
def check_registry_triangular(scheme: CodeScheme) -> Iterable[AuditMessage]:
    """Check that every basis function f_s has pole order exactly s."""
    for s in scheme.registry.orders:
        pole_order = scheme.registry[s].pole_order
        if pole_order != s:
            yield AuditMessage(message=f"The basis function f_{s} has pole order {pole_order}.", severity=Severity.HIGH)


@register_check(importance=Importance.CRITICAL, target_type=CodeScheme)
def check_poly_basis_multiplicative(scheme: CodeScheme) -> Iterable[AuditMessage]:
    """Check f_(a+b) = f_a f_b over D_A x D_B for polynomial schemes."""
    if scheme.kind is not SolutionKind.POLY:
        return
    registry = scheme.registry
    for a in scheme.solution.D_A:
        for b in scheme.solution.D_B:
            if registry[a] * registry[b] != registry[a + b]:
                yield AuditMessage(message=f"The basis function f_{a + b} differs from the product f_{a} f_{b}.")


@register_check(importance=Importance.CRITICAL, target_type=CodeScheme)
def check_matdot_basis_indicator(scheme: CodeScheme) -> Optional[AuditMessage]:
    """Check that the f_d coordinate of f_a f_b is 1 when a + b = d and 0 otherwise."""
    if scheme.kind is not SolutionKind.MATDOT:
        return None
    solution = scheme.solution
    if not matdot_indicator_holds(registry=scheme.registry, D_A=solution.D_A, D_B=solution.D_B, d=solution.d):
        return AuditMessage(message=f"The f_{solution.d} coordinates of the products f_a f_b are not an indicator.")

    return None


@register_check(importance=Importance.CRITICAL, target_type=CodeScheme)
def check_places_on_curve(scheme: CodeScheme) -> Iterable[AuditMessage]:
    """Check that every Hermitian place satisfies y^q0 + y = x^(q0+1) and that places are distinct."""
    if len(set(place.coordinates for place in scheme.places)) != scheme.N:
        yield AuditMessage(message="Two workers share the same evaluation place.", severity=Severity.HIGH)
    if scheme.curve.kind is not CurveKind.HERMITIAN:
        return
    q0 = scheme.curve.q0
    for place in scheme.places:
        x, y = scheme.GF(place.coordinates[0]), scheme.GF(place.coordinates[1])
        if y**q0 + y != x ** (q0 + 1):  # type: ignore
            yield AuditMessage(message=f"The place {place.coordinates} does not lie on the curve.")


@register_check(importance=Importance.BEST_PRACTICE_SUGGESTION, target_type=CodeScheme)
def check_spare_workers(scheme: CodeScheme) -> Optional[AuditMessage]:
    """Suggest spare workers when the scheme cannot tolerate a single straggler."""
    if scheme.N == scheme.threshold:
        spare_places = scheme.curve.place_count - scheme.N
        return AuditMessage(
            message=(
                f"All {scheme.N} workers must respond, so a single straggler stalls decoding. "
                f"The curve has {spare_places} unused places that could serve as spare workers."
            )
        )

    return None
