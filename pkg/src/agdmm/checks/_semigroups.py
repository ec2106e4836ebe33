"""Check functions that apply to a NumericalSemigroup."""

from typing import Optional

from .._registration import AuditMessage, Importance, register_check
from .._semigroup import NumericalSemigroup


@register_check(importance=Importance.CRITICAL, target_type=NumericalSemigroup)
def check_semigroup_additive_closure(semigroup: NumericalSemigroup) -> Optional[AuditMessage]:
    """Check that the membership table is closed under addition up to its bound."""
    elements = semigroup.elements_below(semigroup.table_bound)
    for x in elements:
        for y in elements:
            if x + y not in semigroup:
                return AuditMessage(message=f"The sum {x} + {y} = {x + y} is missing from {semigroup}.")

    return None


@register_check(importance=Importance.CRITICAL, target_type=NumericalSemigroup)
def check_apery_conductor_relation(semigroup: NumericalSemigroup) -> Optional[AuditMessage]:
    """Check c(S) = max(Ap(S, n)) - n + 1 at the multiplicity n."""
    n = semigroup.multiplicity
    apery_set = semigroup.apery(n)
    expected = max(0, max(apery_set) - n + 1)
    if semigroup.conductor != expected:
        return AuditMessage(
            message=(
                f"The conductor {semigroup.conductor} disagrees with max(Ap(S, {n})) - {n} + 1 = {expected} "
                f"for the Apery set {list(apery_set)}."
            )
        )

    return None


@register_check(importance=Importance.CRITICAL, target_type=NumericalSemigroup)
def check_delta_bound_half_conductor(semigroup: NumericalSemigroup) -> Optional[AuditMessage]:
    """Check that delta + 2 n(delta) reaches its maximum at some delta >= c/2."""
    domain = semigroup.elements_below(semigroup.conductor)
    values = {delta: semigroup.delta(delta) for delta in domain}
    restricted = [value for delta, value in values.items() if 2 * delta >= semigroup.conductor]
    if max(restricted) != max(values.values()):
        return AuditMessage(
            message=(
                f"The maximum {max(values.values())} of delta + 2 n(delta) is not reached above c/2, "
                f"where the largest value is {max(restricted)}."
            )
        )

    return None
