"""Limits of the excess recovery ratio over asymptotically good curve families, evaluated with exact rationals."""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable

import galois

from ._constructions import SolutionKind

DECIMAL_PLACES = 6


@dataclass(frozen=True)
class SeriesPoint:
    """One member of a curve family: N rational places and a semigroup with conductor c."""

    N: int  # noqa: N815
    c: int


def square_root_of_square(q: int) -> int:
    root = isqrt(q)
    if q < 4 or root * root != q or not galois.is_prime_power(q):
        raise ValueError(f"Indicated field size ({q}) is not a square prime power, which the limit formula requires!")
    return root


def excess_limit(q: int, kind: SolutionKind = SolutionKind.POLY) -> Fraction:
    """1/(sqrt(q) - 1) for polynomial codes and twice that for matdot codes."""
    epsilon = Fraction(1, square_root_of_square(q) - 1)
    return epsilon if kind is SolutionKind.POLY else 2 * epsilon


def parse_series(series: str) -> list[SeriesPoint]:
    """Parse ``"N=64,c=12;N=512,c=56"`` into series points."""
    points = []
    for chunk in series.split(";"):
        if not chunk.strip():
            continue
        try:
            values = dict(item.strip().split("=", 1) for item in chunk.split(","))
            points.append(SeriesPoint(N=int(values["N"]), c=int(values["c"])))
        except (KeyError, ValueError):
            raise ValueError(f"Indicated series member ({chunk!r}) is not of the form 'N=<int>,c=<int>'!") from None
        if points[-1].N <= 0:
            raise ValueError(f"Indicated series member ({chunk!r}) needs a positive N!")
    return points


def series_excess(points: Iterable[SeriesPoint], kind: SolutionKind = SolutionKind.POLY) -> list[Fraction]:
    """
    Excess ratio of each member over the classical m^2 / N.

    Polynomial thresholds c + m^2 exceed it by c / N and matdot thresholds 2(c + m) - 1 by about 2c / N.
    """
    factor = 1 if kind is SolutionKind.POLY else 2
    return [Fraction(factor * point.c, point.N) for point in points]


def render_fraction(value: Fraction) -> str:
    return f"{float(value):.{DECIMAL_PLACES}f}"


def asymptotic_report(q: int, m: int, kind: SolutionKind, series: Iterable[SeriesPoint] = ()) -> dict:
    points = list(series)
    excesses = series_excess(points, kind=kind)
    return dict(
        q=q,
        m=m,
        mode=kind.value,
        epsilon=render_fraction(excess_limit(q, SolutionKind.POLY)),
        epsilon_exact=str(excess_limit(q, SolutionKind.POLY)),
        matdot_limit=render_fraction(excess_limit(q, SolutionKind.MATDOT)),
        limit=render_fraction(excess_limit(q, kind)),
        series=[
            dict(N=point.N, c=point.c, excess=render_fraction(excess), excess_exact=str(excess))
            for point, excess in zip(points, excesses)
        ],
    )
