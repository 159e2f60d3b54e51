"""
Exact slopes and slope intervals

A direction is the slope of a line to the vertical axis: the vertical
direction is 0 and the horizontal one is the point at infinity. Interval
arithmetic runs on Fractions only; infinity never enters an interval since
every radius-1 automaton has its non-expansive directions in [-1, 1].
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class DirectionError(ValueError):
    """Raised on non-rational input or a direction outside the covered range"""


def rational(value) -> Fraction:
    """Exact rational from an int, a Fraction or a 'p/q' string; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise DirectionError(f"{value!r} is not an exact rational")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DirectionError(f"{value!r} is not an exact rational")


def fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Slope:
    """A point of the projective line; value None is the horizontal direction."""
    value: Optional[Fraction] = None

    @property
    def infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return 'inf' if self.infinite else fraction_text(self.value)

    @classmethod
    def parse(cls, text: str) -> 'Slope':
        if text.strip().lower() in ('inf', 'infinity', '∞'):
            return cls(None)
        return cls(rational(text.strip()))


HORIZONTAL = Slope(None)
VERTICAL = Slope(Fraction(0))


@dataclass(frozen=True)
class SlopeInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DirectionError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> 'SlopeInterval':
        x = rational(x)
        return cls(x, x)

    @property
    def diameter(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def includes(self, other: 'SlopeInterval') -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def scale(self, factor: Rational) -> 'SlopeInterval':
        a, b = self.lo * factor, self.hi * factor
        return SlopeInterval(min(a, b), max(a, b))

    def shift(self, offset: Rational) -> 'SlopeInterval':
        return SlopeInterval(self.lo + offset, self.hi + offset)

    def to_dict(self) -> dict:
        return {'lo': fraction_text(self.lo), 'hi': fraction_text(self.hi)}

    def __str__(self) -> str:
        return f"[{fraction_text(self.lo)}, {fraction_text(self.hi)}]"


UNIT = SlopeInterval(Fraction(-1), Fraction(1))


def ne_map(interval: SlopeInterval, S: int, T: int, Q: int) -> SlopeInterval:
    """
    Non-expansive directions of a simulating automaton from those of the simulated one

    (Q + S * I) / T: shifting the simulated automaton by Q adds Q, taking its
    T-th power divides by T.

    Args:
        interval: Directions of the simulated automaton
        S: Colony width
        T: Work period
        Q: Shift of the simulation

    Returns:
        The image interval, exact
    """
    if T <= 0 or S <= 0:
        raise DirectionError(f"simulation needs S, T > 0 (got S={S}, T={T})")
    return interval.scale(S).shift(Q).scale(Fraction(1, T))


def nested_ne_interval(levels: Sequence[Tuple[int, int, int]]) -> SlopeInterval:
    """
    Directions of level 0 of a tower of simulations with Q_i = D_i * S_i

    ``levels`` lists (S_i, T_i, D_i) from level 0 upwards; the fold starts
    from [-1, 1] at the top. The result has diameter 2 * prod S_i / T_i.
    """
    interval = UNIT
    for S, T, D in reversed(levels):
        interval = ne_map(interval, S, T, D * S)
    return interval


def ne_union(parts: Iterable[Union[SlopeInterval, Rational, Iterable[Rational]]]) -> Tuple[SlopeInterval, ...]:
    """
    Normalized union: sorted pairwise disjoint closed intervals

    Parts are intervals, single rationals or collections of rationals. An
    empty result corresponds to a finite subshift.
    """
    intervals: List[SlopeInterval] = []
    for part in parts:
        if isinstance(part, SlopeInterval):
            intervals.append(part)
        elif isinstance(part, (int, Fraction, str)):
            intervals.append(SlopeInterval.point(part))
        else:
            intervals.extend(SlopeInterval.point(x) for x in part)
    intervals.sort(key=lambda i: (i.lo, i.hi))
    merged: List[SlopeInterval] = []
    for interval in intervals:
        if merged and interval.lo <= merged[-1].hi:
            last = merged.pop()
            interval = SlopeInterval(last.lo, max(last.hi, interval.hi))
        merged.append(interval)
    return tuple(merged)


def union_report(union: Sequence[SlopeInterval]) -> dict:
    return {
        'intervals': [i.to_dict() for i in union],
        'empty': not union,
        'note': 'no non-expansive direction: the subshift is finite' if not union else None,
    }


def slope_to_circle(slope: Slope) -> Tuple[float, float]:
    """One of the two unit-circle points of a direction (floats, for output only)."""
    if slope.infinite:
        return 1.0, 0.0
    x = float(slope.value)
    norm = np.hypot(x, 1.0)
    return x / norm, 1.0 / norm


def circle_to_slope(u: float, v: float, max_denominator: int = 10 ** 9) -> Slope:
    """Direction of a point of the unit circle; opposite points give the same slope."""
    if np.isclose(v, 0.0):
        return HORIZONTAL
    return Slope(Fraction(u / v).limit_denominator(max_denominator))
