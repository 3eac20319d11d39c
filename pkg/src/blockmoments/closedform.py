"""Closed-form moment formulas for the block operator ``T = x + x^-1``.

``closed_moment`` reproduces the published case split as stated.  For
``m > n`` those formulas disagree with the exact trace in many cases.  The
disagreement is reported by :mod:`blockmoments.analysis` and never patched here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

__all__ = [
    "FREE",
    "BELOW_ORDER",
    "AT_OR_ABOVE_ORDER",
    "ClosedFormCase",
    "ClosedMoment",
    "binomial",
    "central_bracket",
    "closed_moment",
]

FREE = "free"
BELOW_ORDER = "below_order"
AT_OR_ABOVE_ORDER = "at_or_above_order"

ORDER_ONE_WARNING = "order 1 lies outside the closed-form hypothesis (n >= 2)"


@dataclass(frozen=True)
class ClosedFormCase:
    label: str
    k1: Optional[int] = None
    k2: Optional[int] = None

    def __post_init__(self):
        if self.label not in (FREE, BELOW_ORDER, AT_OR_ABOVE_ORDER):
            raise ValueError(f"unknown case label {self.label!r}")
        if (self.label == AT_OR_ABOVE_ORDER) != (self.k1 is not None):
            raise ValueError("(k1, k2) is required exactly for the at_or_above_order case")


class ClosedMoment(NamedTuple):
    value: int
    case: ClosedFormCase
    warning: Optional[str] = None


def binomial(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(a, b)


def central_bracket(t: int) -> int:
    """``comb(t, t/2)`` for even ``t``, 0 for odd ``t``."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return math.comb(t, t // 2) if t % 2 == 0 else 0


def closed_moment(m: int, order: Optional[int]) -> ClosedMoment:
    """Evaluate the closed-form value of ``tr(T^m)`` for a generator of the given order.

    ``order=None`` is the free case.  For ``m >= n`` with ``m = k1*n + k2``
    the value is ``2**k1 - bracket(k1) + bracket(m)``.  ``n = 1`` is evaluated
    the same way and flagged with a warning.

    >>> closed_moment(6, 3).value
    22
    >>> closed_moment(8, 4).value
    72
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if order is None:
        return ClosedMoment(central_bracket(m), ClosedFormCase(FREE))
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order}")
    warning = ORDER_ONE_WARNING if order == 1 else None
    if m < order:
        return ClosedMoment(central_bracket(m), ClosedFormCase(BELOW_ORDER), warning)
    k1, k2 = divmod(m, order)
    value = (2**k1 - central_bracket(k1)) + central_bracket(m)
    return ClosedMoment(value, ClosedFormCase(AT_OR_ABOVE_ORDER, k1, k2), warning)
