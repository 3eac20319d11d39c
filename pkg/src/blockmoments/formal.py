"""Formal sums over the powers of one generator.

A :class:`FormalSum` ``{s: c}`` stands for ``sum(c * x**s)``; exponent 0 is
the identity.  Coefficients are exact Python integers.
"""

from __future__ import annotations

from collections.abc import Mapping
from math import comb
from typing import Iterator

__all__ = [
    "FormalSum",
    "expand_block_power",
    "reduce_mod_order",
    "canonical_trace",
    "adjoint",
]


class FormalSum(Mapping):
    """Immutable, finitely supported map from exponent to integer coefficient.

    Zero coefficients are dropped on construction, so equal sums compare and
    hash equal.  Missing exponents read as 0.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        coeffs = {}
        for s, c in dict(coefficients or {}).items():
            if c:
                coeffs[int(s)] = int(c)
        self._coeffs = dict(sorted(coeffs.items()))

    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __contains__(self, exponent):
        return exponent in self._coeffs

    def __eq__(self, other):
        if isinstance(other, FormalSum):
            return self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self == FormalSum(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        return f"FormalSum({self._coeffs!r})"

    @property
    def mass(self) -> int:
        return sum(self._coeffs.values())

    def to_json(self) -> dict[str, str]:
        return {str(s): str(c) for s, c in self._coeffs.items()}


def expand_block_power(m: int) -> FormalSum:
    """Collected expansion of ``(x + x^-1)^m``.

    The coefficient at ``s`` counts the sign sequences of length ``m`` summing
    to ``s``, i.e. ``comb(m, (m + s) // 2)``.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return FormalSum({2 * j - m: comb(m, j) for j in range(m + 1)})


def reduce_mod_order(a: Mapping[int, int], n: int) -> FormalSum:
    """Fold exponents into residues ``0..n-1`` using ``x^n = e``."""
    if n < 1:
        raise ValueError(f"order must be a positive integer, got {n}")
    out: dict[int, int] = {}
    for s, c in a.items():
        r = s % n
        out[r] = out.get(r, 0) + c
    return FormalSum(out)


def canonical_trace(a: Mapping[int, int]) -> int:
    return FormalSum(a)[0]


def adjoint(a: Mapping[int, int]) -> FormalSum:
    # integer coefficients: conjugation is the identity
    return FormalSum({-s: c for s, c in a.items()})


def _convolve(a: Mapping[int, int], b: Mapping[int, int]) -> FormalSum:
    # product in the free cyclic group algebra; test utility only
    out: dict[int, int] = {}
    for s, c in a.items():
        for t, d in b.items():
            out[s + t] = out.get(s + t, 0) + c * d
    return FormalSum(out)
