"""Exact moments ``tr(T^m)`` by counting sign sequences, three independent ways.

``order`` is a positive integer ``n`` (the generator satisfies ``x^n = e``)
or ``None`` for a generator with no power relator.  A sign sequence
``(p_1, ..., p_m)`` contributes to the trace exactly when ``x^(p_1+...+p_m)``
is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

__all__ = [
    "ENUM_CAP",
    "EnumerationCapExceeded",
    "SequenceClassification",
    "exact_moment_dp",
    "exact_moment_binomial",
    "exact_moment_enum",
    "exact_moment",
    "classify_sequences",
]

ENUM_CAP = 24
_CHUNK_BITS = 20


class EnumerationCapExceeded(ValueError):
    """Raised when brute-force enumeration is asked for more than ``ENUM_CAP`` steps."""


def _check(m: int, order: Optional[int]) -> None:
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if order is not None and order < 1:
        raise ValueError(f"order must be a positive integer, got {order}")


def _check_cap(m: int) -> None:
    if m > ENUM_CAP:
        raise EnumerationCapExceeded(
            f"enumeration cap exceeded: m={m} > {ENUM_CAP}; use the dp or binomial method"
        )


def exact_moment_dp(m: int, order: Optional[int]) -> int:
    """Walk the exponent one step at a time and count returns to the identity."""
    _check(m, order)
    if order is None:
        # state i holds sum i - m
        states = [0] * (2 * m + 1)
        states[m] = 1
        for _ in range(m):
            nxt = [0] * len(states)
            for i, c in enumerate(states):
                if c:
                    nxt[i - 1] += c
                    nxt[i + 1] += c
            states = nxt
        return states[m]
    states = [0] * order
    states[0] = 1
    for _ in range(m):
        nxt = [0] * order
        for r, c in enumerate(states):
            if c:
                nxt[(r + 1) % order] += c
                nxt[(r - 1) % order] += c
        states = nxt
    return states[0]


def exact_moment_binomial(m: int, order: Optional[int]) -> int:
    """Sum ``comb(m, (m+s)/2)`` over the admissible exponent sums ``s``."""
    _check(m, order)
    total = 0
    for s in range(-m, m + 1, 2):
        if (s == 0) if order is None else (s % order == 0):
            total += comb(m, (m + s) // 2)
    return total


def _sequence_sums(m: int):
    """Yield arrays of exponent sums for every sign sequence, in chunks.

    Bit ``i`` of the index set means ``p_(i+1) = +1``.
    """
    total = 1 << m
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.uint32)
        yield idx, 2 * np.bitwise_count(idx).astype(np.int64) - m


def exact_moment_enum(m: int, order: Optional[int]) -> int:
    """Brute force over all ``2^m`` sign sequences (``m <= ENUM_CAP``)."""
    _check(m, order)
    _check_cap(m)
    count = 0
    for _, sums in _sequence_sums(m):
        hit = (sums == 0) if order is None else (sums % order == 0)
        count += int(np.count_nonzero(hit))
    return count


_METHODS = {
    "dp": exact_moment_dp,
    "binomial": exact_moment_binomial,
    "enum": exact_moment_enum,
}


def exact_moment(m: int, order: Optional[int], method: str = "dp") -> int:
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(_METHODS)}") from None
    return fn(m, order)


@dataclass(frozen=True)
class SequenceClassification:
    """Counts of the sign-sequence families used in the moment proofs.

    ``S0``: sequences summing to zero.  ``Wj``: sequences made of ``k``
    constant blocks of length ``n``.  ``Wj_prime``: members of ``Wj`` with
    as many ``+`` blocks as ``-`` blocks.  The ``Wj`` fields are ``None``
    when ``n`` does not divide ``m``.
    """

    m: int
    n: int
    k: Optional[int]
    count_S0: int
    count_Wj: Optional[int]
    count_Wj_prime: Optional[int]
    count_Wj_minus_prime: Optional[int]
    count_Wj_cap_S0: Optional[int]


def classify_sequences(m: int, n: int) -> SequenceClassification:
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    _check_cap(m)
    divides = m % n == 0
    k = m // n if divides else None
    block = np.uint32((1 << n) - 1)

    s0 = wj = wj_prime = wj_s0 = 0
    for idx, sums in _sequence_sums(m):
        zero = sums == 0
        s0 += int(np.count_nonzero(zero))
        if not divides:
            continue
        in_w = np.ones(idx.shape, dtype=bool)
        plus_blocks = np.zeros(idx.shape, dtype=np.int64)
        for b in range(k):
            chunk = (idx >> np.uint32(b * n)) & block
            in_w &= (chunk == 0) | (chunk == block)
            plus_blocks += chunk == block
        balanced = in_w & (2 * plus_blocks == k)
        wj += int(np.count_nonzero(in_w))
        wj_prime += int(np.count_nonzero(balanced))
        wj_s0 += int(np.count_nonzero(in_w & zero))

    if not divides:
        return SequenceClassification(m, n, None, s0, None, None, None, None)
    return SequenceClassification(m, n, k, s0, wj, wj_prime, wj - wj_prime, wj_s0)
