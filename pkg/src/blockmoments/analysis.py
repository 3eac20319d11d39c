"""Moment series, closed-form audits and identical-distribution checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .closedform import ClosedFormCase, closed_moment
from .oracle import exact_moment, exact_moment_dp
from .presentation import GeneratorSpec

__all__ = [
    "METHODS",
    "MomentRecord",
    "AuditReport",
    "DistributionComparison",
    "moment_record",
    "moment_series",
    "audit",
    "compare_distributions",
    "default_compare_max_m",
]

METHODS = ("closed", "dp", "binomial", "enum", "all")


@dataclass(frozen=True)
class MomentRecord:
    m: int
    order: Optional[int]
    closed_value: Optional[int] = None
    exact_value: Optional[int] = None
    case: Optional[ClosedFormCase] = None
    warning: Optional[str] = None

    @property
    def agree(self) -> Optional[bool]:
        if self.closed_value is None or self.exact_value is None:
            return None
        return self.closed_value == self.exact_value

    @property
    def case_label(self) -> Optional[str]:
        return None if self.case is None else self.case.label


@dataclass(frozen=True)
class AuditReport:
    spec: GeneratorSpec
    max_m: int
    records: tuple[MomentRecord, ...]

    @property
    def first_disagreement(self) -> Optional[int]:
        return next((r.m for r in self.records if not r.agree), None)

    @property
    def agree_count(self) -> int:
        return sum(1 for r in self.records if r.agree)

    @property
    def disagree_count(self) -> int:
        return len(self.records) - self.agree_count


@dataclass(frozen=True)
class DistributionComparison:
    left: GeneratorSpec
    right: GeneratorSpec
    mode: str
    identically_distributed: bool
    max_m: Optional[int] = None
    witness: Optional[int] = None


def moment_record(spec: GeneratorSpec, m: int, method: str = "all") -> MomentRecord:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return _record(m, spec.order, method)


def _record(m: int, order: Optional[int], method: str) -> MomentRecord:
    closed = exact = case = warning = None
    if method in ("closed", "all"):
        closed, case, warning = closed_moment(m, order)
    if method != "closed":
        exact = exact_moment(m, order, "dp" if method == "all" else method)
    return MomentRecord(m, order, closed, exact, case, warning)


def moment_series(spec: GeneratorSpec, max_m: int, method: str = "all") -> list[MomentRecord]:
    """One record per ``m = 0..max_m``.

    ``method="all"`` fills both the closed-form and exact (dp) columns; any
    other method fills only its own column.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if max_m < 0:
        raise ValueError(f"max_m must be nonnegative, got {max_m}")
    return [_record(m, spec.order, method) for m in range(max_m + 1)]


def audit(spec: GeneratorSpec, max_m: int) -> AuditReport:
    return AuditReport(spec, max_m, tuple(moment_series(spec, max_m, "all")))


def default_compare_max_m(left: GeneratorSpec, right: GeneratorSpec) -> int:
    finite = [s.order for s in (left, right) if s.order is not None]
    return 2 * max(finite) if finite else 20


def compare_distributions(
    left: GeneratorSpec,
    right: GeneratorSpec,
    mode: str = "oracle",
    max_m: Optional[int] = None,
) -> DistributionComparison:
    """Decide whether ``T_left`` and ``T_right`` are identically distributed.

    ``mode="theorem"`` applies the published criterion: equal finite orders,
    or both orders infinite.  A finite order against an infinite one is
    reported as not identical.  ``mode="oracle"`` compares exact moments for
    ``m = 1..max_m`` and returns the first differing ``m`` as a witness.
    """
    if mode == "theorem":
        verdict = left.order == right.order
        return DistributionComparison(left, right, mode, verdict)
    if mode != "oracle":
        raise ValueError(f"unknown mode {mode!r}; expected 'theorem' or 'oracle'")
    if max_m is None:
        max_m = default_compare_max_m(left, right)
    if max_m < 1:
        raise ValueError(f"max_m must be positive in oracle mode, got {max_m}")
    for m in range(1, max_m + 1):
        if exact_moment_dp(m, left.order) != exact_moment_dp(m, right.order):
            return DistributionComparison(left, right, mode, False, max_m, m)
    return DistributionComparison(left, right, mode, True, max_m)
