"""Moments of block operators ``x + x^-1`` in group von Neumann algebras.

Closed-form moment formulas for presented groups sit next to exact
sign-sequence counts, so the two can be audited against each other.
"""

__version__ = "0.1.0"

from .analysis import (
    AuditReport,
    DistributionComparison,
    MomentRecord,
    audit,
    compare_distributions,
    moment_record,
    moment_series,
)
from .closedform import ClosedFormCase, ClosedMoment, binomial, central_bracket, closed_moment
from .formal import FormalSum, adjoint, canonical_trace, expand_block_power, reduce_mod_order
from .oracle import (
    EnumerationCapExceeded,
    SequenceClassification,
    classify_sequences,
    exact_moment,
    exact_moment_binomial,
    exact_moment_dp,
    exact_moment_enum,
)
from .presentation import (
    GeneratorSpec,
    Letter,
    ParseError,
    Presentation,
    PresentationError,
    Word,
    concat,
    cyclic_reduce,
    detect_power_order,
    free_reduce,
    invert,
    parse_presentation,
    parse_word,
    serialize_presentation,
    serialize_word,
)
