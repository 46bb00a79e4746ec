"""Controllability hierarchy for subgroups of products of finite abelian groups."""

from ._groupctl import (
    CapExceeded,
    GroupctlError,
    InternalInconsistency,
    ParseError,
    PreconditionFailed,
    Subgroup,
    Verdict,
    approximate_constant,
    engine_version,
    in_span,
    report,
    reproduce,
    reproduce_ids,
    torus_witness,
)

__all__ = [
    "CapExceeded",
    "GroupctlError",
    "InternalInconsistency",
    "ParseError",
    "PreconditionFailed",
    "Subgroup",
    "Verdict",
    "approximate_constant",
    "engine_version",
    "in_span",
    "report",
    "reproduce",
    "reproduce_ids",
    "torus_witness",
]
