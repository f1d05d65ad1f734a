"""Composition and conformance checking for finite input/output state machines."""

from ._core import BACKEND
from .certify import (
    Assumption,
    CompositionalReport,
    certify_by_parts,
    certify_in_context,
    localize_fault,
)
from .compose import (
    CompositionReport,
    Leaf,
    Par,
    SystemBuild,
    SystemExpr,
    build_system,
    build_system_full,
    signature_check,
    subcomponents,
    synchronous_parallel,
)
from .conform import (
    CheckStats,
    Counterexample,
    Verdict,
    check_cioco_bounded,
    check_cioco_exact,
    check_trace_inclusion,
)
from .errors import (
    ComposabilityError,
    FsmCheckError,
    NotATraceError,
    ParseError,
    ShapeMismatchError,
    SignatureMismatchError,
    TraceLimitError,
    UnknownInputError,
    UnknownTargetError,
)
from .machine import (
    DEFAULT_TRACE_GUARD,
    Component,
    Issue,
    Step,
    Trace,
    Transition,
    ValidationReport,
    complete,
    format_trace,
    has_trace,
    is_input_enabled,
    out_after,
    sorted_traces,
    states_after,
    step,
    trace,
    traces_up_to,
    validate_component,
)
from .project import (
    ContextComponent,
    ProjectedTraceSet,
    component_in_context,
    component_in_context_tree,
    paired_projections,
    project_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Assumption",
    "CheckStats",
    "Component",
    "CompositionReport",
    "CompositionalReport",
    "ComposabilityError",
    "ContextComponent",
    "Counterexample",
    "DEFAULT_TRACE_GUARD",
    "FsmCheckError",
    "Issue",
    "Leaf",
    "NotATraceError",
    "Par",
    "ParseError",
    "ProjectedTraceSet",
    "ShapeMismatchError",
    "SignatureMismatchError",
    "Step",
    "SystemBuild",
    "SystemExpr",
    "Trace",
    "TraceLimitError",
    "Transition",
    "UnknownInputError",
    "UnknownTargetError",
    "ValidationReport",
    "Verdict",
    "build_system",
    "build_system_full",
    "certify_by_parts",
    "certify_in_context",
    "check_cioco_bounded",
    "check_cioco_exact",
    "check_trace_inclusion",
    "complete",
    "component_in_context",
    "component_in_context_tree",
    "format_trace",
    "has_trace",
    "is_input_enabled",
    "localize_fault",
    "out_after",
    "paired_projections",
    "project_trace",
    "signature_check",
    "sorted_traces",
    "states_after",
    "step",
    "subcomponents",
    "synchronous_parallel",
    "trace",
    "traces_up_to",
    "validate_component",
]
