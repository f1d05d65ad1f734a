"""Conformance checking between an implementation and a specification.

The central relation is cioco: after every specification trace and every
input, the implementation may only produce outputs the specification
allows. The exact decision procedure explores pairs of state subsets
reached by common traces; a bounded enumeration of specification traces
serves as an independent oracle. Trace inclusion is provided as a
stronger helper relation.

Inputs for which the specification has no continuation after a trace are
unconstrained by default (``unspecified="allow"``); ``"forbid"`` treats
any implementation output on them as a violation, which makes the
relation coincide with trace inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _core
from .errors import SignatureMismatchError
from .machine import (
    Component,
    Step,
    Trace,
    is_input_enabled,
    out_after,
    sorted_traces,
    states_after,
    traces_up_to,
    DEFAULT_TRACE_GUARD,
)

UNSPECIFIED_MODES = ("allow", "forbid")


@dataclass(frozen=True)
class Counterexample:
    """A specification trace after which the implementation over-produces.

    ``witness`` is executable by both machines, ``witness + (input |
    offending_output)`` only by the implementation.
    """

    witness: Trace
    input: str
    offending_output: str
    iut_outputs: frozenset[str]
    spec_outputs: frozenset[str]

    def full_trace(self) -> Trace:
        return self.witness + (Step(self.input, self.offending_output),)

    def to_dict(self) -> dict:
        return {
            "witness": [{"input": s.input, "output": s.output} for s in self.witness],
            "input": self.input,
            "offending_output": self.offending_output,
            "iut_outputs": sorted(self.iut_outputs),
            "spec_outputs": sorted(self.spec_outputs),
        }


@dataclass(frozen=True)
class CheckStats:
    explored_pairs: int
    max_depth: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of a conformance check.

    ``result`` is "pass", "fail" or "inconclusive"; a bounded check that
    finds no violation is inconclusive, never a silent pass.
    """

    result: str
    method: str  # "exact" | "bounded"
    counterexample: Counterexample | None = None
    stats: CheckStats | None = None
    depth: int | None = None
    warnings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    @property
    def failed(self) -> bool:
        return self.result == "fail"

    def to_dict(self) -> dict:
        ce = self.counterexample
        out = {
            "result": self.result,
            "method": self.method,
            "witness": None if ce is None else [
                {"input": s.input, "output": s.output} for s in ce.witness
            ],
            "input": None if ce is None else ce.input,
            "offending_output": None if ce is None else ce.offending_output,
            "iut_outputs": None if ce is None else sorted(ce.iut_outputs),
            "spec_outputs": None if ce is None else sorted(ce.spec_outputs),
            "stats": None
            if self.stats is None
            else {
                "explored_pairs": self.stats.explored_pairs,
                "max_depth": self.stats.max_depth,
            },
        }
        if self.method == "bounded":
            out["depth"] = self.depth
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def _require_same_signature(iut: Component, spec: Component) -> None:
    if iut.inputs != spec.inputs or iut.outputs != spec.outputs:
        raise SignatureMismatchError(
            f"'{iut.name}' and '{spec.name}' do not share a signature: "
            f"inputs {sorted(iut.inputs)} vs {sorted(spec.inputs)}, "
            f"outputs {sorted(iut.outputs)} vs {sorted(spec.outputs)}"
        )


def _mode_strict(unspecified: str) -> bool:
    if unspecified not in UNSPECIFIED_MODES:
        raise ValueError(f"unspecified must be one of {UNSPECIFIED_MODES}, got {unspecified!r}")
    return unspecified == "forbid"


def _input_enabled_warnings(iut: Component) -> tuple[str, ...]:
    if is_input_enabled(iut):
        return ()
    return (f"implementation '{iut.name}' is not input-enabled",)


def _decode_counterexample(raw, label_names) -> Counterexample:
    steps, i, o, iut_outs, spec_outs = raw
    return Counterexample(
        witness=tuple(Step(label_names[a], label_names[b]) for (a, b) in steps),
        input=label_names[i],
        offending_output=label_names[o],
        iut_outputs=frozenset(label_names[x] for x in iut_outs),
        spec_outputs=frozenset(label_names[x] for x in spec_outs),
    )


def check_cioco_exact(iut: Component, spec: Component, unspecified: str = "allow") -> Verdict:
    """Decide cioco exactly.

    Breadth-first exploration of subset pairs reached by common traces
    guarantees a minimal-length witness with deterministic lexicographic
    tie-breaking. Termination follows from the finite number of subset
    pairs. Traces of the specification that the implementation cannot
    execute need no exploration: the implementation produces nothing
    after them.
    """
    _require_same_signature(iut, spec)
    strict = _mode_strict(unspecified)
    warnings = _input_enabled_warnings(iut)

    enc_iut, enc_spec, label_names, label_ids = _core.encode_pair(iut, spec)
    input_ids = frozenset(label_ids[x] for x in spec.inputs)
    raw, (explored, max_depth) = _core.cioco_bfs(enc_iut, enc_spec, input_ids, strict)
    stats = CheckStats(explored, max_depth)

    if raw is None:
        return Verdict("pass", "exact", stats=stats, warnings=warnings)
    return Verdict(
        "fail",
        "exact",
        counterexample=_decode_counterexample(raw, label_names),
        stats=stats,
        warnings=warnings,
    )


def check_cioco_bounded(
    iut: Component,
    spec: Component,
    k: int,
    unspecified: str = "allow",
    guard: int = DEFAULT_TRACE_GUARD,
) -> Verdict:
    """Check cioco over all specification traces of length at most ``k``.

    Independent of the exact decision procedure: enumerates traces
    explicitly and compares output sets step by step. Finding no
    violation up to the bound is reported as inconclusive.
    """
    _require_same_signature(iut, spec)
    strict = _mode_strict(unspecified)
    warnings = _input_enabled_warnings(iut)

    inputs = sorted(spec.inputs)
    checked = 0
    for tr in sorted_traces(traces_up_to(spec, k, guard=guard)):
        checked += 1
        if not states_after(iut, tr):
            continue
        for i in inputs:
            iut_outs = out_after(iut, tr, i)
            if not iut_outs:
                continue
            spec_outs = out_after(spec, tr, i)
            if not spec_outs and not strict:
                continue
            if not iut_outs <= spec_outs:
                ce = Counterexample(
                    witness=tr,
                    input=i,
                    offending_output=min(iut_outs - spec_outs),
                    iut_outputs=iut_outs,
                    spec_outputs=spec_outs,
                )
                return Verdict(
                    "fail",
                    "bounded",
                    counterexample=ce,
                    stats=CheckStats(checked, len(tr)),
                    depth=k,
                    warnings=warnings,
                )
    return Verdict(
        "inconclusive",
        "bounded",
        stats=CheckStats(checked, k),
        depth=k,
        warnings=warnings,
    )


def check_trace_inclusion(c1: Component, c2: Component) -> Verdict:
    """Decide Trace(c1) <= Trace(c2) exactly.

    On failure the counterexample's full trace is a shortest sequence
    executable by c1 but not by c2.
    """
    _require_same_signature(c1, c2)
    enc1, enc2, label_names, _ = _core.encode_pair(c1, c2)
    raw, (explored, max_depth) = _core.inclusion_bfs(enc1, enc2)
    stats = CheckStats(explored, max_depth)
    if raw is None:
        return Verdict("pass", "exact", stats=stats)
    return Verdict(
        "fail",
        "exact",
        counterexample=_decode_counterexample(raw, label_names),
        stats=stats,
    )
