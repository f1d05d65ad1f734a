"""Synchronous parallel composition of components and composition trees.

Two composed components run independently or jointly: a step is either
one side reacting alone (its output not consumable by the other), or one
side's output being synchronously consumed as the other side's input,
with the second reaction observed. Synchronized intermediates are hidden.

Only the reachable part of the state product is materialized, and every
composed transition records which rule produced it, including hidden
intermediates; projection is built on those records.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _core
from .errors import ComposabilityError
from .machine import Component, Step, Transition


@dataclass(frozen=True)
class Leaf:
    name: str
    component: Component


@dataclass(frozen=True)
class Par:
    left: "SystemExpr"
    right: "SystemExpr"


SystemExpr = Leaf | Par


def subcomponents(expr: SystemExpr) -> frozenset[str]:
    """Names of the basic components a system expression is built from."""
    if isinstance(expr, Leaf):
        return frozenset([expr.name])
    return subcomponents(expr.left) | subcomponents(expr.right)


def leaf_components(expr: SystemExpr) -> dict[str, Component]:
    if isinstance(expr, Leaf):
        return {expr.name: expr.component}
    table = leaf_components(expr.left)
    table.update(leaf_components(expr.right))
    return table


@dataclass(frozen=True)
class CompositionReport:
    """Alphabet intersections governing whether and how a pair composes."""

    o1_cap_i2: frozenset[str]
    o2_cap_i1: frozenset[str]
    i1_cap_i2: frozenset[str]
    o1_cap_o2: frozenset[str]
    #: both directions of synchronization are possible (each side's outputs
    #: intersect the other side's inputs)
    synchronizable: bool
    #: inputs are disjoint and outputs are disjoint across the pair
    alphabets_disjoint: bool

    def to_dict(self) -> dict:
        return {
            "o1_cap_i2": sorted(self.o1_cap_i2),
            "o2_cap_i1": sorted(self.o2_cap_i1),
            "i1_cap_i2": sorted(self.i1_cap_i2),
            "o1_cap_o2": sorted(self.o1_cap_o2),
            "synchronizable": self.synchronizable,
            "alphabets_disjoint": self.alphabets_disjoint,
        }


def signature_check(c1: Component, c2: Component) -> CompositionReport:
    o1_i2 = c1.outputs & c2.inputs
    o2_i1 = c2.outputs & c1.inputs
    i1_i2 = c1.inputs & c2.inputs
    o1_o2 = c1.outputs & c2.outputs
    return CompositionReport(
        o1_cap_i2=frozenset(o1_i2),
        o2_cap_i1=frozenset(o2_i1),
        i1_cap_i2=frozenset(i1_i2),
        o1_cap_o2=frozenset(o1_o2),
        synchronizable=bool(o1_i2) and bool(o2_i1),
        alphabets_disjoint=not i1_i2 and not o1_o2,
    )


def composed_alphabets(c1: Component, c2: Component) -> tuple[frozenset[str], frozenset[str]]:
    outputs = c1.outputs | c2.outputs
    inputs = (c1.inputs | c2.inputs) - outputs
    return inputs, outputs


def _pair_name(existing: set[str], left: str, right: str) -> str:
    name = f"({left},{right})"
    while name in existing:  # distinct pairs may render identically
        name += "~"
    return name


#: Per-transition provenance: which rule produced it and, for the two
#: feeding rules, the hidden intermediate label.
Provenance = tuple[int, str | None]


@dataclass(frozen=True)
class PairComposition:
    component: Component
    provenance: dict[Transition, frozenset[Provenance]]
    report: CompositionReport
    left_states: dict[str, str]   # composed state -> left state
    right_states: dict[str, str]  # composed state -> right state


def compose_pair(
    c1: Component, c2: Component, relax: bool = False, name: str | None = None
) -> PairComposition:
    """Reachable synchronous product of two components, with provenance.

    Unless ``relax`` is set, requires both directions of synchronization
    to be possible at the signature level.
    """
    report = signature_check(c1, c2)
    if not report.synchronizable and not relax:
        raise ComposabilityError(
            f"components '{c1.name}' and '{c2.name}' cannot synchronize in both "
            f"directions (outputs1&inputs2={sorted(report.o1_cap_i2)}, "
            f"outputs2&inputs1={sorted(report.o2_cap_i1)}); pass relax to force"
        )

    enc1, enc2, label_names, label_ids = _core.encode_pair(c1, c2)
    inputs, outputs = composed_alphabets(c1, c2)
    composed_input_ids = frozenset(label_ids[x] for x in inputs)

    pairs, raw = _core.product_closure(enc1, enc2, composed_input_ids)

    state_names: list[str] = []
    taken: set[str] = set()
    left_states: dict[str, str] = {}
    right_states: dict[str, str] = {}
    for (s1, s2) in pairs:
        left = enc1.state_names[s1]
        right = enc2.state_names[s2]
        sname = _pair_name(taken, left, right)
        taken.add(sname)
        state_names.append(sname)
        left_states[sname] = left
        right_states[sname] = right

    provenance: dict[Transition, set[Provenance]] = {}
    for (src, i, o, dst, rule, mid) in raw:
        t = Transition(state_names[src], label_names[i], label_names[o], state_names[dst])
        mid_label = None if mid == _core.NO_LABEL else label_names[mid]
        provenance.setdefault(t, set()).add((rule, mid_label))

    component = Component(
        name=name or f"({c1.name}*{c2.name})",
        states=frozenset(state_names),
        initial=state_names[0],
        inputs=inputs,
        outputs=outputs,
        transitions=frozenset(provenance),
    )
    return PairComposition(
        component=component,
        provenance={t: frozenset(p) for t, p in provenance.items()},
        report=report,
        left_states=left_states,
        right_states=right_states,
    )


def synchronous_parallel(c1: Component, c2: Component, relax: bool = False) -> Component:
    """The synchronous parallel composition of two components."""
    return compose_pair(c1, c2, relax=relax).component


#: One way a composed transition decomposes into leaf steps, aligned with
#: the build's leaf order; None marks a leaf that does not move.
Decomposition = tuple[Step | None, ...]


@dataclass(frozen=True)
class SystemBuild:
    """A fully built system expression.

    ``decompositions`` maps every transition of the composed component to
    all ways it can be attributed to leaf-component steps.
    """

    expr: SystemExpr
    component: Component
    leaves: tuple[str, ...]
    decompositions: dict[Transition, frozenset[Decomposition]]
    reports: tuple[tuple[str, CompositionReport], ...]  # (node path, report)

    def leaf_component(self, name: str) -> Component:
        return leaf_components(self.expr)[name]


def build_system_full(expr: SystemExpr, relax: bool = False) -> SystemBuild:
    """Fold the composition over the expression tree, keeping provenance.

    Leaf names must be unique. Composability errors carry the path of the
    offending node ("left", "right.left", ... relative to the root).
    """
    names = _collect_leaf_names(expr)
    duplicates = {n for n in names if names.count(n) > 1}
    if duplicates:
        raise ComposabilityError(f"duplicate leaf names in expression: {sorted(duplicates)}")
    return _build(expr, relax, path="")


def _collect_leaf_names(expr: SystemExpr) -> list[str]:
    if isinstance(expr, Leaf):
        return [expr.name]
    return _collect_leaf_names(expr.left) + _collect_leaf_names(expr.right)


def _build(expr: SystemExpr, relax: bool, path: str) -> SystemBuild:
    if isinstance(expr, Leaf):
        decomps = {
            t: frozenset([(Step(t.input, t.output),)]) for t in expr.component.transitions
        }
        return SystemBuild(
            expr=expr,
            component=expr.component,
            leaves=(expr.name,),
            decompositions=decomps,
            reports=(),
        )

    left = _build(expr.left, relax, path + ("." if path else "") + "left")
    right = _build(expr.right, relax, path + ("." if path else "") + "right")
    try:
        pair = compose_pair(left.component, right.component, relax=relax)
    except ComposabilityError as exc:
        raise ComposabilityError(str(exc), path=path or "root") from None

    n_left = len(left.leaves)
    n_right = len(right.leaves)
    left_silent: Decomposition = (None,) * n_left
    right_silent: Decomposition = (None,) * n_right

    decomps: dict[Transition, set[Decomposition]] = {}
    for t, provs in pair.provenance.items():
        ls, rs = pair.left_states[t.source], pair.right_states[t.source]
        lt, rt = pair.left_states[t.target], pair.right_states[t.target]
        ways = decomps.setdefault(t, set())
        for rule, mid in provs:
            if rule == _core.LEFT_ONLY:
                inner = Transition(ls, t.input, t.output, lt)
                for d in left.decompositions[inner]:
                    ways.add(d + right_silent)
            elif rule == _core.RIGHT_ONLY:
                inner = Transition(rs, t.input, t.output, rt)
                for d in right.decompositions[inner]:
                    ways.add(left_silent + d)
            elif rule == _core.LEFT_FEEDS_RIGHT:
                inner_l = Transition(ls, t.input, mid, lt)
                inner_r = Transition(rs, mid, t.output, rt)
                for dl in left.decompositions[inner_l]:
                    for dr in right.decompositions[inner_r]:
                        ways.add(dl + dr)
            else:  # RIGHT_FEEDS_LEFT
                inner_r = Transition(rs, t.input, mid, rt)
                inner_l = Transition(ls, mid, t.output, lt)
                for dl in left.decompositions[inner_l]:
                    for dr in right.decompositions[inner_r]:
                        ways.add(dl + dr)

    reports = left.reports + right.reports + ((path or "root", pair.report),)
    return SystemBuild(
        expr=expr,
        component=pair.component,
        leaves=left.leaves + right.leaves,
        decompositions={t: frozenset(w) for t, w in decomps.items()},
        reports=reports,
    )


def build_system(expr: SystemExpr, relax: bool = False) -> Component:
    """The composed component denoted by a system expression."""
    return build_system_full(expr, relax=relax).component
