"""Projection of composed behaviour onto one basic component.

A composed step is attributed to the leaves that moved in it: a step one
side performed alone contributes that step to its owner and nothing to
the other; a synchronized step contributes the hidden half to each side.
Projection of a trace replays it over all runs of the composed system
and collects, per run and per attribution, the sequence of steps the
target component performed.

The component-in-context is the machine whose traces are exactly the
projections of all composed traces. Two constructions are provided: a
finite one (relabel composed transitions to target contributions, then
eliminate silent steps by forward closure) and a depth-bounded
trace-tree whose states literally are projected histories. The tree is
the oracle for the finite construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compose import Leaf, SystemBuild, SystemExpr, build_system_full
from .errors import NotATraceError, TraceLimitError, UnknownTargetError
from .machine import Component, Step, Trace, DEFAULT_TRACE_GUARD


@dataclass(frozen=True)
class ProjectedTraceSet:
    target: str
    traces: frozenset[Trace]


@dataclass(frozen=True)
class ContextComponent:
    """A component restricted to the behaviour it shows inside a system."""

    component: Component
    provenance: str  # "finite" | "tree(k)"


def _as_build(system: SystemExpr | SystemBuild, relax: bool) -> SystemBuild:
    if isinstance(system, SystemBuild):
        return system
    return build_system_full(system, relax=relax)


def _leaf_index(build: SystemBuild, target: str) -> int:
    try:
        return build.leaves.index(target)
    except ValueError:
        raise UnknownTargetError(
            f"'{target}' is not a leaf of the expression (leaves: {list(build.leaves)})"
        ) from None


def _replay_index(build: SystemBuild):
    """source -> (input, output) -> [(target, decomposition ways)]."""
    index: dict[str, dict[tuple[str, str], list]] = {}
    for t, ways in build.decompositions.items():
        index.setdefault(t.source, {}).setdefault((t.input, t.output), []).append(
            (t.target, ways)
        )
    return index


def project_trace(
    system: SystemExpr | SystemBuild,
    tr: Trace,
    target: str,
    relax: bool = False,
) -> ProjectedTraceSet:
    """All target-component step sequences a composed trace can exercise."""
    build = _as_build(system, relax)
    j = _leaf_index(build, target)
    index = _replay_index(build)

    frontier: set[tuple[str, Trace]] = {(build.component.initial, ())}
    for n, s in enumerate(tr):
        key = (s.input, s.output)
        nxt: set[tuple[str, Trace]] = set()
        for (state, proj) in frontier:
            for target_state, ways in index.get(state, {}).get(key, ()):
                for way in ways:
                    contributed = way[j]
                    nxt.add((target_state, proj + (contributed,) if contributed else proj))
        if not nxt:
            raise NotATraceError(
                f"step {n} ({s}) is not executable by the composed system here"
            )
        frontier = nxt
    return ProjectedTraceSet(target=target, traces=frozenset(p for (_, p) in frontier))


def paired_projections(
    system: SystemExpr | SystemBuild, tr: Trace, relax: bool = False
) -> frozenset[tuple[Trace, ...]]:
    """Per-run projections onto every leaf at once, aligned with build.leaves.

    Each member is one consistent attribution of the whole trace, so the
    component traces it contains come from a single composed run.
    """
    build = _as_build(system, relax)
    n_leaves = len(build.leaves)
    index = _replay_index(build)
    empty: tuple[Trace, ...] = ((),) * n_leaves
    frontier: set[tuple[str, tuple[Trace, ...]]] = {(build.component.initial, empty)}
    for n, s in enumerate(tr):
        key = (s.input, s.output)
        nxt: set[tuple[str, tuple[Trace, ...]]] = set()
        for (state, projs) in frontier:
            for target_state, ways in index.get(state, {}).get(key, ()):
                for way in ways:
                    extended = tuple(
                        projs[m] + (way[m],) if way[m] else projs[m]
                        for m in range(n_leaves)
                    )
                    nxt.add((target_state, extended))
        if not nxt:
            raise NotATraceError(
                f"step {n} ({s}) is not executable by the composed system here"
            )
        frontier = nxt
    return frozenset(projs for (_, projs) in frontier)


def _relabelled_edges(build: SystemBuild, j: int):
    """Split composed transitions into target-labelled and silent edges."""
    labelled: dict[str, dict[Step, set[str]]] = {}
    silent: dict[str, set[str]] = {}
    for t, ways in build.decompositions.items():
        for way in ways:
            contributed = way[j]
            if contributed is None:
                silent.setdefault(t.source, set()).add(t.target)
            else:
                labelled.setdefault(t.source, {}).setdefault(contributed, set()).add(t.target)
    return labelled, silent


def _silent_closure(states, silent: dict[str, set[str]]) -> frozenset[str]:
    seen = set(states)
    stack = list(states)
    while stack:
        s = stack.pop()
        for t in silent.get(s, ()):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def component_in_context(
    system: SystemExpr | SystemBuild, target: str, relax: bool = False
) -> ContextComponent:
    """Finite construction of the projection of a system on one leaf.

    Relabel every composed transition by its target contribution (silent
    when the target does not move), then eliminate silent steps by
    forward closure. The alphabets are the target component's own.
    """
    build = _as_build(system, relax)
    if isinstance(build.expr, Leaf):
        # projecting a basic component on itself
        if build.expr.name != target:
            raise UnknownTargetError(f"'{target}' is not a leaf of the expression")
        return ContextComponent(build.expr.component, "finite")
    j = _leaf_index(build, target)
    leaf = build.leaf_component(target)
    labelled, silent = _relabelled_edges(build, j)

    # forward closure: anything reachable silently can act on our behalf
    new_arrows: dict[str, dict[Step, set[str]]] = {}
    for s in build.component.states:
        merged: dict[Step, set[str]] = {}
        for u in _silent_closure([s], silent):
            for stp, targets in labelled.get(u, {}).items():
                merged.setdefault(stp, set()).update(targets)
        if merged:
            new_arrows[s] = merged

    initial = build.component.initial
    reachable = {initial}
    stack = [initial]
    transitions = []
    while stack:
        s = stack.pop()
        for stp, targets in new_arrows.get(s, {}).items():
            for t in sorted(targets):
                transitions.append((s, stp.input, stp.output, t))
                if t not in reachable:
                    reachable.add(t)
                    stack.append(t)

    component = Component.build(
        name=f"{build.component.name}.at.{target}",
        initial=initial,
        transitions=transitions,
        inputs=leaf.inputs,
        outputs=leaf.outputs,
    )
    return ContextComponent(component, "finite")


def component_in_context_tree(
    system: SystemExpr | SystemBuild,
    target: str,
    k: int,
    relax: bool = False,
    guard: int = DEFAULT_TRACE_GUARD,
) -> ContextComponent:
    """Depth-bounded literal construction: states are projected histories.

    A history extends by one step exactly when some composed trace
    projects onto the extension. States are never merged, so the result
    is a tree of depth at most ``k``; it serves as the oracle for the
    finite construction.
    """
    if k < 0:
        raise ValueError("depth bound must be non-negative")
    build = _as_build(system, relax)
    j = _leaf_index(build, target)
    leaf = build.leaf_component(target)
    labelled, silent = _relabelled_edges(build, j)

    initial_set = _silent_closure([build.component.initial], silent)
    histories: dict[Trace, frozenset[str]] = {(): initial_set}
    names: dict[Trace, str] = {(): "h0"}
    transitions: list[tuple[str, str, str, str]] = []
    level: list[Trace] = [()]
    for _ in range(k):
        nxt: list[Trace] = []
        for h in level:
            sources = histories[h]
            steps: dict[Step, set[str]] = {}
            for s in sources:
                for stp, targets in labelled.get(s, {}).items():
                    steps.setdefault(stp, set()).update(targets)
            for stp in sorted(steps):
                extended = h + (stp,)
                histories[extended] = _silent_closure(steps[stp], silent)
                if len(histories) > guard:
                    raise TraceLimitError(guard, f"context tree for '{target}' at depth {k}")
                names[extended] = f"h{len(names)}"
                transitions.append((names[h], stp.input, stp.output, names[extended]))
                nxt.append(extended)
        level = nxt
        if not level:
            break

    component = Component.build(
        name=f"{build.component.name}.tree.{target}",
        initial="h0",
        transitions=transitions,
        inputs=leaf.inputs,
        outputs=leaf.outputs,
        states=names.values(),
    )
    return ContextComponent(component, f"tree({k})")
