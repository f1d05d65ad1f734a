"""Independent brute-force implementations used only as test oracles.

Everything here recomputes semantics from first principles (explicit run
enumeration, literal rule application on full state products, leaf-state
vector simulation) without touching the package's search kernels or
provenance records, so agreement is meaningful.
"""

from __future__ import annotations

from itertools import product as iproduct

from fsmcheck.compose import Leaf, SystemExpr
from fsmcheck.machine import Component, Step, Trace


def naive_runs(c: Component, tr: Trace) -> list[list[str]]:
    """All state sequences of ``c`` that execute ``tr`` from the initial state."""
    runs = [[c.initial]]
    for s in tr:
        extended = []
        for run in runs:
            for t in c.transitions:
                if t.source == run[-1] and t.input == s.input and t.output == s.output:
                    extended.append(run + [t.target])
        runs = extended
    return runs


def naive_states_after(c: Component, tr: Trace) -> frozenset[str]:
    return frozenset(run[-1] for run in naive_runs(c, tr))


def naive_has_trace(c: Component, tr: Trace) -> bool:
    return bool(naive_runs(c, tr))


def naive_traces(c: Component, k: int) -> set[Trace]:
    """Trace enumeration by per-state depth-first expansion."""
    found: set[Trace] = set()

    def walk(state: str, prefix: Trace) -> None:
        found.add(prefix)
        if len(prefix) == k:
            return
        for t in sorted(c.transitions):
            if t.source == state:
                walk(t.target, prefix + (Step(t.input, t.output),))

    walk(c.initial, ())
    return found


def naive_out_after(c: Component, tr: Trace, i: str) -> frozenset[str]:
    outs = set()
    for o in c.outputs:
        if naive_has_trace(c, tr + (Step(i, o),)):
            outs.add(o)
    return frozenset(outs)


def naive_full_product(c1: Component, c2: Component) -> Component:
    """Literal rule application over the complete state product.

    No reachability restriction and no kernels: each of the four rules is
    spelled out over every state pair.
    """
    inputs = (c1.inputs | c2.inputs) - (c1.outputs | c2.outputs)
    outputs = c1.outputs | c2.outputs
    transitions = []
    for s1, s2 in iproduct(sorted(c1.states), sorted(c2.states)):
        src = f"({s1},{s2})"
        for t in c1.transitions:
            if t.source != s1 or t.input not in inputs:
                continue
            if t.output not in c2.inputs:
                transitions.append((src, t.input, t.output, f"({t.target},{s2})"))
            else:
                for u in c2.transitions:
                    if u.source == s2 and u.input == t.output:
                        transitions.append((src, t.input, u.output, f"({t.target},{u.target})"))
        for t in c2.transitions:
            if t.source != s2 or t.input not in inputs:
                continue
            if t.output not in c1.inputs:
                transitions.append((src, t.input, t.output, f"({s1},{t.target})"))
            else:
                for u in c1.transitions:
                    if u.source == s1 and u.input == t.output:
                        transitions.append((src, t.input, u.output, f"({u.target},{t.target})"))
    return Component.build(
        "naive",
        initial=f"({c1.initial},{c2.initial})",
        transitions=transitions,
        inputs=inputs,
        outputs=outputs,
        states=[f"({a},{b})" for a, b in iproduct(sorted(c1.states), sorted(c2.states))],
    )


def naive_cioco_bounded(iut, spec, k, strict=False):
    """Quantify the output-inclusion condition over explicitly enumerated traces.

    Returns None or the lexicographically first minimal violation
    (witness, input, offending output).
    """
    for tr in sorted(naive_traces(spec, k), key=lambda t: (len(t), t)):
        for i in sorted(spec.inputs):
            iut_outs = naive_out_after(iut, tr, i)
            if not iut_outs:
                continue
            spec_outs = naive_out_after(spec, tr, i)
            if not spec_outs and not strict:
                continue
            extra = iut_outs - spec_outs
            if extra:
                return tr, i, min(extra)
    return None


def reassembles(c1: Component, c2: Component, tr: Trace, tr1: Trace, tr2: Trace) -> bool:
    """Can component runs over ``tr1``/``tr2`` interleave back into ``tr``?

    Joint replay: each composed step consumes either one step of one
    side (its output not consumable by the other) or one step of each
    (the hidden intermediate matching). Mirrors the composition rules
    without using the package's product construction.
    """

    def targets(c, state, i, o):
        return [t.target for t in c.transitions
                if t.source == state and t.input == i and t.output == o]

    frontier = {(c1.initial, c2.initial, 0, 0)}
    for s in tr:
        i, o = s.input, s.output
        nxt = set()
        for (s1, s2, a, b) in frontier:
            if a < len(tr1) and tr1[a] == s and o not in c2.inputs:
                for t1 in targets(c1, s1, i, o):
                    nxt.add((t1, s2, a + 1, b))
            if b < len(tr2) and tr2[b] == s and o not in c1.inputs:
                for t2 in targets(c2, s2, i, o):
                    nxt.add((s1, t2, a, b + 1))
            if a < len(tr1) and b < len(tr2):
                left, right = tr1[a], tr2[b]
                if (left.input == i and right.output == o
                        and left.output == right.input and left.output in c2.inputs):
                    for t1 in targets(c1, s1, i, left.output):
                        for t2 in targets(c2, s2, right.input, o):
                            nxt.add((t1, t2, a + 1, b + 1))
                if (right.input == i and left.output == o
                        and right.output == left.input and right.output in c1.inputs):
                    for t1 in targets(c1, s1, left.input, o):
                        for t2 in targets(c2, s2, i, right.output):
                            nxt.add((t1, t2, a + 1, b + 1))
        frontier = nxt
        if not frontier:
            return False
    return any(a == len(tr1) and b == len(tr2) for (_, _, a, b) in frontier)


# ------------------------- leaf-vector simulation of a composition tree

def _alphabets(expr: SystemExpr) -> tuple[frozenset[str], frozenset[str]]:
    if isinstance(expr, Leaf):
        return expr.component.inputs, expr.component.outputs
    il, ol = _alphabets(expr.left)
    ir, orr = _alphabets(expr.right)
    return (il | ir) - (ol | orr), ol | orr


def _leaves(expr: SystemExpr) -> list[Leaf]:
    if isinstance(expr, Leaf):
        return [expr]
    return _leaves(expr.left) + _leaves(expr.right)


def vector_initial(expr: SystemExpr) -> tuple[str, ...]:
    return tuple(leaf.component.initial for leaf in _leaves(expr))


def vector_steps(expr: SystemExpr, vector: tuple[str, ...]):
    """All composite steps from a leaf-state vector.

    Yields (input, output, next_vector, moves) where moves maps leaf
    positions to the step that leaf performed. Implemented by direct
    recursive application of the composition rules.
    """
    steps, _ = _vector_steps(expr, vector, 0)
    return steps


def _vector_steps(expr: SystemExpr, vector, offset):
    if isinstance(expr, Leaf):
        state = vector[offset]
        out = []
        for t in sorted(expr.component.transitions):
            if t.source == state:
                nxt = vector[:offset] + (t.target,) + vector[offset + 1 :]
                out.append((t.input, t.output, nxt, {offset: Step(t.input, t.output)}))
        return out, offset + 1

    left_steps, mid = _vector_steps(expr.left, vector, offset)
    right_steps, end = _vector_steps(expr.right, vector, mid)
    inputs, _ = _alphabets(expr)
    left_in, _ = _alphabets(expr.left)
    right_in, _ = _alphabets(expr.right)

    out = []
    for (i, o, nxt, moves) in left_steps:
        if i not in inputs:
            continue
        if o not in right_in:
            out.append((i, o, nxt, moves))
        else:
            for (i2, o2, nxt2, moves2) in right_steps:
                if i2 == o:
                    merged = vector[:offset] + nxt[offset:mid] + nxt2[mid:end] + vector[end:]
                    out.append((i, o2, merged, {**moves, **moves2}))
    for (i, o, nxt, moves) in right_steps:
        if i not in inputs:
            continue
        if o not in left_in:
            out.append((i, o, nxt, moves))
        else:
            for (i1, o1, nxt1, moves1) in left_steps:
                if i1 == o:
                    merged = vector[:offset] + nxt1[offset:mid] + nxt[mid:end] + vector[end:]
                    out.append((i, o1, merged, {**moves, **moves1}))
    return out, end


def vector_traces(expr: SystemExpr, k: int) -> set[Trace]:
    """Composed traces up to depth ``k`` via leaf-vector simulation."""
    found: set[Trace] = set()

    def walk(vector, prefix):
        found.add(prefix)
        if len(prefix) == k:
            return
        for (i, o, nxt, _) in vector_steps(expr, vector):
            walk(nxt, prefix + (Step(i, o),))

    walk(vector_initial(expr), ())
    return found


def vector_projections(expr: SystemExpr, tr: Trace, target: str) -> frozenset[Trace]:
    """Projections of ``tr`` onto one leaf, by leaf-vector run replay."""
    names = [leaf.name for leaf in _leaves(expr)]
    j = names.index(target)
    frontier = {(vector_initial(expr), ())}
    for s in tr:
        nxt = set()
        for (vector, proj) in frontier:
            for (i, o, nxt_vec, moves) in vector_steps(expr, vector):
                if i == s.input and o == s.output:
                    move = moves.get(j)
                    nxt.add((nxt_vec, proj + (move,) if move else proj))
        frontier = nxt
        if not frontier:
            return frozenset()
    return frozenset(p for (_, p) in frontier)
