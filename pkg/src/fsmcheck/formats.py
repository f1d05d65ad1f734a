"""Component serialization: line-oriented text format and a JSON mirror.

Text format, one directive per line, ``#`` starts a comment::

    component <name>
    states <state> <state> ...        # optional; states are also inferred
    inputs <label> <label> ...
    outputs <label> <label> ...
    initial <state>
    trans <state> <input>|<output> <state>

The JSON mirror carries the same fields. Both formats round-trip
losslessly (the states list preserves states no transition touches).
System expressions use s-expression syntax: ``(par M D)``,
``(par (par A B) C)``.
"""

from __future__ import annotations

import json

from .compose import Leaf, Par, SystemExpr
from .errors import ParseError
from .machine import SEPARATOR, Component, Trace


def component_to_text(c: Component) -> str:
    lines = [f"component {c.name}"]
    lines.append("states " + " ".join(c.sorted_states()))
    lines.append("inputs " + " ".join(sorted(c.inputs)))
    lines.append("outputs " + " ".join(sorted(c.outputs)))
    lines.append(f"initial {c.initial}")
    for t in c.sorted_transitions():
        lines.append(f"trans {t.source} {t.input}{SEPARATOR}{t.output} {t.target}")
    return "\n".join(lines) + "\n"


def component_from_text(text: str, path: str | None = None) -> Component:
    name = None
    states: list[str] = []
    inputs: list[str] = []
    outputs: list[str] = []
    initial = None
    transitions: list[tuple[str, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        if directive == "component":
            if len(args) != 1:
                raise ParseError("expected: component <name>", lineno, path)
            name = args[0]
        elif directive == "states":
            states.extend(args)
        elif directive == "inputs":
            inputs.extend(args)
        elif directive == "outputs":
            outputs.extend(args)
        elif directive == "initial":
            if len(args) != 1:
                raise ParseError("expected: initial <state>", lineno, path)
            initial = args[0]
        elif directive == "trans":
            if len(args) != 3:
                raise ParseError(
                    "expected: trans <state> <input>|<output> <state>", lineno, path
                )
            label = args[1]
            left, sep, right = label.partition(SEPARATOR)
            if not sep or not left or not right:
                raise ParseError(
                    f"malformed label {label!r}, expected <input>|<output>", lineno, path
                )
            transitions.append((args[0], left, right, args[2]))
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno, path)

    if name is None:
        raise ParseError("missing 'component' directive", None, path)
    if initial is None:
        raise ParseError("missing 'initial' directive", None, path)
    return _assemble(name, initial, transitions, inputs, outputs, states)


def _assemble(name, initial, transitions, inputs, outputs, states) -> Component:
    """Explicit declarations are authoritative; omitted ones are inferred.

    Keeping declared sets as-is lets validation flag transitions or
    initial states that reference something undeclared.
    """
    from .machine import Transition

    trans = frozenset(Transition(*t) for t in transitions)
    if not states:
        states = {initial} | {t.source for t in trans} | {t.target for t in trans}
    if not inputs:
        inputs = {t.input for t in trans}
    if not outputs:
        outputs = {t.output for t in trans}
    return Component(
        name=name,
        states=frozenset(states),
        initial=initial,
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        transitions=trans,
    )


def component_to_dict(c: Component) -> dict:
    return {
        "name": c.name,
        "states": c.sorted_states(),
        "inputs": sorted(c.inputs),
        "outputs": sorted(c.outputs),
        "initial": c.initial,
        "transitions": [
            {"from": t.source, "input": t.input, "output": t.output, "to": t.target}
            for t in c.sorted_transitions()
        ],
    }


def component_from_dict(data: dict, path: str | None = None) -> Component:
    try:
        return _assemble(
            data["name"],
            data["initial"],
            [
                (t["from"], t["input"], t["output"], t["to"])
                for t in data.get("transitions", ())
            ],
            data.get("inputs", ()),
            data.get("outputs", ()),
            data.get("states", ()),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed component object: {exc}", None, path) from None


def component_to_json(c: Component) -> str:
    return json.dumps(component_to_dict(c), indent=2, sort_keys=False) + "\n"


def component_from_json(text: str, path: str | None = None) -> Component:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", exc.lineno, path) from None
    return component_from_dict(data, path)


def load_component(path: str) -> Component:
    """Load a component from a file; JSON when the suffix is .json."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None
    if str(path).endswith(".json"):
        return component_from_json(text, path)
    return component_from_text(text, path)


def save_component(c: Component, path: str) -> None:
    rendered = component_to_json(c) if str(path).endswith(".json") else component_to_text(c)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(rendered)


def trace_to_list(tr: Trace) -> list[dict]:
    return [{"input": s.input, "output": s.output} for s in tr]


def parse_system_expr(text: str, components: dict[str, Component]) -> SystemExpr:
    """Parse ``(par A B)`` style expressions over named components."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> SystemExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens) or tokens[pos] != "par":
                raise ParseError("expected 'par' after '('")
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ParseError("expected ')'")
            pos += 1
            return Par(left, right)
        if tok == ")":
            raise ParseError("unexpected ')'")
        if tok not in components:
            raise ParseError(
                f"unknown component {tok!r} (loaded: {sorted(components)})"
            )
        return Leaf(tok, components[tok])

    expr = parse()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after expression: {' '.join(tokens[pos:])}")
    return expr


def to_dot(c: Component) -> str:
    """Graphviz rendering, transitions labelled input|output."""
    lines = [f'digraph "{c.name}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in c.sorted_states():
        lines.append(f'  "{s}" [shape=circle];')
    lines.append(f'  __start -> "{c.initial}";')
    for t in c.sorted_transitions():
        lines.append(f'  "{t.source}" -> "{t.target}" [label="{t.input}{SEPARATOR}{t.output}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
