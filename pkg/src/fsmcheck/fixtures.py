"""Built-in demonstration machines.

Two scenarios ship with the package (also as files under ``fixtures/``):

* coffee: a money component M and a drink component D. M turns coins
  into brew orders; D brews and either delivers or reports an error back
  to M. The drink unit's first brew always succeeds; once used, brews
  may fail. The implementation of M additionally refunds the coin when
  an error comes back, which no trace of the original specification
  exercises locally, yet the composed implementation shows a refund the
  composed specification forbids. A revised money specification makes
  the error handling explicit (keep the coin, output ``noop``) and its
  in-context projection is the revised specification itself.

* relay: a left component that forwards a request through a right
  component. The right side may answer either observably or through a
  back-channel the left side's specification never handles; the left
  implementation reacts to the back-channel with an extra output. Each
  side conforms locally while the composition does not.

Every machine is a reconstruction pinned down by the trace facts
asserted in ``selfcheck``.
"""

from __future__ import annotations

from .compose import Leaf, Par, SystemExpr, build_system
from .conform import check_cioco_exact
from .machine import Component, trace

# ---------------------------------------------------------------- coffee

MONEY_INPUTS = ("coinC", "coinT", "error")
MONEY_OUTPUTS = ("makeC", "makeT", "refund", "noop")
DRINK_INPUTS = ("makeC", "makeT", "abs")
DRINK_OUTPUTS = ("preparing", "coffee", "tea", "error")


def coffee_spec_money() -> Component:
    """Original money specification: coins become orders, nothing else."""
    return Component.build(
        "M",
        initial="m0",
        transitions=[
            ("m0", "coinC", "makeC", "m0"),
            ("m0", "coinT", "makeT", "m0"),
        ],
        inputs=MONEY_INPUTS,
        outputs=MONEY_OUTPUTS,
    )


def coffee_iut_money() -> Component:
    """Money implementation: also refunds the coin when an error arrives."""
    return Component.build(
        "M",
        initial="m0",
        transitions=[
            ("m0", "coinC", "makeC", "m0"),
            ("m0", "coinT", "makeT", "m0"),
            ("m0", "error", "refund", "m0"),
        ],
        inputs=MONEY_INPUTS,
        outputs=MONEY_OUTPUTS,
    )


def coffee_drink() -> Component:
    """Drink component, shared by specification and implementation.

    The first brew of a new unit always succeeds; once used, any brew
    may nondeterministically fail and report an error.
    """
    return Component.build(
        "D",
        initial="new",
        transitions=[
            ("new", "makeC", "preparing", "brewC0"),
            ("new", "makeT", "preparing", "brewT0"),
            ("brewC0", "abs", "coffee", "used"),
            ("brewT0", "abs", "tea", "used"),
            ("used", "makeC", "preparing", "brewC"),
            ("used", "makeT", "preparing", "brewT"),
            ("brewC", "abs", "coffee", "used"),
            ("brewC", "abs", "error", "used"),
            ("brewT", "abs", "tea", "used"),
            ("brewT", "abs", "error", "used"),
        ],
        inputs=DRINK_INPUTS,
        outputs=DRINK_OUTPUTS,
    )


def coffee_spec_money_revised() -> Component:
    """Revised money specification with explicit error handling.

    Mirrors the drink unit's wear: no error can come back for the first
    order; afterwards an error answer is allowed and the component keeps
    the coin, emitting ``noop``. Its projection inside the composed
    system is the component itself.
    """
    return Component.build(
        "M",
        initial="w0",
        transitions=[
            ("w0", "coinC", "makeC", "wA"),
            ("w0", "coinT", "makeT", "wA"),
            ("wA", "coinC", "makeC", "wB"),
            ("wA", "coinT", "makeT", "wB"),
            ("wB", "coinC", "makeC", "wB"),
            ("wB", "coinT", "makeT", "wB"),
            ("wB", "error", "noop", "wA"),
        ],
        inputs=MONEY_INPUTS,
        outputs=MONEY_OUTPUTS,
    )


def coffee_expr(money: Component, drink: Component) -> SystemExpr:
    return Par(Leaf("M", money), Leaf("D", drink))


# ----------------------------------------------------------------- relay

LEFT_INPUTS = ("i1", "x")
LEFT_OUTPUTS = ("m", "o5")
RIGHT_INPUTS = ("m", "i2")
RIGHT_OUTPUTS = ("o3", "o4", "x")


def relay_spec_left() -> Component:
    """Left specification: forwards the request, nothing more."""
    return Component.build(
        "A",
        initial="a0",
        transitions=[("a0", "i1", "m", "a1")],
        inputs=LEFT_INPUTS,
        outputs=LEFT_OUTPUTS,
    )


def relay_iut_left() -> Component:
    """Left implementation: additionally reacts to the back-channel."""
    return Component.build(
        "A",
        initial="a0",
        transitions=[
            ("a0", "i1", "m", "a1"),
            ("a1", "x", "o5", "a0"),
        ],
        inputs=LEFT_INPUTS,
        outputs=LEFT_OUTPUTS,
    )


def relay_right() -> Component:
    """Right component, shared by specification and implementation.

    Answers a follow-up request either observably (o4) or through the
    back-channel (x) towards the left side.
    """
    return Component.build(
        "B",
        initial="b0",
        transitions=[
            ("b0", "m", "o3", "b1"),
            ("b1", "i2", "o4", "b0"),
            ("b1", "i2", "x", "b0"),
        ],
        inputs=RIGHT_INPUTS,
        outputs=RIGHT_OUTPUTS,
    )


def relay_expr(left: Component, right: Component) -> SystemExpr:
    return Par(Leaf("A", left), Leaf("B", right))


# ------------------------------------------------------------ self-check

def selfcheck() -> list[tuple[str, bool, str]]:
    """Verify the trace facts that pin down the reconstructions.

    Returns (fact, holds, detail) triples; every fact must hold for the
    shipped fixtures to mean what their docstrings claim.
    """
    from .machine import has_trace, out_after

    facts: list[tuple[str, bool, str]] = []

    def fact(name: str, holds: bool, detail: str = "") -> None:
        facts.append((name, holds, detail))

    spec = build_system(coffee_expr(coffee_spec_money(), coffee_drink()))
    iut = build_system(coffee_expr(coffee_iut_money(), coffee_drink()))
    witness = trace("coinC|preparing abs|coffee coinC|preparing")

    fact(
        "composed coffee implementation runs the refund trace",
        has_trace(iut, witness + trace("abs|refund")),
    )
    fact(
        "composed coffee specification runs the witness prefix",
        has_trace(spec, witness),
    )
    fact(
        "refund is not a specified answer after the witness",
        "refund" not in out_after(spec, witness, "abs"),
        f"allowed: {sorted(out_after(spec, witness, 'abs'))}",
    )
    fact(
        "local money check passes",
        check_cioco_exact(coffee_iut_money(), coffee_spec_money()).passed,
    )
    fact(
        "local drink check passes",
        check_cioco_exact(coffee_drink(), coffee_drink()).passed,
    )

    rspec = build_system(relay_expr(relay_spec_left(), relay_right()))
    riut = build_system(relay_expr(relay_iut_left(), relay_right()))
    fact("composed relay implementation runs i1|o3 i2|o5", has_trace(riut, trace("i1|o3 i2|o5")))
    fact("composed relay specification runs i1|o3", has_trace(rspec, trace("i1|o3")))
    fact(
        "o5 is not a specified answer after i1|o3",
        "o5" not in out_after(rspec, trace("i1|o3"), "i2"),
        f"allowed: {sorted(out_after(rspec, trace('i1|o3'), 'i2'))}",
    )
    fact(
        "local relay checks pass",
        check_cioco_exact(relay_iut_left(), relay_spec_left()).passed
        and check_cioco_exact(relay_right(), relay_right()).passed,
    )
    return facts
