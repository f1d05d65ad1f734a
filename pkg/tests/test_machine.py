"""Machine model: validation, trace semantics, enabledness, completion."""

import random

import pytest

from fsmcheck import (
    Component,
    Step,
    TraceLimitError,
    UnknownInputError,
    complete,
    has_trace,
    is_input_enabled,
    out_after,
    states_after,
    trace,
    traces_up_to,
    validate_component,
)
from fsmcheck.randgen import random_component

from oracles import naive_out_after, naive_states_after, naive_traces


def single_loop():
    return Component.build("c", "s0", [("s0", "a", "x", "s0")])


def chain():
    return Component.build("c", "s0", [("s0", "a", "x", "s1"), ("s1", "b", "y", "s0")])


def branching():
    return Component.build(
        "c", "s0", [("s0", "a", "x", "s1"), ("s0", "a", "x", "s2")]
    )


class TestValidate:
    def test_minimal_legal_component(self):
        assert validate_component(single_loop()).ok

    def test_initial_not_in_states(self):
        c = Component(
            name="c",
            states=frozenset(["s0"]),
            initial="s9",
            inputs=frozenset(["a"]),
            outputs=frozenset(["x"]),
            transitions=frozenset(),
        )
        report = validate_component(c)
        assert not report.ok
        assert any("initial" in i.message for i in report.errors)

    def test_transition_input_not_declared(self):
        from fsmcheck.machine import Transition

        c = Component(
            name="c",
            states=frozenset(["s0"]),
            initial="s0",
            inputs=frozenset(["a"]),
            outputs=frozenset(["x"]),
            transitions=frozenset([Transition("s0", "b", "x", "s0")]),
        )
        report = validate_component(c)
        assert not report.ok
        assert any("input 'b' not in input alphabet" in i.message for i in report.errors)

    def test_overlapping_alphabets_only_warn(self):
        c = Component.build("c", "s0", [("s0", "a", "a", "s0")])
        report = validate_component(c)
        assert report.ok
        assert any("overlap" in i.message for i in report.warnings)

    def test_unreachable_and_dead_states_warn(self):
        c = Component.build(
            "c", "s0", [("s0", "a", "x", "s1")], states=["orphan"]
        )
        report = validate_component(c)
        assert report.ok
        messages = [i.message for i in report.warnings]
        assert any("unreachable" in m for m in messages)
        assert any("no outgoing" in m for m in messages)

    def test_bad_label_is_error(self):
        c = Component.build("c", "s0", [("s0", "a|b", "x", "s0")])
        assert not validate_component(c).ok


class TestStatesAfter:
    def test_empty_trace_reaches_initial(self):
        assert states_after(chain(), ()) == {"s0"}

    def test_single_path(self):
        assert states_after(chain(), trace("a|x")) == {"s1"}

    def test_nondeterministic_fanout(self):
        c = branching()
        assert states_after(c, trace("a|x")) == {"s1", "s2"}

    def test_agrees_with_run_enumeration(self):
        rng = random.Random(101)
        for _ in range(60):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"], n_states=(2, 6))
            for tr in sorted(naive_traces(c, 3), key=lambda t: (len(t), t)):
                assert states_after(c, tr) == naive_states_after(c, tr)


class TestHasTrace:
    def test_empty(self):
        assert has_trace(single_loop(), ())

    def test_output_mismatch(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")], outputs=["y"])
        assert not has_trace(c, trace("a|y"))

    def test_round_trip_path(self):
        assert has_trace(chain(), trace("a|x b|y a|x"))


class TestTracesUpTo:
    def test_depth_zero(self):
        assert traces_up_to(chain(), 0) == {()}

    def test_single_loop(self):
        assert traces_up_to(single_loop(), 2) == {(), trace("a|x"), trace("a|x a|x")}

    def test_nondeterministic_outputs(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1"), ("s0", "a", "y", "s1")])
        assert traces_up_to(c, 1) == {(), trace("a|x"), trace("a|y")}

    def test_monotone_in_depth_and_lengths_bounded(self):
        rng = random.Random(7)
        for _ in range(30):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"])
            for k in range(3):
                smaller = traces_up_to(c, k)
                larger = traces_up_to(c, k + 1)
                assert smaller <= larger
                assert all(len(tr) <= k for tr in smaller)

    def test_guard_raises(self):
        c = Component.build(
            "c",
            "s0",
            [("s0", "a", o, "s0") for o in ("x", "y", "z")],
        )
        with pytest.raises(TraceLimitError):
            traces_up_to(c, 12, guard=50)

    def test_matches_naive_enumeration(self):
        rng = random.Random(13)
        for _ in range(40):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"], n_states=(2, 5))
            assert traces_up_to(c, 4) == naive_traces(c, 4)


class TestOutAfter:
    def test_simple(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")])
        assert out_after(c, (), "a") == {"x"}

    def test_no_continuation_is_empty(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")])
        assert out_after(c, trace("a|x"), "a") == frozenset()

    def test_nondeterministic(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1"), ("s0", "a", "y", "s2")])
        assert out_after(c, (), "a") == {"x", "y"}

    def test_unknown_input_is_an_error_not_empty(self):
        with pytest.raises(UnknownInputError):
            out_after(single_loop(), (), "zz")

    def test_consistent_with_has_trace_on_random_components(self):
        rng = random.Random(23)
        for _ in range(40):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"], n_states=(2, 6))
            for tr in naive_traces(c, 3):
                for i in sorted(c.inputs):
                    expected = frozenset(
                        o for o in c.outputs if has_trace(c, tr + (Step(i, o),))
                    )
                    assert out_after(c, tr, i) == expected == naive_out_after(c, tr, i)


class TestInputEnabled:
    def test_enabled_loop(self):
        assert is_input_enabled(single_loop())

    def test_missing_transition(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")])
        assert not is_input_enabled(c)

    def test_coffee_money_spec_is_not_input_enabled(self):
        from fsmcheck.fixtures import coffee_drink, coffee_spec_money

        assert not is_input_enabled(coffee_spec_money())
        assert not is_input_enabled(coffee_drink())


class TestComplete:
    def test_already_enabled_unchanged(self):
        c = single_loop()
        assert complete(c, "loop") == c
        assert complete(c, "sink") == c

    def test_loop_policy_fills_missing_pairs(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")], inputs=["a", "b"])
        done = complete(c, "loop", label="abs")
        added = done.transitions - c.transitions
        assert {(t.source, t.input, t.output, t.target) for t in added} == {
            ("s0", "b", "abs", "s0"),
            ("s1", "a", "abs", "s1"),
            ("s1", "b", "abs", "s1"),
        }
        assert is_input_enabled(done)

    def test_sink_policy_adds_sink_state(self):
        c = Component.build("c", "s0", [("s0", "a", "x", "s1")], inputs=["a", "b"])
        done = complete(c, "sink", label="abs")
        assert len(done.states) == len(c.states) + 1
        added = done.transitions - c.transitions
        # three redirecting transitions plus two sink self-loops
        assert len(added) == 5
        assert is_input_enabled(done)

    def test_traces_grow_and_stay_superset(self):
        rng = random.Random(31)
        for _ in range(25):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"])
            for policy in ("loop", "sink"):
                done = complete(c, policy)
                assert is_input_enabled(done)
                for k in range(4):
                    assert traces_up_to(c, k) <= traces_up_to(done, k)

    def test_enabled_components_always_answer_along_bounded_traces(self):
        rng = random.Random(37)
        for _ in range(25):
            c = random_component(rng, "r", ["a", "b"], ["x", "y"], n_states=(2, 4))
            if not is_input_enabled(c):
                continue
            for tr in traces_up_to(c, 4):
                for i in sorted(c.inputs):
                    assert out_after(c, tr, i)
