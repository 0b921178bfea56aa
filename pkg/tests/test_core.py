import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wroca import (
    Alphabet,
    Configuration,
    Dwroca,
    IntervalOutOfBounds,
    ParseError,
    PumpingIntervals,
    UnknownSymbol,
    counter_effect_profile,
    prime_field,
    rational,
    remove_intervals,
)
from wroca.core import PLUS_TABLE, ZERO_TABLE
from wroca.testkit import GeneratorConfig, generate

Q = rational()


def word(text):
    return tuple(text)


class TestAlphabet:
    def test_order_is_kept(self):
        assert Alphabet(["b", "a"]).symbols == ("b", "a")

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(["a", "a"])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Alphabet([])

    def test_empty_symbol_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(["a", ""])

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            Alphabet(["a"]).index_of("b")

    def test_multicharacter_symbols(self):
        alpha = Alphabet(["push", "pop"])
        assert alpha.index_of("pop") == 1


class TestStep:
    def test_zero_table_step(self, e1):
        start = Configuration(0, 0, Q.one())
        assert e1.step(start, "a") == Configuration(0, 1, Q.element(2))

    def test_positive_table_step(self, e1):
        mid = Configuration(0, 1, Q.element(2))
        assert e1.step(mid, "a") == Configuration(0, 2, Q.element(4))

    def test_undefined_at_zero(self, Q):
        only_plus = Dwroca(
            ["q0"],
            ["a"],
            "q0",
            Q.one(),
            {},
            {("q0", "a"): ("q0", 0, Q.one())},
            {"q0": Q.one()},
        )
        assert only_plus.step(Configuration(0, 0, Q.one()), "a") is None

    def test_unknown_symbol(self, e1):
        with pytest.raises(UnknownSymbol):
            e1.step(e1.initial_configuration(), "b")


class TestRunWord:
    def test_two_steps(self, e1):
        run = e1.run_word(e1.initial_configuration(), word("aa"))
        assert run.ok
        assert run.end == Configuration(0, 2, Q.element(4))
        assert [s.table for s in run.steps] == [ZERO_TABLE, PLUS_TABLE]

    def test_empty_word(self, e1):
        start = e1.initial_configuration()
        run = e1.run_word(start, ())
        assert run.ok and run.end == start and len(run) == 0

    def test_stuck_at_zero(self, Q):
        only_plus = Dwroca(
            ["q0"], ["a"], "q0", Q.one(), {}, {("q0", "a"): ("q0", 0, Q.one())}, {"q0": Q.one()}
        )
        run = only_plus.run_word(only_plus.initial_configuration(), word("aa"))
        assert not run.ok and run.stuck_at == 0 and len(run) == 0

    def test_replay_reproduces_end(self, e2):
        run = e2.run_word(e2.initial_configuration(), word("aaa"))
        current = run.start
        for step, expected in zip(run.steps, run.configurations[1:]):
            current = e2.step(current, step.symbol)
            assert current == expected
        assert current == run.end

    def test_deterministic_replay(self, e2):
        first = e2.run_word(e2.initial_configuration(), word("aaaa"))
        second = e2.run_word(e2.initial_configuration(), word("aaaa"))
        assert first.configurations == second.configurations
        assert first.steps == second.steps


class TestAcceptWeight:
    def test_three_steps(self, e1):
        assert e1.accept_weight(word("aaa")) == Q.element(8)

    def test_empty_word(self, e1):
        assert e1.accept_weight(()) == Q.one()

    def test_zero_final(self, Q):
        machine = Dwroca(
            ["q0"], ["a"], "q0", Q.one(), {}, {}, {"q0": Q.zero()}
        )
        assert machine.accept_weight(()) == Q.zero()

    def test_undefined_is_none(self, Q):
        machine = Dwroca(["q0"], ["a"], "q0", Q.one(), {}, {}, {"q0": Q.one()})
        assert machine.accept_weight(word("a")) is None
        assert machine.accept_weight_or_zero(word("a")) == Q.zero()

    def test_initial_weight_multiplied_once(self, Q):
        machine = Dwroca(
            ["q0"],
            ["a"],
            "q0",
            Q.element(5),
            {("q0", "a"): ("q0", 0, Q.element(3))},
            {},
            {"q0": Q.element(7)},
        )
        assert machine.accept_weight(word("a")) == Q.element(105)

    def test_weight_multiplicativity_random(self):
        for seed in range(40):
            machine = generate(GeneratorConfig(seed=seed, density=0.9))
            cfg = machine.initial_configuration()
            rng = random.Random(seed)
            w = tuple(rng.choice(machine.alphabet.symbols) for _ in range(rng.randint(0, 10)))
            run = machine.run_word(cfg, w)
            if not run.ok:
                continue
            product = machine.initial_weight
            for step in run.steps:
                product = product * step.weight
            expected = product * machine.final_weights[run.end.state]
            assert machine.accept_weight(w) == expected


class TestCounterProfile:
    def test_e1_grounded(self, e1):
        run = e1.run_word(e1.initial_configuration(), word("aa"))
        profile = counter_effect_profile(run)
        assert profile.prefix_effects == (1, 2)
        assert profile.min_effect == 1 and profile.max_effect == 2
        assert profile.grounded

    def test_empty_run(self, e1):
        run = e1.run_word(e1.initial_configuration(), ())
        profile = counter_effect_profile(run)
        assert profile == counter_effect_profile(run)
        assert profile.prefix_effects == ()
        assert profile.min_effect == 0 and profile.max_effect == 0
        assert not profile.grounded

    def test_up_down(self, Q):
        machine = Dwroca(
            ["q0"],
            ["a", "b"],
            "q0",
            Q.one(),
            {("q0", "a"): ("q0", 1, Q.one())},
            {("q0", "a"): ("q0", 1, Q.one()), ("q0", "b"): ("q0", -1, Q.one())},
            {"q0": Q.one()},
        )
        run = machine.run_word(Configuration(0, 1, Q.one()), word("ab"))
        profile = counter_effect_profile(run)
        assert profile.prefix_effects == (1, 0)
        assert profile.min_effect == 0 and profile.max_effect == 1
        assert not profile.grounded


class TestFloatingMonotonicity:
    def test_lifting_counter_keeps_floating_runs(self):
        for seed in range(60):
            machine = generate(GeneratorConfig(seed=200 + seed, density=0.9))
            rng = random.Random(seed)
            start = Configuration(
                rng.randrange(machine.size), rng.randint(1, 3), Q.element(rng.randint(1, 5))
            )
            w = tuple(rng.choice(machine.alphabet.symbols) for _ in range(rng.randint(1, 8)))
            run = machine.run_word(start, w)
            if not run.ok or counter_effect_profile(run).grounded:
                continue
            lifted = Configuration(start.state, start.counter + rng.randint(1, 4), Q.element(9))
            lifted_run = machine.run_word(lifted, w)
            assert lifted_run.ok
            assert [s.table for s in lifted_run.steps] == [s.table for s in run.steps]
            assert lifted_run.end.state == run.end.state


class TestRemoveIntervals:
    def test_middle(self):
        assert remove_intervals(word("abcde"), PumpingIntervals([(1, 2)])) == word("ade")

    def test_empty_list(self):
        assert remove_intervals(word("abc"), PumpingIntervals()) == word("abc")

    def test_two_intervals(self):
        assert remove_intervals(word("aaaa"), PumpingIntervals([(0, 1), (3, 3)])) == ("a",)

    def test_out_of_bounds(self):
        with pytest.raises(IntervalOutOfBounds):
            remove_intervals(word("ab"), PumpingIntervals([(1, 2)]))

    def test_overlap_rejected_at_construction(self):
        with pytest.raises(ValueError):
            PumpingIntervals([(0, 2), (2, 3)])

    @given(st.lists(st.sampled_from("ab"), max_size=12), st.data())
    def test_matches_position_filter(self, letters, data):
        w = tuple(letters)
        bounds = []
        cursor = 0
        while cursor < len(w):
            hi = data.draw(st.integers(min_value=cursor, max_value=len(w) - 1))
            if data.draw(st.booleans()):
                bounds.append((cursor, hi))
            cursor = hi + 2
        intervals = PumpingIntervals(bounds)
        removed = intervals.positions()
        assert remove_intervals(w, intervals) == tuple(
            s for i, s in enumerate(w) if i not in removed
        )


@pytest.fixture
def pump_machine(Q):
    """Two states; removal of the +1 self-loop at q1 drags a later step down
    to the counter-zero table."""
    return Dwroca(
        ["q0", "q1"],
        ["a", "b"],
        "q0",
        Q.one(),
        {
            ("q0", "a"): ("q1", 1, Q.one()),
            ("q1", "a"): ("q1", 1, Q.element(2)),
            ("q1", "b"): ("q1", 0, Q.element(3)),
        },
        {
            ("q1", "a"): ("q1", 1, Q.one()),
            ("q1", "b"): ("q1", -1, Q.one()),
        },
        {"q0": Q.one(), "q1": Q.one()},
    )


class TestCheckPumping:
    def test_empty_is_pumping(self, e1):
        start = e1.initial_configuration()
        assert e1.check_pumping(start, word("aaa"), PumpingIntervals())

    def test_non_loop_rejected(self, e2):
        start = e2.initial_configuration()
        # positions 0..1: q0 -> q1 -> q1; removing [0,0] would need q0 == q1
        assert not e2.check_pumping(start, word("aa"), PumpingIntervals([(0, 0)]))

    def test_forced_new_zero_test_rejected(self, pump_machine):
        start = pump_machine.initial_configuration()
        # word a a b b: counters 1,2,1,0; removing the +1 loop at position 1
        # replays b at counter 0, switching it to the zero-test table
        w = word("aabb")
        run = pump_machine.run_word(start, w)
        assert run.ok
        assert not pump_machine.check_pumping(start, w, PumpingIntervals([(1, 1)]))

    def test_loop_removal_after_zero_test_ok(self, e1):
        start = e1.initial_configuration()
        assert e1.check_pumping(start, word("aaa"), PumpingIntervals([(1, 1)]))
        assert e1.check_pumping(start, word("aaa"), PumpingIntervals([(1, 2)]))
        assert e1.check_pumping(start, word("aaa"), PumpingIntervals([(2, 2)]))

    def test_removing_last_zero_test_rejected(self, e1):
        start = e1.initial_configuration()
        assert not e1.check_pumping(start, word("aaa"), PumpingIntervals([(0, 0)]))
        assert not e1.check_pumping(start, word("aaa"), PumpingIntervals([(0, 2)]))

    def test_min_effect_may_not_drop(self, pump_machine):
        # from counter 5 the word a b b floats high above zero: effects 1, 0, -1
        start = Configuration(1, 5, Q.one())
        w = word("abb")
        run = pump_machine.run_word(start, w)
        assert run.ok
        # removing the leading +1 loop leaves effects -1, -2: same tables
        # everywhere (counters stay positive), but the minimum drops
        assert not pump_machine.check_pumping(start, w, PumpingIntervals([(0, 0)]))
        # from one row higher the same removal keeps enough headroom only for
        # the table choice; the minimum-effect clause is what rejects it
        residual = pump_machine.run_word(start, word("bb"))
        assert residual.ok
        assert all(s.table == PLUS_TABLE for s in residual.steps)

    def test_out_of_bounds(self, e1):
        with pytest.raises(IntervalOutOfBounds):
            e1.check_pumping(e1.initial_configuration(), word("aa"), PumpingIntervals([(0, 5)]))

    def test_undefined_run_rejected(self, Q):
        machine = Dwroca(["q0"], ["a"], "q0", Q.one(), {}, {}, {"q0": Q.one()})
        with pytest.raises(ValueError):
            machine.check_pumping(machine.initial_configuration(), word("a"), PumpingIntervals())


class TestValidate:
    def test_well_formed(self, e1):
        assert e1.validate() == []

    def test_zero_test_decrement(self, Q):
        machine = Dwroca(
            ["q0"], ["a"], "q0", Q.one(), {("q0", "a"): ("q0", -1, Q.one())}, {}, {"q0": Q.one()}
        )
        assert any("zero-test decrement" in v for v in machine.validate())

    def test_zero_transition_weight(self, Q):
        machine = Dwroca(
            ["q0"], ["a"], "q0", Q.one(), {}, {("q0", "a"): ("q0", 0, Q.zero())}, {"q0": Q.one()}
        )
        assert any("zero transition weight" in v for v in machine.validate())

    def test_zero_initial_weight(self, Q):
        machine = Dwroca(["q0"], ["a"], "q0", Q.zero(), {}, {}, {"q0": Q.one()})
        assert any("zero initial weight" in v for v in machine.validate())

    def test_mixed_fields_flagged(self, Q):
        machine = Dwroca(
            ["q0"],
            ["a"],
            "q0",
            Q.one(),
            {},
            {("q0", "a"): ("q0", 0, prime_field(7).element(2))},
            {"q0": Q.one()},
        )
        assert any("different field" in v for v in machine.validate())

    def test_delta1_effect_out_of_range(self, Q):
        machine = Dwroca(
            ["q0"], ["a"], "q0", Q.one(), {}, {("q0", "a"): ("q0", 2, Q.one())}, {"q0": Q.one()}
        )
        assert any("out of range" in v for v in machine.validate())


class TestJson:
    def test_roundtrip(self, e2):
        doc = e2.to_json()
        again = Dwroca.from_json(json.loads(json.dumps(doc)))
        assert again.to_json() == doc

    def test_documented_shape(self, e1):
        doc = e1.to_json()
        assert set(doc) == {"field", "states", "alphabet", "initial", "delta0", "delta1", "final"}
        assert doc["field"] == {"kind": "rational"}
        assert doc["delta0"] == [
            {"from": "q0", "on": "a", "to": "q0", "ce": 1, "weight": "2"}
        ]
        assert doc["final"] == {"q0": "1"}

    def test_unknown_key_rejected(self, e1):
        doc = e1.to_json()
        doc["comment"] = "hello"
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_missing_key_rejected(self, e1):
        doc = e1.to_json()
        del doc["delta1"]
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_duplicate_transition_rejected(self, e1):
        doc = e1.to_json()
        doc["delta0"] = doc["delta0"] * 2
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_final_must_cover_all_states(self, e2):
        doc = e2.to_json()
        del doc["final"]["q1"]
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_non_integer_effect_rejected(self, e1):
        doc = e1.to_json()
        doc["delta0"][0]["ce"] = True
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_unknown_state_rejected(self, e1):
        doc = e1.to_json()
        doc["delta0"][0]["to"] = "nowhere"
        with pytest.raises(ParseError):
            Dwroca.from_json(doc)

    def test_gf_roundtrip(self):
        gf = prime_field(7)
        machine = Dwroca(
            ["s"], ["x"], "s", gf.element(3), {("s", "x"): ("s", 1, gf.element(5))}, {}, {"s": gf.element(2)}
        )
        doc = machine.to_json()
        assert doc["field"] == {"kind": "gf", "p": 7}
        assert Dwroca.from_json(doc).to_json() == doc

    def test_invalid_ce_parses_but_fails_validate(self, e1):
        doc = e1.to_json()
        doc["delta0"][0]["ce"] = -1
        machine = Dwroca.from_json(doc)
        assert any("zero-test decrement" in v for v in machine.validate())


class TestConstruction:
    def test_duplicate_states_rejected(self, Q):
        with pytest.raises(ValueError):
            Dwroca(["q", "q"], ["a"], "q", Q.one(), {}, {}, {"q": Q.one()})

    def test_unknown_initial_rejected(self, Q):
        with pytest.raises(ValueError):
            Dwroca(["q"], ["a"], "r", Q.one(), {}, {}, {"q": Q.one()})

    def test_missing_final_rejected(self, Q):
        with pytest.raises(ValueError):
            Dwroca(["q", "r"], ["a"], "q", Q.one(), {}, {}, {"q": Q.one()})

    def test_negative_counter_configuration_rejected(self, Q):
        with pytest.raises(ValueError):
            Configuration(0, -1, Q.one())
