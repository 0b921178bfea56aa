"""Deterministic weighted automata and exact equivalence with minimal witnesses.

The equivalence engine is a breadth-first worklist over words. Each word w
is represented by the sparse difference vector pairing the forward vector of
the left automaton with the negated forward vector of the right one; w is a
witness exactly when that vector is not orthogonal to the combined
final-weight vector. Vectors that fall in the linear span of previously
kept ones are pruned and never extended, so at most dim = |Q1| + |Q2|
vectors are ever kept and the first witness reported is shortest, with ties
broken by the alphabet's declared symbol order.

The worklist works against any object exposing the small stepping interface
(``initial_config``, ``step_config``, ``final_weight``, ``alphabet``,
``field``); materialized automata and lazy unfoldings both qualify.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Alphabet, Configuration, Dwroca, Word
from .errors import (
    AlphabetMismatch,
    FieldMismatch,
    ParseError,
    ResourceBudgetExceeded,
)
from .fields import FieldElement, FieldSpec, parse_element


class Dwa:
    """A deterministic weighted automaton, optionally initialised.

    No counter: a partial transition table (state, symbol) -> (state, weight),
    a final weight per state, and an optional initial (state, weight).
    Undefined runs count as acceptance weight zero.
    """

    __slots__ = ("states", "alphabet", "field", "transitions", "final_weights", "initial")

    def __init__(
        self,
        states: Sequence[str],
        alphabet,
        transitions: Mapping,
        final_weights: Mapping[str, FieldElement],
        initial: tuple[str, FieldElement] | None = None,
    ):
        states = tuple(states)
        if not states:
            raise ValueError("automaton needs at least one state")
        if len(set(states)) != len(states):
            raise ValueError("state names must be distinct")
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        index = {name: i for i, name in enumerate(states)}
        missing = [name for name in states if name not in final_weights]
        if missing:
            raise ValueError(f"final weight missing for states {missing!r}")
        interned = {}
        for (src, symbol), (dst, weight) in transitions.items():
            if src not in index or dst not in index:
                raise ValueError(f"transition ({src!r}, {symbol!r}) names an unknown state")
            interned[(index[src], alphabet.index_of(symbol))] = (index[dst], weight)
        if initial is not None:
            name, weight = initial
            if name not in index:
                raise ValueError(f"unknown initial state {name!r}")
            initial = (index[name], weight)
            field = weight.spec
        else:
            field = final_weights[states[0]].spec
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "transitions", interned)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(
            self, "final_weights", tuple(final_weights[name] for name in states)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Dwa is immutable")

    @property
    def size(self) -> int:
        return len(self.states)

    def state_index(self, state) -> int:
        if isinstance(state, int):
            if not 0 <= state < len(self.states):
                raise ValueError(f"state index {state} out of range")
            return state
        try:
            return self.states.index(state)
        except ValueError:
            raise ValueError(f"unknown state {state!r}") from None

    def with_initial(self, state, weight: FieldElement) -> "Dwa":
        """A copy of this automaton initialised at the given state and weight."""
        idx = self.state_index(state)
        clone = Dwa.__new__(Dwa)
        object.__setattr__(clone, "states", self.states)
        object.__setattr__(clone, "alphabet", self.alphabet)
        object.__setattr__(clone, "field", weight.spec)
        object.__setattr__(clone, "transitions", self.transitions)
        object.__setattr__(clone, "final_weights", self.final_weights)
        object.__setattr__(clone, "initial", (idx, weight))
        return clone

    def validate(self) -> list[str]:
        violations = []
        if self.initial is not None:
            if self.initial[1].spec != self.field:
                violations.append("initial weight from a different field")
            elif self.initial[1].is_zero:
                violations.append("zero initial weight")
        for (src, sym), (dst, weight) in sorted(self.transitions.items()):
            where = f"({self.states[src]}, {self.alphabet.symbols[sym]})"
            if weight.spec != self.field:
                violations.append(f"weight from a different field at {where}")
            elif weight.is_zero:
                violations.append(f"zero transition weight at {where}")
        for i, weight in enumerate(self.final_weights):
            if weight.spec != self.field:
                violations.append(f"final weight of {self.states[i]} from a different field")
        return violations

    # -- stepping interface (shared with lazy unfoldings) ---------------

    def initial_config(self):
        return self.initial

    def step_config(self, state: int, symbol_index: int):
        return self.transitions.get((state, symbol_index))

    def final_weight(self, state: int) -> FieldElement:
        return self.final_weights[state]

    # -- acceptance -----------------------------------------------------

    def accept_weight(self, start: "WaConfig", word: Word) -> FieldElement:
        """Acceptance weight from a configuration; undefined paths give zero."""
        state, weight = start.state, start.weight
        for symbol in word:
            entry = self.transitions.get((state, self.alphabet.index_of(symbol)))
            if entry is None:
                return self.field.zero()
            state, w = entry
            weight = weight * w
        return weight * self.final_weights[state]

    def initial_accept_weight(self, word: Word) -> FieldElement:
        if self.initial is None:
            raise ValueError("automaton is uninitialised")
        return self.accept_weight(WaConfig(*self.initial), word)

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        obj = {
            "field": self.field.to_json(),
            "states": list(self.states),
            "alphabet": list(self.alphabet.symbols),
        }
        if self.initial is not None:
            obj["initial"] = {
                "state": self.states[self.initial[0]],
                "weight": self.initial[1].render(),
            }
        obj["delta"] = [
            {
                "from": self.states[src],
                "on": self.alphabet.symbols[sym],
                "to": self.states[dst],
                "weight": weight.render(),
            }
            for (src, sym), (dst, weight) in sorted(self.transitions.items())
        ]
        obj["final"] = {
            name: self.final_weights[i].render() for i, name in enumerate(self.states)
        }
        return obj

    @classmethod
    def from_json(cls, obj) -> "Dwa":
        if not isinstance(obj, dict):
            raise ParseError("automaton document must be an object")
        keys = {"field", "states", "alphabet", "delta", "final"}
        has_initial = "initial" in obj
        if has_initial:
            keys.add("initial")
        extra = set(obj) - keys
        if extra:
            raise ParseError(f"unknown key(s) in weighted automaton: {sorted(extra)}")
        missing = keys - set(obj)
        if missing:
            raise ParseError(f"missing key(s) in weighted automaton: {sorted(missing)}")
        field = FieldSpec.from_json(obj["field"])
        states = obj["states"]
        if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
            raise ParseError("states must be a list of strings")
        try:
            alphabet = Alphabet(obj["alphabet"])
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc)) from exc
        if not isinstance(obj["delta"], list):
            raise ParseError("delta must be a list")
        transitions = {}
        for entry in obj["delta"]:
            if not isinstance(entry, dict) or set(entry) != {"from", "on", "to", "weight"}:
                raise ParseError(f"bad delta entry: {entry!r}")
            if entry["from"] not in states or entry["to"] not in states:
                raise ParseError(f"delta entry names unknown state: {entry!r}")
            if entry["on"] not in alphabet:
                raise ParseError(f"delta entry uses unknown symbol {entry['on']!r}")
            key = (entry["from"], entry["on"])
            if key in transitions:
                raise ParseError(f"duplicate delta transition for {key!r}")
            transitions[key] = (entry["to"], parse_element(entry["weight"], field))
        final_obj = obj["final"]
        if not isinstance(final_obj, dict) or set(final_obj) != set(states):
            raise ParseError("final must assign a weight to exactly the declared states")
        final = {name: parse_element(final_obj[name], field) for name in states}
        initial = None
        if has_initial:
            init = obj["initial"]
            if not isinstance(init, dict) or set(init) != {"state", "weight"}:
                raise ParseError("initial must be an object with 'state' and 'weight'")
            if init["state"] not in states:
                raise ParseError(f"initial state {init['state']!r} is not a state")
            initial = (init["state"], parse_element(init["weight"], field))
        return cls(states, alphabet, transitions, final, initial)


@dataclass(frozen=True)
class WaConfig:
    """A weighted-automaton configuration: state index and nonzero weight."""

    state: int
    weight: FieldElement

    def __post_init__(self):
        if self.weight.is_zero:
            raise ValueError("configuration weight must be nonzero")


@dataclass(frozen=True)
class Witness:
    """A word on which the two machines produce different weights."""

    word: tuple[str, ...]
    f1: FieldElement
    f2: FieldElement


@dataclass(frozen=True)
class SearchStats:
    explored_words: int
    basis_size: int
    max_counter_row: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence check.

    ``mode`` is "theoretical" when the search limit covers the proven witness
    bound (so Equivalent is a proof), "bounded" when a user-supplied limit
    truncated the search (Equivalent then means: no witness up to ``bound``).
    """

    equivalent: bool
    witness: Witness | None
    mode: str
    bound: int | None
    stats: SearchStats

    @property
    def outcome(self) -> str:
        return "equivalent" if self.equivalent else "not_equivalent"

    def to_json(self) -> dict:
        obj: dict = {"outcome": self.outcome}
        if self.witness is not None:
            obj["witness"] = render_word(self.witness.word)
            obj["witness_symbols"] = list(self.witness.word)
            obj["f1"] = self.witness.f1.render()
            obj["f2"] = self.witness.f2.render()
        obj["mode"] = self.mode
        if self.bound is not None:
            obj["bound"] = self.bound
        obj["stats"] = {
            "explored_words": self.stats.explored_words,
            "basis_size": self.stats.basis_size,
            "max_counter_row": self.stats.max_counter_row,
        }
        return obj


def render_word(word: Sequence[str]) -> str:
    """Witness text: plain concatenation for single-character symbols,
    comma-separated otherwise (symbols may be multi-character)."""
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ",".join(word)


def _require_compatible(left, right) -> None:
    if left.alphabet != right.alphabet:
        raise AlphabetMismatch("automata must share one alphabet (same symbols, same order)")
    if left.field != right.field:
        raise FieldMismatch("automata must share one field")


def _difference_search(
    left,
    right,
    *,
    max_len: int | None = None,
    budget: int | None = None,
    dimension: int | None = None,
    prune: bool = True,
    row_of=None,
):
    """Breadth-first difference-vector search.

    Returns ``(witness | None, stats)``; None means no witness among the
    explored words, which with pruning enabled covers every word of length
    up to ``max_len`` (all words, when ``max_len`` is None). Raises
    ResourceBudgetExceeded when more than ``budget`` words get dequeued.
    """
    _require_compatible(left, right)
    init_l = left.initial_config()
    init_r = right.initial_config()
    if init_l is None or init_r is None:
        raise ValueError("equivalence search needs initialised automata")
    field = left.field
    zero = field.zero()
    symbol_count = len(left.alphabet)
    symbols = left.alphabet.symbols

    entries: list[tuple[int, int]] = [(-1, -1)]
    queue: deque = deque([(0, 0, init_l, init_r)])
    basis: dict = {}
    explored = 0
    max_row = 0

    def reconstruct(idx: int) -> tuple[str, ...]:
        out = []
        while idx != 0:
            idx, sym = entries[idx]
            out.append(symbols[sym])
        out.reverse()
        return tuple(out)

    while queue:
        idx, depth, cl, cr = queue.popleft()
        explored += 1
        if budget is not None and explored > budget:
            raise ResourceBudgetExceeded(explored, budget)
        if row_of is not None:
            if cl is not None:
                row = row_of(cl[0])
                if row > max_row:
                    max_row = row
            if cr is not None:
                row = row_of(cr[0])
                if row > max_row:
                    max_row = row
        f_left = cl[1] * left.final_weight(cl[0]) if cl is not None else zero
        f_right = cr[1] * right.final_weight(cr[0]) if cr is not None else zero
        if f_left != f_right:
            stats = SearchStats(explored, len(basis), max_row)
            return Witness(reconstruct(idx), f_left, f_right), stats

        if prune:
            vec: dict = {}
            if cl is not None:
                vec[(0, cl[0])] = cl[1]
            if cr is not None:
                vec[(1, cr[0])] = -cr[1]
            # One elimination pass: the basis is kept fully reduced, so
            # basis rows never reintroduce other pivot coordinates.
            for coord in [c for c in vec if c in basis]:
                coeff = vec.get(coord)
                if coeff is None or coeff.is_zero:
                    continue
                for c2, v2 in basis[coord].items():
                    updated = vec.get(c2, zero) - coeff * v2
                    if updated.is_zero:
                        vec.pop(c2, None)
                    else:
                        vec[c2] = updated
            if not vec:
                continue  # spanned by kept vectors: extensions cannot add witnesses
            pivot = min(vec)
            inv = vec[pivot].inverse()
            new_row = {c: v * inv for c, v in vec.items()}
            for row_vec in basis.values():
                coeff = row_vec.get(pivot)
                if coeff is None:
                    continue
                for c2, v2 in new_row.items():
                    updated = row_vec.get(c2, zero) - coeff * v2
                    if updated.is_zero:
                        row_vec.pop(c2, None)
                    else:
                        row_vec[c2] = updated
            basis[pivot] = new_row
            if dimension is not None:
                assert len(basis) <= dimension, "kept more vectors than the space dimension"

        if max_len is not None and depth >= max_len:
            continue
        for sym in range(symbol_count):
            nl = left.step_config(cl[0], sym) if cl is not None else None
            if nl is not None:
                nl = (nl[0], cl[1] * nl[1])
            nr = right.step_config(cr[0], sym) if cr is not None else None
            if nr is not None:
                nr = (nr[0], cr[1] * nr[1])
            if nl is None and nr is None:
                continue  # both stuck: every extension weighs zero on both sides
            entries.append((idx, sym))
            queue.append((len(entries) - 1, depth + 1, nl, nr))

    return None, SearchStats(explored, len(basis), max_row)


def underlying_wa(automaton: Dwroca) -> Dwa:
    """Erase the counter: keep only the positive-counter table's state and
    weight behavior. The result is uninitialised."""
    transitions = {}
    for (src, sym), (dst, _effect, weight) in automaton.delta1.items():
        key = (automaton.states[src], automaton.alphabet.symbols[sym])
        transitions[key] = (automaton.states[dst], weight)
    final = {name: automaton.final_weights[i] for i, name in enumerate(automaton.states)}
    return Dwa(automaton.states, automaton.alphabet, transitions, final)


def dwa_accept_weight(automaton: Dwa, start: WaConfig, word: Word) -> FieldElement:
    """Acceptance weight from ``start`` with the zero-completion convention."""
    return automaton.accept_weight(start, word)


def dwa_equiv(left: Dwa, right: Dwa) -> EquivalenceVerdict:
    """Decide equivalence of two initialised weighted automata.

    The verdict is complete (a proof either way); a reported witness has
    minimal length, ties broken lexicographically by alphabet order.
    """
    if left.initial is None or right.initial is None:
        raise ValueError("dwa_equiv needs initialised automata")
    witness, stats = _difference_search(
        left, right, dimension=left.size + right.size
    )
    return EquivalenceVerdict(witness is None, witness, "theoretical", None, stats)


def bounded_k_equiv(left, right, k: int) -> bool:
    """True iff the two initialised automata agree on every word of length
    at most k. Saturation of the kept-vector basis ends the search early."""
    if k < 0:
        raise ValueError("k must be a natural number")
    dimension = None
    if isinstance(left, Dwa) and isinstance(right, Dwa):
        dimension = left.size + right.size
    witness, _stats = _difference_search(left, right, max_len=k, dimension=dimension)
    return witness is None


def find_k_equiv_wa_config(
    automaton: Dwroca, config: Configuration, wa: Dwa, k: int
) -> WaConfig | None:
    """Find a weighted-automaton configuration k-equivalent to ``config``.

    For a candidate state q, acceptance from (q, t) is linear in t, so the
    first word on which both sides accept with nonzero weight pins t
    exactly; a zero/nonzero mismatch on an earlier word rules q out. The
    pinned candidate is then verified by a depth-k equivalence run against
    the counter automaton restricted to the rows reachable within k steps.
    Returns None when no state of ``wa`` admits any weight.
    """
    from .unfold import LazyUnfolding

    _require_compatible(automaton, wa)
    if k < 0:
        raise ValueError("k must be a natural number")
    view = LazyUnfolding(
        automaton,
        config.counter + k,
        initial_state=(config.state, config.counter),
        initial_weight=config.weight,
    )
    one = automaton.field.one()
    for q in range(wa.size):
        candidate = _pin_weight(view, wa, q, k, one)
        if candidate is None:
            continue
        initialised = wa.with_initial(q, candidate)
        if bounded_k_equiv(view, initialised, k):
            return WaConfig(q, candidate)
    return None


def _pin_weight(view, wa: Dwa, q: int, k: int, one: FieldElement):
    """The forced weight for candidate state q, or None when q is ruled out.

    Scans words in shortest-then-lexicographic order for the first one on
    which either side has nonzero acceptance weight. Nonzero on both sides
    pins the weight; nonzero on exactly one side rules q out; all-zero up
    to depth k means any weight works and 1 is returned.
    """
    zero = view.field.zero()
    start_state = view.initial_config()[0]
    start_weight = view.initial_config()[1]
    queue = deque([(start_state, q, start_weight, one, 0)])
    seen = {(start_state, q)}
    symbol_count = len(view.alphabet)
    while queue:
        sa, sb, wa_weight, wb_weight, depth = queue.popleft()
        fa = wa_weight * view.final_weight(sa) if sa is not None else zero
        gb = wb_weight * wa.final_weight(sb) if sb is not None else zero
        if not fa.is_zero or not gb.is_zero:
            if fa.is_zero or gb.is_zero:
                return None
            return fa * gb.inverse()
        if depth >= k:
            continue
        for sym in range(symbol_count):
            na = view.step_config(sa, sym) if sa is not None else None
            nb = wa.step_config(sb, sym) if sb is not None else None
            if na is None and nb is None:
                continue
            state_a, weight_a = (na[0], wa_weight * na[1]) if na else (None, wa_weight)
            state_b, weight_b = (nb[0], wb_weight * nb[1]) if nb else (None, wb_weight)
            key = (state_a, state_b)
            if key in seen:
                continue
            seen.add(key)
            queue.append((state_a, state_b, weight_a, weight_b, depth + 1))
    return one
