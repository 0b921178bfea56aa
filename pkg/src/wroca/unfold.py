"""Row-bounded unfolding of a one-counter automaton into a weighted automaton.

Unfolding with bound M keeps one copy of every control state per counter
row 0..M (so |Q| * (M + 1) states in total). Row 0 carries exactly the
zero-test transitions, rows 1..M the positive-counter ones, and any move
that would leave the row range is dropped, making the word undefined there.
Words whose run never pushes the counter above M keep their exact
acceptance weight.

Also computes the polynomial bounds that make bounded search complete: the
witness-length bound grows like K^26 and the counter-value bound like K^12
in the combined state count K, so the theoretical bound is a completeness
guarantee rather than a practical loop count; equivalence search explores
the unfolding lazily instead of materializing it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Dwroca
from .dwa import Dwa
from .errors import BoundTooLarge, InvalidAutomaton

DEFAULT_STATE_CAP = 10_000_000

# Derived defaults for the two partition polynomials (initial-space size
# 14 K^6 and belt thickness 6 K^4). Overridable so pipeline correctness
# never hinges on the exact coefficients.
INITIAL_SPACE_COEFF = 14
BELT_THICKNESS_COEFF = 6


@dataclass(frozen=True)
class UnfoldBound:
    """A counter-row bound for unfolding; arbitrary-precision natural."""

    rows: int

    def __post_init__(self):
        if self.rows < 0:
            raise ValueError("unfold bound must be a natural number")


def _rows(bound) -> int:
    return bound.rows if isinstance(bound, UnfoldBound) else bound


@dataclass(frozen=True)
class BoundReport:
    """The exact integer bounds for a combined state count k.

    ``witness_bound`` caps the length of a minimal distinguishing word of
    two inequivalent machines; ``counter_bound`` caps the counter values in
    its run. ``initial_space`` and ``belt_thickness`` are the partition
    polynomials those are assembled from.
    """

    k: int
    initial_space: int
    belt_thickness: int
    counter_bound: int
    witness_bound: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "initial_space": self.initial_space,
            "belt_thickness": self.belt_thickness,
            "counter_bound": self.counter_bound,
            "witness_bound": self.witness_bound,
        }


def bounds_for_k(
    k: int,
    initial_coeff: int = INITIAL_SPACE_COEFF,
    belt_coeff: int = BELT_THICKNESS_COEFF,
) -> BoundReport:
    """Evaluate the bound polynomials at a combined state count k >= 1.

    Initial space ``c1 * k^6``, belt thickness ``c2 * k^4``, counter bound
    ``P1 + 2 ((k^2 P2)^2 + 1)``, witness bound ``2 (k * P3)^2``; all exact
    big integers.
    """
    if k < 1:
        raise ValueError("combined size must be at least 1")
    if initial_coeff < 1 or belt_coeff < 1:
        raise ValueError("polynomial coefficients must be at least 1")
    initial_space = initial_coeff * k**6
    belt_thickness = belt_coeff * k**4
    counter_bound = initial_space + 2 * ((k * k * belt_thickness) ** 2 + 1)
    witness_bound = 2 * (k * counter_bound) ** 2
    return BoundReport(k, initial_space, belt_thickness, counter_bound, witness_bound)


def compute_bounds(
    size1: int,
    size2: int,
    initial_coeff: int = INITIAL_SPACE_COEFF,
    belt_coeff: int = BELT_THICKNESS_COEFF,
) -> BoundReport:
    """Exact bounds for a pair of machines of the given sizes."""
    if size1 < 1 or size2 < 1:
        raise ValueError("automaton sizes must be at least 1")
    return bounds_for_k(size1 + size2, initial_coeff, belt_coeff)


class LazyUnfolding:
    """On-demand view of the unfolding: states are (state, row) pairs.

    Exposes the same stepping interface as a materialized automaton, so the
    equivalence worklist can explore reachable rows only. The default
    initial configuration is ((q0, 0), s0); a different start is available
    for runs from arbitrary configurations.
    """

    __slots__ = ("automaton", "bound", "alphabet", "field", "_initial")

    def __init__(
        self,
        automaton: Dwroca,
        bound: int,
        initial_state: tuple[int, int] | None = None,
        initial_weight=None,
    ):
        if bound < 0:
            raise ValueError("unfold bound must be a natural number")
        object.__setattr__(self, "automaton", automaton)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "alphabet", automaton.alphabet)
        object.__setattr__(self, "field", automaton.field)
        if initial_state is None:
            initial = ((automaton.initial_state, 0), automaton.initial_weight)
        else:
            state, row = initial_state
            if not 0 <= row <= bound:
                raise ValueError(f"initial row {row} outside [0, {bound}]")
            weight = automaton.initial_weight if initial_weight is None else initial_weight
            initial = ((state, row), weight)
        object.__setattr__(self, "_initial", initial)

    def __setattr__(self, name, value):
        raise AttributeError("LazyUnfolding is immutable")

    def initial_config(self):
        return self._initial

    def step_config(self, state: tuple[int, int], symbol_index: int):
        q, row = state
        entry = self.automaton.transition(q, row, symbol_index)
        if entry is None:
            return None
        dst, effect, weight = entry
        row += effect
        if row < 0 or row > self.bound:
            return None
        return ((dst, row), weight)

    def final_weight(self, state: tuple[int, int]):
        return self.automaton.final_weights[state[0]]

    @staticmethod
    def row_of(state: tuple[int, int]) -> int:
        return state[1]


def unfold(automaton: Dwroca, bound: int, state_cap: int | None = None) -> Dwa:
    """Materialize the unfolding as an initialised weighted automaton.

    States are named "state#row" over rows 0..bound, giving
    |Q| * (bound + 1) states. Refuses to build more states than
    ``state_cap`` (default 10^7).
    """
    violations = automaton.validate()
    if violations:
        raise InvalidAutomaton(violations)
    if bound < 0:
        raise ValueError("unfold bound must be a natural number")
    cap = DEFAULT_STATE_CAP if state_cap is None else state_cap
    required = automaton.size * (bound + 1)
    if required > cap:
        raise BoundTooLarge(required, cap)

    def name(state: int, row: int) -> str:
        return f"{automaton.states[state]}#{row}"

    states = [name(q, row) for row in range(bound + 1) for q in range(automaton.size)]
    transitions = {}
    for row in range(bound + 1):
        table = automaton.delta0 if row == 0 else automaton.delta1
        for (src, sym), (dst, effect, weight) in table.items():
            target_row = row + effect
            if 0 <= target_row <= bound:
                key = (name(src, row), automaton.alphabet.symbols[sym])
                transitions[key] = (name(dst, target_row), weight)
    final = {
        name(q, row): automaton.final_weights[q]
        for row in range(bound + 1)
        for q in range(automaton.size)
    }
    initial = (name(automaton.initial_state, 0), automaton.initial_weight)
    return Dwa(states, automaton.alphabet, transitions, final, initial)
