"""Brute-force oracles, seeded random instance generation, and loop-removal
property drivers.

The oracle enumerates every word in shortest-then-lexicographic order and
reports the first weight mismatch, so its witness is minimal by
construction. It walks the word tree as synchronized configuration pairs,
which allows two exact accelerations that leave the enumeration semantics
untouched: subtrees where both machines are stuck agree everywhere (all
weights zero), and two tree nodes with the same states, counters, and
weight ratio have identical mismatch patterns, so only the
lexicographically first of them needs expanding. Both can be switched off
to get the plain word-by-word walk.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dataclass_field

from .core import Configuration, Dwroca, PumpingIntervals, Word, remove_intervals
from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    FieldMismatch,
    PreconditionViolated,
)
from .fields import FieldElement, FieldSpec, rational

DEFAULT_ORACLE_BUDGET = 5_000_000

_SYMBOL_POOL = "abcdefghijklmnopqrstuvwxyz"


def default_weight_pool(spec: FieldSpec) -> tuple[FieldElement, ...]:
    """Small nonzero weights; small pools make collisions (and therefore
    genuinely equivalent random pairs) likely."""
    if spec.kind == "rational":
        return (
            spec.element(1),
            spec.element(2),
            spec.element(3),
            spec.element("1/2"),
            spec.element(-1),
        )
    return tuple(spec.element(i) for i in range(1, spec.modulus))


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for seeded random automaton generation."""

    seed: int
    num_states: tuple[int, int] = (2, 4)
    alphabet_size: tuple[int, int] = (2, 2)
    field: FieldSpec = dataclass_field(default_factory=rational)
    weight_pool: tuple[FieldElement, ...] | None = None
    density: float = 0.8
    zero_final_prob: float = 0.3

    def __post_init__(self):
        lo, hi = self.num_states
        if not 1 <= lo <= hi:
            raise ValueError("num_states range must satisfy 1 <= lo <= hi")
        lo, hi = self.alphabet_size
        if not 1 <= lo <= hi <= len(_SYMBOL_POOL):
            raise ValueError("alphabet_size range out of range")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be in [0, 1]")
        if not 0.0 <= self.zero_final_prob <= 1.0:
            raise ValueError("zero_final_prob must be in [0, 1]")
        if self.weight_pool is not None:
            if not self.weight_pool:
                raise ValueError("weight pool must be non-empty")
            for w in self.weight_pool:
                if w.spec != self.field:
                    raise ValueError("weight pool element from a different field")
                if w.is_zero:
                    raise ValueError("weight pool must not contain zero")

    def pool(self) -> tuple[FieldElement, ...]:
        return self.weight_pool if self.weight_pool is not None else default_weight_pool(self.field)


def generate(cfg: GeneratorConfig) -> Dwroca:
    """A validate-clean random automaton; the same seed rebuilds it exactly."""
    rng = random.Random(cfg.seed)
    n = rng.randint(*cfg.num_states)
    k = rng.randint(*cfg.alphabet_size)
    states = tuple(f"q{i}" for i in range(n))
    symbols = tuple(_SYMBOL_POOL[:k])
    pool = cfg.pool()
    delta0 = {}
    delta1 = {}
    for src in states:
        for symbol in symbols:
            if rng.random() < cfg.density:
                delta0[(src, symbol)] = (
                    states[rng.randrange(n)],
                    rng.choice((0, 1)),
                    rng.choice(pool),
                )
            if rng.random() < cfg.density:
                delta1[(src, symbol)] = (
                    states[rng.randrange(n)],
                    rng.choice((-1, 0, 1)),
                    rng.choice(pool),
                )
    final = {}
    for state in states:
        if rng.random() < cfg.zero_final_prob:
            final[state] = cfg.field.zero()
        else:
            final[state] = rng.choice(pool)
    initial_weight = rng.choice(pool)
    return Dwroca(states, symbols, states[0], initial_weight, delta0, delta1, final)


def split_state(automaton: Dwroca, seed: int) -> Dwroca:
    """An equivalent but non-isomorphic copy: duplicate one state and split
    its incoming transitions randomly between the original and the copy."""
    rng = random.Random(seed)
    target = rng.randrange(automaton.size)
    target_name = automaton.states[target]
    copy_name = target_name + "'"
    while copy_name in automaton.states:
        copy_name += "'"
    states = automaton.states + (copy_name,)

    def retarget(dst: int) -> str:
        if dst == target and rng.random() < 0.5:
            return copy_name
        return automaton.states[dst]

    def rebuild(table):
        out = {}
        for (src, sym), (dst, effect, weight) in sorted(table.items()):
            symbol = automaton.alphabet.symbols[sym]
            out[(automaton.states[src], symbol)] = (retarget(dst), effect, weight)
            if src == target:
                out[(copy_name, symbol)] = (retarget(dst), effect, weight)
        return out

    delta0 = rebuild(automaton.delta0)
    delta1 = rebuild(automaton.delta1)
    final = {name: automaton.final_weights[i] for i, name in enumerate(automaton.states)}
    final[copy_name] = automaton.final_weights[target]
    initial = automaton.states[automaton.initial_state]
    if automaton.initial_state == target and rng.random() < 0.5:
        initial = copy_name
    return Dwroca(
        states,
        automaton.alphabet,
        initial,
        automaton.initial_weight,
        delta0,
        delta1,
        final,
    )


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exhaustive shortest-first enumeration.

    ``agreement_table[l]`` counts the words of length l confirmed to agree:
    the full count for every completed length, and the number of words
    lexicographically before the witness at the witness length.
    """

    shortest_witness: tuple[str, ...] | None
    checked_up_to: int
    agreement_table: tuple[int, ...]


def _require_same_shape(a1: Dwroca, a2: Dwroca) -> None:
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatch("oracle needs a shared alphabet")
    if a1.field != a2.field:
        raise FieldMismatch("oracle needs a shared field")


def brute_force_witness(
    a1: Dwroca,
    a2: Dwroca,
    max_len: int,
    *,
    node_budget: int = DEFAULT_ORACLE_BUDGET,
    collapse: bool = True,
) -> OracleResult:
    """Enumerate every word of length <= max_len in shortest-then-lex order
    and return the first acceptance-weight mismatch (zero-completed).

    ``collapse=False`` disables the exact node-collapsing accelerations and
    walks one node per word; the result is identical either way.
    """
    if max_len < 0:
        raise ValueError("max_len must be a natural number")
    _require_same_shape(a1, a2)
    zero = a1.field.zero()
    symbols = a1.alphabet.symbols
    m = len(symbols)

    def advance(machine, cfg, sym):
        if cfg is None:
            return None
        state, counter, weight = cfg
        entry = machine.transition(state, counter, sym)
        if entry is None:
            return None
        dst, effect, w = entry
        return (dst, counter + effect, weight * w)

    def accept(machine, cfg):
        if cfg is None:
            return zero
        return cfg[2] * machine.final_weights[cfg[0]]

    start1 = (a1.initial_state, 0, a1.initial_weight)
    start2 = (a2.initial_state, 0, a2.initial_weight)
    level = [((), start1, start2)]
    agreement = []
    nodes = 0
    for depth in range(max_len + 1):
        for word, c1, c2 in level:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"oracle processed more than {node_budget} nodes")
            if accept(a1, c1) != accept(a2, c2):
                rank = 0
                for i, symbol in enumerate(word):
                    rank += a1.alphabet.index_of(symbol) * m ** (len(word) - 1 - i)
                agreement.append(rank)
                return OracleResult(word, depth, tuple(agreement))
        agreement.append(m**depth)
        if depth == max_len:
            break
        nxt = []
        seen = set()
        for word, c1, c2 in level:
            for sym in range(m):
                d1 = advance(a1, c1, sym)
                d2 = advance(a2, c2, sym)
                if collapse:
                    if d1 is None and d2 is None:
                        continue  # both stuck: the whole subtree agrees at weight zero
                    key = _collapse_key(d1, d2)
                    if key in seen:
                        continue
                    seen.add(key)
                nxt.append((word + (symbols[sym],), d1, d2))
        level = nxt
    return OracleResult(None, max_len, tuple(agreement))


def _collapse_key(c1, c2):
    # Same states and counters with the same weight ratio give the same
    # mismatch pattern on every suffix; stuck sides compare by zero-ness
    # only, so their weight is irrelevant.
    if c1 is None:
        return (None, None, c2[0], c2[1], None)
    if c2 is None:
        return (c1[0], c1[1], None, None, None)
    return (c1[0], c1[1], c2[0], c2[1], c2[2] / c1[2])


def language_equiv_witness(a1: Dwroca, a2: Dwroca, max_len: int):
    """First word (shortest-then-lex) accepted with nonzero weight by exactly
    one machine, or None. Plain language comparison, no weight arithmetic."""
    if max_len < 0:
        raise ValueError("max_len must be a natural number")
    _require_same_shape(a1, a2)
    symbols = a1.alphabet.symbols
    m = len(symbols)

    def advance(machine, cfg, sym):
        if cfg is None:
            return None
        state, counter = cfg
        entry = machine.transition(state, counter, sym)
        if entry is None:
            return None
        dst, effect, _weight = entry
        return (dst, counter + effect)

    def member(machine, cfg):
        return cfg is not None and not machine.final_weights[cfg[0]].is_zero

    level = [((), (a1.initial_state, 0), (a2.initial_state, 0))]
    for depth in range(max_len + 1):
        for word, c1, c2 in level:
            if member(a1, c1) != member(a2, c2):
                return word
        if depth == max_len:
            break
        nxt = []
        seen = set()
        for word, c1, c2 in level:
            for sym in range(m):
                d1 = advance(a1, c1, sym)
                d2 = advance(a2, c2, sym)
                if d1 is None and d2 is None:
                    continue
                key = (d1, d2)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((word + (symbols[sym],), d1, d2))
        level = nxt
    return None


def find_pumpings(
    automaton: Dwroca,
    config: Configuration,
    word: Word,
    *,
    max_results: int = 64,
) -> list[PumpingIntervals]:
    """Interval lists that are valid pumpings of ``word`` from ``config``:
    the empty list, single loops, and pairs of disjoint loops, capped at
    ``max_results``. Every returned list passes check_pumping."""
    run = automaton.run_word(config, word)
    if not run.ok:
        raise ValueError(f"run of {word!r} is undefined at position {run.stuck_at}")
    n = len(run)
    results = [PumpingIntervals()]
    loops = [
        (i, j)
        for i in range(n)
        for j in range(i, n)
        if run.state_at(i) == run.state_at(j + 1)
    ]
    for interval in loops:
        if len(results) >= max_results:
            return results
        candidate = PumpingIntervals([interval])
        if automaton.check_pumping(config, word, candidate):
            results.append(candidate)
    for first, second in itertools.combinations(loops, 2):
        if len(results) >= max_results:
            return results
        if second[0] <= first[1]:
            continue  # overlapping or touching loops cannot both be removed
        candidate = PumpingIntervals([first, second])
        if automaton.check_pumping(config, word, candidate):
            results.append(candidate)
    return results


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one loop-removal trial: whether the merged interval list is
    itself a pumping, and which residual words distinguish the machines."""

    union_is_pumping: bool
    distinguishing: tuple[str, ...]
    passed: bool


def theorem1_trial(
    a1: Dwroca,
    a2: Dwroca,
    c: Configuration,
    c_prime: Configuration,
    word: Word,
    intervals_i: PumpingIntervals,
    intervals_j: PumpingIntervals,
) -> TrialOutcome:
    """Verify the loop-removal property on one instance.

    Preconditions (PreconditionViolated otherwise): the interval lists are
    disjoint, each is a pumping of ``word`` from both configurations, and
    the full word distinguishes the configurations. The trial passes when
    the merged list is again a pumping from both sides and at least one of
    the three residual words still distinguishes.
    """
    if not intervals_i.disjoint_from(intervals_j):
        raise PreconditionViolated("interval lists I and J overlap")
    checks = (
        ("I is not a pumping from c", a1, c, intervals_i),
        ("I is not a pumping from c'", a2, c_prime, intervals_i),
        ("J is not a pumping from c", a1, c, intervals_j),
        ("J is not a pumping from c'", a2, c_prime, intervals_j),
    )
    for clause, machine, start, intervals in checks:
        try:
            ok = machine.check_pumping(start, word, intervals)
        except ValueError as exc:
            raise PreconditionViolated(str(exc)) from exc
        if not ok:
            raise PreconditionViolated(clause)
    if a1.accept_weight(word, c) == a2.accept_weight(word, c_prime):
        raise PreconditionViolated("the full word does not distinguish c and c'")
    union = intervals_i.union(intervals_j)
    union_ok = a1.check_pumping(c, word, union) and a2.check_pumping(
        c_prime, word, union
    )
    labels = []
    for label, intervals in (("w_I", intervals_i), ("w_J", intervals_j), ("w_IJ", union)):
        residual = remove_intervals(word, intervals)
        if a1.accept_weight_or_zero(residual, c) != a2.accept_weight_or_zero(residual, c_prime):
            labels.append(label)
    return TrialOutcome(union_ok, tuple(labels), union_ok and bool(labels))


def harvest_theorem1_tuples(
    a1: Dwroca,
    a2: Dwroca,
    max_word_len: int,
    *,
    max_tuples: int,
    require_nonempty: bool = True,
):
    """Collect (c, c', word, I, J) tuples satisfying the trial preconditions
    from the initial configurations, by exhaustive search over words up to
    ``max_word_len`` and the pumpings valid from both sides."""
    _require_same_shape(a1, a2)
    out = []
    c = a1.initial_configuration()
    c_prime = a2.initial_configuration()
    symbols = a1.alphabet.symbols
    for length in range(1, max_word_len + 1):
        for word in itertools.product(symbols, repeat=length):
            run1 = a1.run_word(c, word)
            run2 = a2.run_word(c_prime, word)
            if not (run1.ok and run2.ok):
                continue
            if a1.accept_weight(word, c) == a2.accept_weight(word, c_prime):
                continue
            shared = [
                intervals
                for intervals in find_pumpings(a1, c, word)
                if a2.check_pumping(c_prime, word, intervals)
            ]
            for intervals_i, intervals_j in itertools.combinations(shared, 2):
                if not intervals_i.disjoint_from(intervals_j):
                    continue
                if require_nonempty and not (len(intervals_i) or len(intervals_j)):
                    continue
                out.append((c, c_prime, word, intervals_i, intervals_j))
                if len(out) >= max_tuples:
                    return out
    return out


def random_words(alphabet, count: int, max_len: int, seed: int) -> list[tuple[str, ...]]:
    """Seeded random words over the alphabet, lengths uniform in [0, max_len]."""
    rng = random.Random(seed)
    symbols = tuple(alphabet)
    out = []
    for _ in range(count):
        length = rng.randint(0, max_len)
        out.append(tuple(rng.choice(symbols) for _ in range(length)))
    return out
