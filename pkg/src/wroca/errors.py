"""Exception types shared across the package."""


class WrocaError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(WrocaError):
    """Elements or automata over different fields were combined."""


class DivisionByZero(WrocaError, ZeroDivisionError):
    """Multiplicative inverse of the zero element was requested."""


class ParseError(WrocaError):
    """Malformed element text or JSON document."""


class UnknownSymbol(WrocaError):
    """A word contains a symbol that is not in the alphabet."""


class IntervalOutOfBounds(WrocaError):
    """A removal interval does not fit inside the word."""


class AlphabetMismatch(WrocaError):
    """Two automata that must share an alphabet do not."""


class InvalidAutomaton(WrocaError):
    """An operation required a valid automaton but validation failed."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid automaton: " + "; ".join(self.violations))


class BoundTooLarge(WrocaError):
    """Materializing an unfolding would exceed the state cap."""

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(f"unfolding needs {required} states, cap is {cap}")


class ResourceBudgetExceeded(WrocaError):
    """The equivalence search gave up after exhausting its exploration budget.

    This is deliberately distinct from any verdict: nothing was decided.
    """

    def __init__(self, explored, budget):
        self.explored = explored
        self.budget = budget
        super().__init__(f"explored {explored} words, budget is {budget}")


class BudgetExceeded(WrocaError):
    """A brute-force oracle run exceeded its configured work budget."""


class PreconditionViolated(WrocaError):
    """A property-trial precondition does not hold; carries the failed clause."""

    def __init__(self, clause):
        self.clause = clause
        super().__init__(f"precondition violated: {clause}")
