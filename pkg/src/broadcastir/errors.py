"""Exception hierarchy.

The CLI maps these onto exit codes: input problems exit 2, exhausted
budgets exit 3, and invariant violations (including trivial components)
exit 4.
"""


class BroadcastError(Exception):
    """Base class for every error raised by the package."""


class GraphInputError(BroadcastError, ValueError):
    """Malformed graph, broadcast, or family specification."""


class InvalidBroadcastError(GraphInputError):
    """A power exceeds the eccentricity of its vertex, or is negative."""

    def __init__(self, vertex, power, ecc):
        self.vertex = vertex
        self.power = power
        self.ecc = ecc
        super().__init__(
            f"invalid broadcast: f({vertex})={power} exceeds eccentricity {ecc}"
            if power >= 0
            else f"invalid broadcast: f({vertex})={power} is negative"
        )


class PreconditionError(BroadcastError, ValueError):
    """An operation was called outside its domain (e.g. U_f empty)."""


class InvariantViolation(BroadcastError):
    """A mathematical invariant failed. Always a bug or a counterexample."""


class TrivialComponentError(InvariantViolation):
    """The graph has an isolated vertex, so no dominating broadcast exists."""

    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"graph has trivial (K_1) components at vertices {self.vertices}")


class BudgetExceeded(BroadcastError):
    """A search exceeded its configured state or vertex budget."""
