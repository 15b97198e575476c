"""Exception types shared across the package."""


class StrangenessError(Exception):
    """Base class for all library errors."""


class ParseError(StrangenessError):
    """A scene or script file could not be parsed."""


class SceneValidationError(StrangenessError):
    """A mesh violates the closed-oriented-surface invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class GenericityError(StrangenessError):
    """The scene is not in general position.

    ``witness`` names the offending point / triangle pair when known.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DegenerateSamplingError(StrangenessError):
    """Retry budget exhausted while dodging degenerate ray or sample contacts."""


class ConsistencyError(StrangenessError):
    """An internal cross-check failed (eight-region law, BFS propagation, ...).

    Signals a bug in arrangement or numbering, never a property of the input.
    """


class MoveInputError(StrangenessError):
    """A move event's declared metadata is unusable (bad witness, no static
    triple point, transition outside the four classes)."""


class CatalogueError(StrangenessError):
    """Unknown canned scene or script name."""
