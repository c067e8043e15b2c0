"""Exception types shared across the library."""


class LambdaForgeError(Exception):
    """Base class for all library errors."""


class PresentationMismatch(LambdaForgeError):
    """Two series (or a series and a map) live over different presentations."""


class FilteredMapError(LambdaForgeError):
    """A generator image violates the filtered or graded map condition."""


class RelationViolation(LambdaForgeError):
    """A ring map fails to send a defining relation to zero."""


class UnsupportedRelation(LambdaForgeError):
    """A relation falls outside the supported rewrite classes."""


class MissingEntry(LambdaForgeError):
    """A requested lambda/psi entry is absent from the family."""


class DivisibilityFailure(LambdaForgeError):
    """Exact division by k failed while solving the Newton recursion."""

    def __init__(self, k, generator, message=None):
        self.k = k
        self.generator = generator
        super().__init__(
            message or f"coefficientwise division by {k} failed for generator {generator!r}"
        )


class TorsionCoefficients(LambdaForgeError):
    """The coefficient ring has torsion, so lambda extraction is unavailable."""


class LevelTooLow(LambdaForgeError):
    """A truncation level violates the lifting hypothesis (level must exceed the bound)."""

    def __init__(self, level, bound):
        self.level = level
        self.bound = bound
        super().__init__(f"level {level} does not exceed the required bound {bound}")


class BudgetExceeded(LambdaForgeError):
    """An exhaustive enumeration would exceed the configured budget."""


class ShapeError(LambdaForgeError):
    """A KO-model action does not have the required leading shape."""


class MalformedStructure(LambdaForgeError):
    """A structure violates a load-time normalization constraint."""


class Unsatisfiable(LambdaForgeError):
    """The degree-by-degree solver found no integer solution inside its box."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"no solution within the coefficient box at degree {level}")


class InvalidTransport(LambdaForgeError):
    """Transport data violates the divisibility constraint on the quadratic part."""


class ParseError(LambdaForgeError):
    """Polynomial text failed to parse; carries 1-based line/column."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class InputError(LambdaForgeError):
    """A structure file or CLI argument failed validation."""
