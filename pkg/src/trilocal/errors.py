"""Exception types shared across the package."""


class TrilocalError(Exception):
    """Base class for all package errors."""


class FamilyMismatchError(TrilocalError, ValueError):
    """Operands belong to different bimodule families."""


class AlphabetMismatchError(TrilocalError, ValueError):
    """Free-algebra operands have different coefficient rings or alphabets."""


class UnsupportedRingError(TrilocalError, ValueError):
    """The requested reduction is not available over this ring."""


class UnsupportedFamilyError(TrilocalError, ValueError):
    """The requested operation is not available for this family."""


class BudgetExceededError(TrilocalError, RuntimeError):
    """Normalization exhausted its rewrite-step budget."""

    def __init__(self, limit):
        super().__init__(f"normalization exceeded the step budget of {limit}")
        self.limit = limit


class ParseError(TrilocalError, ValueError):
    """Expression text failed to parse; carries the failing offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class SchemaError(TrilocalError, ValueError):
    """A JSON descriptor or module spec violates its schema."""
