"""Exception types shared across the package."""


class AtckitError(Exception):
    """Base class for all errors raised by atckit."""


class DimensionError(AtckitError):
    """A probability vector has fewer than two components."""


class NotOnSimplexError(AtckitError):
    """A vector is too far from the probability simplex to repair."""


class MissingLabelsError(AtckitError):
    """An operation that needs true labels got an unlabeled set."""


class EmptyInputError(AtckitError):
    """An operation received an empty collection."""


class DimensionMismatchError(AtckitError):
    """Two inputs whose shapes must agree do not."""


class InsufficientCalibrationError(AtckitError):
    """Regression mode needs at least two calibration sets."""


class DegenerateDesignError(AtckitError):
    """All calibration gaps are identical; the regression is singular."""


class ParseError(AtckitError):
    """A prediction dump file is malformed."""
