"""Exception hierarchy shared by all tsgeom modules."""


class TsgeomError(Exception):
    """Base class for data errors raised by tsgeom."""


class InvalidInputError(TsgeomError, ValueError):
    """Non-finite samples, bad parameters or out-of-range indices."""


class EmptyInputError(TsgeomError, ValueError):
    """Input too short for the requested computation."""


class SpecError(TsgeomError, ValueError):
    """Malformed generator or network specification."""


class ClassificationError(TsgeomError, ValueError):
    """A neighbourhood's sign triple matched none of the 13 configurations.

    Only reachable with a nonzero tolerance, where rounding each difference
    to a sign independently can produce an unrealizable pattern.
    """

    def __init__(self, index, triple):
        self.index = index
        self.triple = triple
        super().__init__(
            f"unrealizable sign pattern at sample {index}: "
            f"d_left={triple[0]!r}, d2={triple[1]!r}, d_right={triple[2]!r}"
        )


class CorruptedInputError(TsgeomError, ValueError):
    """A symbol string contains a transition no real signal can produce."""

    def __init__(self, index, pair):
        self.index = index
        self.pair = pair
        super().__init__(f"forbidden transition {pair[0]}->{pair[1]} at symbol {index}")


class NoDefinedValueError(TsgeomError, ValueError):
    """Every window of a series carries the undefined sentinel."""


class DivergenceError(TsgeomError, ArithmeticError):
    """Numerical integration produced a non-finite state."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"non-finite phase encountered at step {step}")


class IngestError(TsgeomError):
    """A CSV file could not be turned into a channel table."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
