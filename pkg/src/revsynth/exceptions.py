"""Exception hierarchy shared by every module of the package."""


class RevSynthError(Exception):
    """Base class for all errors raised by revsynth."""


class IndexOutOfRange(RevSynthError, IndexError):
    """A gate or state refers to a wire that does not exist."""


class DegenerateGate(RevSynthError, ValueError):
    """Duplicate controls, or the target is one of the controls."""


class WidthMismatch(RevSynthError, ValueError):
    """An input word or truth table does not match the circuit's significant inputs."""


class TooLarge(RevSynthError, ValueError):
    """Exhaustive enumeration over 2**n inputs was requested beyond the cap."""


class BudgetInfeasible(RevSynthError, ValueError):
    pass


class ScratchExhausted(RevSynthError, RuntimeError):
    """A provider's scratch pool is held by an outstanding handle."""


class DoubleRelease(RevSynthError, RuntimeError):
    pass


class QBudgetTooSmall(RevSynthError, ValueError):
    """The ancilla budget cannot fit even the cheapest parameter set."""

    def __init__(self, q, minimum):
        self.q = q
        self.minimum = minimum
        super().__init__(f"ancilla budget q={q} is too small; minimum feasible budget is {minimum}")


class ParseError(RevSynthError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WrongLineCount(ParseError):
    pass


class BadDigit(ParseError):
    pass


class UnknownGateArity(ParseError):
    pass
