"""Exception hierarchy shared by the exact and numeric layers."""


class QuasiHopfError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(QuasiHopfError, ZeroDivisionError):
    pass


class PoleAtPoint(QuasiHopfError, ArithmeticError):
    pass


class VariableMismatch(QuasiHopfError, ValueError):
    pass


class NonUnitConstantTerm(QuasiHopfError, ValueError):
    pass


class NonStabilizingFactor(QuasiHopfError, ValueError):
    pass


class RankMismatch(QuasiHopfError, ValueError):
    pass


class SlotOutOfRange(QuasiHopfError, IndexError):
    pass


class NonConvergent(QuasiHopfError, ArithmeticError):
    pass


class ZeroArgument(QuasiHopfError, ValueError):
    pass


class PoleAtNonpositive(QuasiHopfError, ArithmeticError):
    pass


class PoleInC(QuasiHopfError, ArithmeticError):
    pass


class DomainError(QuasiHopfError, ValueError):
    pass


class UnknownCheck(QuasiHopfError, KeyError):
    pass


class UnknownMatrix(QuasiHopfError, KeyError):
    pass


class InvalidParams(QuasiHopfError, ValueError):
    """A parameter violates a domain guard; ``guard`` names the violated one."""

    def __init__(self, message, guard=None):
        super().__init__(message)
        self.guard = guard


class ConfigParseError(QuasiHopfError, ValueError):
    pass
