"""Exception hierarchy; CLI exit codes hang off these classes."""


class SkewRankError(Exception):
    exit_code = 1


class OrderError(SkewRankError, ValueError):
    """A cyclotomic element cannot be expressed in the requested order."""


class DimensionError(SkewRankError, ValueError):
    """Mismatched variable counts or matrix sizes."""


class InvalidGroupSpec(SkewRankError, ValueError):
    exit_code = 2


class CapExceeded(SkewRankError):
    exit_code = 3


class NotRegularError(SkewRankError, ValueError):
    exit_code = 4


class VerificationError(SkewRankError):
    exit_code = 5


class BudgetExceeded(SkewRankError):
    exit_code = 6


class MolienError(SkewRankError):
    """The Molien series did not factor as a product of 1/(1 - t^d)."""
