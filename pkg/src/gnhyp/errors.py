"""Exception hierarchy shared by every evaluator."""


class GnError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GnError, ValueError):
    """Argument lies outside the region where an evaluator is valid."""


class ParameterError(GnError, ValueError):
    """Invalid series parameter (e.g. a nonpositive-integer denominator)."""


class ConvergenceError(GnError, ArithmeticError):
    """A series or quadrature hit its work cap before reaching the tolerance."""


NonConvergence = ConvergenceError


class EvaluationError(GnError, RuntimeError):
    """An integrand raised or returned a non-finite value."""


class UnsupportedDimension(GnError, ValueError):
    pass


class PoleError(DomainError):
    def __init__(self, msg: str, depth: int | None = None):
        super().__init__(msg)
        self.depth = depth


class ZeroCoordinate(DomainError):
    pass


class SingularQ(DomainError):
    """Q_n vanishes at the requested point."""


class BranchCutError(DomainError):
    pass


class BranchError(DomainError):
    """Branch anchor or continuity check failed at a quadrature node."""


class BranchPathError(DomainError):
    """A branch-tracking path crosses (or comes too close to) a branch locus."""


class ZeroX3(DomainError):
    pass
