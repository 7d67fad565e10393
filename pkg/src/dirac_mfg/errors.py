"""Exceptions raised by the solver and its helpers."""


class MFGError(Exception):
    """Base class for all package errors."""


class EmptyMeasure(MFGError, ValueError):
    pass


class DuplicatePosition(MFGError, ValueError):
    pass


class NonpositiveWeight(MFGError, ValueError):
    pass


class LengthMismatch(MFGError, ValueError):
    pass


class IndexOutOfRange(MFGError, IndexError):
    pass


class NonpositiveLevel(MFGError, ValueError):
    pass


class NonpositiveTarget(MFGError, ValueError):
    pass


class NotInG(MFGError, ValueError):
    """The level vector has at least one bubble of zero length."""


class SingularMatrix(MFGError, ArithmeticError):
    pass


class NotConverged(MFGError, RuntimeError):
    """Raised by :func:`dirac_mfg.solver.solve`; the last report is attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
