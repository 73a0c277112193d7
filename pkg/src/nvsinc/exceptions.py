"""Exception hierarchy shared by every nvsinc module."""


class NvsincError(ValueError):
    """Base class for all errors raised by nvsinc."""


class BandEdgeOutOfRange(NvsincError):
    pass


class OddN(NvsincError):
    pass


class NTooSmall(NvsincError):
    pass


class NonFiniteTime(NvsincError):
    pass


class EmptyWindow(NvsincError):
    pass


class OmegaOutOfRange(NvsincError):
    pass


class WindowExceedsGrid(NvsincError):
    pass


class QuadratureNotConverged(NvsincError, ArithmeticError):
    """Quadrature estimates did not settle, or the Hermitian residue is too large."""
