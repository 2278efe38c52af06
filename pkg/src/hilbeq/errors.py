"""Exception types raised by hilbeq."""


class HilbEqError(Exception):
    """Base class for all hilbeq errors."""


class NotAdmissible(HilbEqError, ValueError):
    """The polynomial has no admissible Gotzmann decomposition."""


class DegenerateDimension(HilbEqError, ValueError):
    """Raised when an operation needs d < n but d >= n."""


class BadMultiIndex(HilbEqError, ValueError):
    pass


class DimensionMismatch(HilbEqError, ValueError):
    pass


class SelectionSizeMismatch(HilbEqError, ValueError):
    pass


class BadComposition(HilbEqError, ValueError):
    pass


class RankDeficient(HilbEqError, ValueError):
    """A matrix representing a Grassmannian point does not have full row rank."""


class ParseError(HilbEqError, ValueError):
    pass
