"""Exception types shared across the package."""


class ShiftframeError(Exception):
    """Base class for all package-specific errors."""


class NonConvergent(ShiftframeError):
    """A quadrature or iteration failed to reach the requested tolerance."""


class IndexOutOfRange(ShiftframeError):
    """A factor index does not address an existing window component."""


class UnsupportedKind(ShiftframeError):
    """The operation is not defined for this window kind."""


class TooFewPoints(ShiftframeError):
    """The point set is too small for the requested statistic."""


class DuplicatePoints(ShiftframeError):
    """The input contains (numerically) coincident points."""


class JitterTooLarge(ShiftframeError):
    """Jitter amplitude would destroy separation of the perturbed lattice."""


class WindowTooLarge(ShiftframeError):
    """Counting window radius exceeds what the finite data can anchor."""


class EmptyWindow(ShiftframeError):
    """No points of the set fall inside the truncation window."""


class DegenerateMatrix(ShiftframeError):
    """Matrix entries are all below tolerance; singular values are meaningless."""


class IllConditioned(ShiftframeError):
    """The system's smallest singular value sits below the stability floor."""


class Infeasible(ShiftframeError):
    """No coefficient sequence attains the requested values within tolerance."""


class ZeroOnContour(ShiftframeError):
    """A zero sits (numerically) on the counting contour even after perturbation."""
