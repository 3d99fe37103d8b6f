"""Exception types shared across the package."""


class TwistLabError(Exception):
    """Base class for all package-specific errors."""


class TwistViolationError(TwistLabError):
    """The derivative tilted a vertical direction the wrong way.

    Raised when the (1,2) Jacobian entry is non-positive at a point where
    a positive twist was required.
    """


class DegenerateAnchorError(TwistLabError):
    """The anchored angle representative is ambiguous.

    The one-step variation of a direction is pinned to within half a turn
    of the vertical direction's variation.  If the two classes differ by
    almost exactly half a turn the input is ill-conditioned.
    """


class BracketExpansionError(TwistLabError):
    """Root bracketing failed within the configured search range."""


class NonMonotoneBracketError(TwistLabError):
    """Sampled values of a supposedly increasing function decreased.

    For curve construction this signals conjugate points: the composed map
    no longer tilts verticals monotonically, so the root is not unique.
    """


class IterationCapError(TwistLabError):
    """An orbit request exceeded the configured horizon cap."""


class CoincidentPointsError(TwistLabError):
    """Linking numbers need two distinct points with distinct orbits."""
