"""Exception hierarchy shared by all curvetrace modules."""


class CurveTraceError(Exception):
    """Base class for all curvetrace errors."""


class DegenerateInput(CurveTraceError):
    """An input violates a structural precondition (e.g. both resultant
    arguments constant in y, or an irregular vertex chain)."""


class InexactDivision(CurveTraceError):
    """A polynomial division expected to be exact left a remainder above
    tolerance; usually indicates interpolation noise in a resultant."""


class NotSquareFree(CurveTraceError):
    """The discriminant vanishes identically, so the distance-to-critical-set
    machinery is unusable for this curve."""


class LeadingCoefficientVanishes(CurveTraceError):
    """The leading coefficient is (numerically) zero; roots escape to
    infinity or the polynomial degree is lower than its shape suggests."""


class NoConvergence(CurveTraceError):
    """Simultaneous root iteration hit its iteration cap without settling.
    Raising the working precision is the intended remedy."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class SingleRoot(CurveTraceError):
    """A pairwise-distance query needs at least two roots."""


class RootInsideCircle(CurveTraceError):
    """A coefficient lower bound is invalid because a coefficient root lies
    inside the evaluation circle; the caller must shrink the radius."""


class CriticalFiber(CurveTraceError):
    """A fiber derivative fell below the trust floor tied to the root
    residual, so the branch-slope bound cannot be certified."""


class AtCriticalPoint(CurveTraceError):
    """The expansion point lies on (or numerically indistinguishable from)
    the zero set of a0 * discriminant."""


class NoProgress(CurveTraceError):
    """Continuation cannot advance: the step size underflowed or the
    subdivision budget was exhausted.  Carries the partial log when one is
    available."""

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log


class CriticalPointOnPath(NoProgress):
    """Continuation stalled *because* the path runs into the zero set of
    a0 * discriminant: a bound evaluation failed at an accepted point or
    the step-size collapse converged onto the critical set.  Subclass of
    NoProgress since a critical point on the path is the diagnosed cause of
    failing to advance."""


class AmbiguousMatch(CurveTraceError):
    """Two fiber roots are equidistant from the continued value within
    tolerance.  Cannot happen while the step bound is respected; treated as
    an internal consistency failure."""

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log


class DegenerateQuadruple(CurveTraceError):
    """A cross-ratio or Moebius construction received coincident points
    where distinct ones are required."""
