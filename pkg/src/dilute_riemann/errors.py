"""Exception hierarchy shared by all modules."""


class DiluteRiemannError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DiluteRiemannError, ValueError):
    """A state lies outside the admissible phase space."""


class RootFindingError(DiluteRiemannError):
    """Base class for scalar root-finding failures."""


class NoSignChangeError(RootFindingError):
    def __init__(self, lo, hi, f_lo, f_hi, context=""):
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi
        self.context = context
        msg = f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class NonConvergenceError(RootFindingError):
    """Raised after ``max_iter`` iterations; carries the best iterate."""

    def __init__(self, best, residual, iterations, context=""):
        self.best, self.residual, self.iterations = best, residual, iterations
        self.context = context
        msg = (f"no convergence after {iterations} iterations "
               f"(best x={best!r}, |f|={abs(residual)!r})")
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class NotOnLocusError(DiluteRiemannError, ValueError):
    pass


class CoincidentStatesError(DiluteRiemannError, ValueError):
    pass


class DegenerateShockError(DiluteRiemannError, ValueError):
    pass


class PoleError(DiluteRiemannError, ValueError):
    """The closed-form rarefaction curve is evaluated at or beyond its pole."""


class OutOfFanError(DiluteRiemannError, ValueError):
    pass


class StateEscapeError(DiluteRiemannError):
    """A finite-volume update left the closure of the phase space."""


class NoAdmissibleSolution(DiluteRiemannError):
    """No allowed wave sequence connects the Riemann data.

    ``report`` maps each candidate construction to a dict describing why
    it failed (residuals, violated side conditions).
    """

    def __init__(self, left, right, report):
        self.left, self.right, self.report = left, right, report
        reasons = "; ".join(f"{k}: {v.get('reason', '?')}" for k, v in report.items())
        super().__init__(f"no admissible wave sequence from {left} to {right} ({reasons})")
