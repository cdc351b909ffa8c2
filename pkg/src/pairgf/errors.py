"""Exception hierarchy for the pairgf library.

All numerical failure modes raise subclasses of :class:`PairGFError` so that
callers can distinguish "the physics refuses" (divergent argument classes,
missing cutoffs) from "the numerics refused" (lost precision, exhausted
subdivision budgets).
"""


class PairGFError(Exception):
    """Base class for all library errors."""


class PoleError(PairGFError):
    """Evaluation exactly at a pole of the gamma function."""


class NonConvergence(PairGFError):
    """No evaluation strategy reached the requested tolerance."""


class WronskianViolation(PairGFError):
    """Whittaker Wronskian residual exceeded its tolerance (precision loss)."""

    def __init__(self, residual, tolerance, detail=""):
        self.residual = residual
        self.tolerance = tolerance
        msg = f"Wronskian residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CoincidentArguments(PairGFError):
    """Green's function requested at coincident positions; use the
    dedicated regularized coincidence routine instead."""


class DivergentArguments(PairGFError):
    """Two-particle GF requested at an argument tuple where the defining
    integral diverges."""

    def __init__(self, classification, msg=""):
        self.classification = classification
        super().__init__(msg or f"divergent argument class: {classification}")


class QuadratureFailure(PairGFError):
    """An integral could not be evaluated to tolerance."""


class ToleranceNotMet(QuadratureFailure):
    """Adaptive subdivision budget exhausted before reaching tolerance."""

    def __init__(self, value, err_est, msg=""):
        self.value = value
        self.err_est = err_est
        super().__init__(msg or f"tolerance not met (err_est={err_est:.3e})")


class CutoffRequired(PairGFError):
    """An operation needs an explicit band cutoff and none was supplied."""


class SingularSystem(PairGFError):
    """The discretized Dyson system is singular or too ill-conditioned."""


class ConfigError(PairGFError):
    """Invalid run configuration (CLI or library entry point)."""
