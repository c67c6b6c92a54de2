"""Exception types shared across the solver."""


class AdmissibilityError(ValueError):
    """State left the physical set (rho > 0, p > 0, |u| < 1)."""


class ConvergenceError(RuntimeError):
    """An iteration (primitive recovery, time loop) hit its cap."""


class FluxDegeneracyError(ArithmeticError):
    """Two-point flux denominator collapsed; cannot happen for admissible pairs."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""
