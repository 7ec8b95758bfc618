"""Exception hierarchy for the grating solver.

``exit_code`` mirrors the CLI contract: 1 for configuration/usage problems,
2 for numerical failures.
"""

from __future__ import annotations


class GratingModalError(Exception):
    exit_code = 2


class TableRangeError(GratingModalError, ValueError):
    """Wavenumber outside the permittivity table span (no extrapolation)."""

    exit_code = 1


class NoFundamentalModeError(GratingModalError, ValueError):
    """The lossless impedance walls admit no real fundamental eigenvalue."""

    exit_code = 1


class RootConvergenceError(GratingModalError, ArithmeticError):
    """Newton refinement did not converge, or drifted off the seeded branch."""

    def __init__(self, message, n=None, last=None, residual=None):
        super().__init__(message)
        self.n = n
        self.last = last
        self.residual = residual


class BracketError(GratingModalError, ArithmeticError):
    """Real bisection could not bracket a sign change."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class QuadratureError(GratingModalError, ArithmeticError):
    """Node-doubling quadrature failed to converge at the node cap."""


class SingularOrderError(GratingModalError, ArithmeticError):
    """A reflected order has beta_m + xi = 0, making its projection singular."""

    def __init__(self, message, m=None):
        super().__init__(message)
        self.m = m


class ResonanceSingularityError(GratingModalError, ArithmeticError):
    """A cavity-mode denominator T_n (1 + r_n e^{-2 i nu_n k0 h}) vanished."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class SingularSystemError(GratingModalError, ArithmeticError):
    """The truncated linear system is numerically singular."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition
