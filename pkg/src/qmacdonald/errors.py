"""Exception hierarchy for the q-Macdonald engine.

Exit-code mapping used by the CLI:
  DomainError / validation      -> 2
  ResonanceError / Nondegeneracy -> 3
  ConvergenceError              -> 4
"""


class QMacdonaldError(Exception):
    """Base class for all engine errors."""


class DomainError(QMacdonaldError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation lands on (or within tolerance of) a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ZoneError(DomainError):
    """Point lies outside the asymptotic zone / convergence region."""


class SingularConfigurationError(DomainError):
    """Coincident coordinates make the rational operator weights singular."""


class ResonanceError(QMacdonaldError):
    """A theta factor or bracket in a denominator vanishes (parameters on
    the q-lattice)."""


class NondegeneracyError(ResonanceError):
    """The recursion divisor c1(lambda+rho) - c1(eta+kappa+rho) is too close
    to zero at some multi-index."""

    def __init__(self, message, multi_index=None):
        super().__init__(message)
        self.multi_index = multi_index


class ConvergenceError(QMacdonaldError):
    """An infinite sum failed to converge within the iteration cap."""
