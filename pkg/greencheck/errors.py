"""Exception hierarchy shared by every greencheck module."""

from __future__ import annotations


class GreenCheckError(Exception):
    """Base class for all greencheck failures."""


class ExactAlgebraError(GreenCheckError, ValueError):
    """Invalid input to exact polynomial or matrix arithmetic."""


class ShapeError(ExactAlgebraError):
    """Matrix shapes are not conformable."""


class DegenerateNodesError(ExactAlgebraError):
    """Interpolation nodes are not pairwise distinct."""


class InexactDivisionError(ExactAlgebraError):
    """Polynomial division left a non-zero remainder."""


class SingularMatrixError(ExactAlgebraError):
    """A linear system has no unique solution."""


class WeylError(GreenCheckError):
    """Unsupported root datum or a violated Weyl group invariant."""


class TwistedDataAbsentError(WeylError):
    """A twisted type was requested without its sigma table."""


class OrderError(GreenCheckError):
    """Order polynomials are inconsistent."""


class AdmissibilityError(GreenCheckError, ValueError):
    """q or r is not admissible for the requested computation."""


class PackError(GreenCheckError):
    """A data pack failed to load or validate."""

    def __init__(self, message: str, *, code: str) -> None:
        super().__init__(f'[{code}] {message}')
        self.code = code
        """Machine-readable failure class."""


class SolverError(GreenCheckError):
    """The block decomposition of the orthogonality matrix failed."""

    def __init__(self, message: str, *, code: str) -> None:
        super().__init__(f'[{code}] {message}')
        self.code = code
        """Machine-readable failure class."""


class InsufficientSamplesError(GreenCheckError):
    """Interpolation did not reproduce a held-out sample."""


class OracleError(GreenCheckError):
    """An oracle was called outside its supported range."""


class OracleConventionError(OracleError):
    """No Green polynomial normalization satisfies the calibration anchors."""


class BudgetExceededError(GreenCheckError):
    """A run would exceed the configured compute budget."""
