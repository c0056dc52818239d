"""Exception hierarchy for the calculus toolkit.

Errors are contract violations (bad inputs, spectra in forbidden places),
not numerical noise; diagnostic flags live on report objects instead.
"""


class CalculusError(Exception):
    """Base class for all toolkit errors."""


class SpectrumHit(CalculusError):
    """Resolvent requested at (numerically) an eigenvalue."""


class NonDiagonalizable(CalculusError):
    """Eigenvector matrix too ill-conditioned for the spectral route."""


class RegionViolation(CalculusError):
    """An eigenvalue lies outside or on the boundary of a symbol's region."""


class NonFiniteSample(CalculusError):
    """A sampled symbol value was NaN or Inf."""


class SectorRequired(CalculusError):
    """Operation needs a sector region."""


class WeightExceedsDeclared(CalculusError):
    """Requested exponential weight exceeds the measure's declared weight."""


class StripViolation(CalculusError):
    """Fourier-Stieltjes transform evaluated outside the declared strip."""


class DecayClassRequired(CalculusError):
    """Symbol lacks the quadratic-decay class needed for a direct contour."""


class NotEven(CalculusError):
    """Even profile required."""


class OrderViolation(CalculusError):
    """Weight/type ordering violated (e.g. omega <= omega0)."""


class SpectrumOutsideContour(CalculusError):
    """Spectrum not strictly inside the integration contour."""


class SpectrumOutsideParabola(CalculusError):
    """Spectrum not inside the required parabolic region."""


class RegulariserSingular(CalculusError):
    """Regularizer evaluates to a numerically singular matrix."""


class WeightOrderViolation(CalculusError):
    """Measure weight does not dominate the certified group growth."""


class NonConvergent(CalculusError):
    """Principal-value truncations failed to settle."""


class SupportViolation(CalculusError):
    """Measure support outside the required interval."""


class EpsilonBelowGrid(CalculusError):
    """Truncation radius finer than the grid step."""


class SeriesDivergence(CalculusError):
    """Power-series route would overflow without rescaling."""


class TypeViolation(CalculusError):
    """Abscissa parameter not above the certified growth type."""


class NotInjective(CalculusError):
    """Operator has (numerically) zero as an eigenvalue."""


class AngleViolation(CalculusError):
    """Angle parameter outside the admissible range for this operator."""


class ConfigInvalid(CalculusError):
    """Suite configuration rejected; `pointer` holds the offending field."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer


class CheckFailed(CalculusError):
    """One or more suite checks failed; failures are aggregated, not fatal."""

    def __init__(self, failures):
        super().__init__(f"{len(failures)} check(s) failed")
        self.failures = list(failures)
