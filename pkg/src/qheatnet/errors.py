"""Error taxonomy shared by all modules."""


class HeatNetError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveParameter(HeatNetError):
    """A frequency, temperature or coupling prefactor is not strictly positive (or not finite)."""


class NegativeCoupling(HeatNetError):
    """The inter-node coupling epsilon is negative."""


class GaplessSpectrum(HeatNetError):
    """epsilon**2 >= omega_h * omega_c, so the lower normal mode is not a positive-frequency oscillator."""


class UnsupportedStatistics(HeatNetError):
    """The requested treatment is only defined for bosonic nodes."""


class NegativeFrequency(HeatNetError):
    """A bath rate was requested at a negative transition frequency."""


class SingularSystem(HeatNetError):
    """The 4x4 moment drift matrix was numerically singular; unreachable for positive rates."""


class StatisticsMismatch(HeatNetError):
    """Gaussian (covariance) machinery was applied to two-level-system moments."""


class UnphysicalCovariance(HeatNetError):
    """A covariance matrix violates the uncertainty bound (symplectic eigenvalue below 1/2)."""


class TruncationTooSmall(HeatNetError):
    """The Fock truncation cannot represent the state (guard tripped or n_max below the minimum)."""


class DegenerateNullspace(HeatNetError):
    """The generator has more than one steady state within tolerance."""


class NonConvergence(HeatNetError):
    """The extracted null vector failed a residual, trace or positivity check."""
