"""Two-mode Gaussian covariance analysis of the bosonic steady states.

Both generators are quadratic with linear damping terms, so their bosonic
steady states are Gaussian with zero first moments and no squeezing
(<aa> = <bb> = <ab> = 0).  The symmetrized quadrature covariance matrix in
the ordering (x_A, p_A, x_B, p_B), with x = (a + a')/sqrt(2) and
p = -i (a - a')/sqrt(2), is then fixed by the four second moments:

    V = [[nA + 1/2,  0,         X/2,       -Y/2     ],
         [0,         nA + 1/2,  Y/2,        X/2     ],
         [X/2,       Y/2,       nB + 1/2,   0       ],
         [-Y/2,      X/2,       0,          nB + 1/2]]

The global steady state is diagonal in the normal modes, which makes Y = 0
and X = 2 cos(theta) sin(theta) (n_+ - n_-); its x-p cross covariances
vanish identically, unlike the local state's, whose Y tracks the steady
coherence current.

Physicality and separability are both symplectic-spectrum statements:
V + (i/2) Omega >= 0 iff the smallest symplectic eigenvalue is >= 1/2, and
for one mode per side the same bound on the partially transposed matrix
(p_B -> -p_B) decides separability exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import StatisticsMismatch, UnphysicalCovariance
from .local_mme import MomentState
from .model import NormalModeBasis, Statistics

# Slack on the nu >= 1/2 bounds, absorbing eigenvalue round-off.
SYMPLECTIC_TOLERANCE = 1e-10

# Symplectic form for the ordering (x_A, p_A, x_B, p_B).
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

# Partial transposition of the second mode flips the sign of p_B.
_PPT_FLIP = np.diag([1.0, 1.0, 1.0, -1.0])


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetrized quadrature covariance in the ordering (x_A, p_A, x_B, p_B)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise UnphysicalCovariance(f"covariance must be 4x4, got shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12):
            raise UnphysicalCovariance("covariance must be symmetric")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class CorrelationReport:
    """Normalized cross correlations and the symplectic separability verdict."""

    cor_xAxB: float
    cor_xApB: float
    cor_pAxB: float
    cor_pApB: float
    nu_min: float  # smallest symplectic eigenvalue of V
    nu_min_ppt: float  # same after partial transposition
    separable: bool


def _assemble(nA: float, nB: float, X: float, Y: float) -> CovarianceMatrix:
    half_x = 0.5 * X
    half_y = 0.5 * Y
    return CovarianceMatrix(
        np.array(
            [
                [nA + 0.5, 0.0, half_x, -half_y],
                [0.0, nA + 0.5, half_y, half_x],
                [half_x, half_y, nB + 0.5, 0.0],
                [-half_y, half_x, 0.0, nB + 0.5],
            ]
        )
    )


def covariance_local(
    moments: MomentState, statistics: Statistics = Statistics.BOSON
) -> CovarianceMatrix:
    """Covariance of the local steady state from its moment vector."""
    if statistics is not Statistics.BOSON:
        raise StatisticsMismatch("quadrature covariance is defined for bosonic nodes only")
    return _assemble(moments.nA, moments.nB, moments.X, moments.Y)


def covariance_global(basis: NormalModeBasis, n_plus: float, n_minus: float) -> CovarianceMatrix:
    """Covariance of the global steady state from its mode occupations."""
    nA = basis.c2 * n_plus + basis.s2 * n_minus
    nB = basis.s2 * n_plus + basis.c2 * n_minus
    X = 2.0 * basis.cs * (n_plus - n_minus)
    return _assemble(nA, nB, X, 0.0)


def symplectic_eigenvalues(cov: CovarianceMatrix) -> tuple[float, float]:
    """The two symplectic eigenvalues of V, ascending.

    They are the moduli of the (paired) eigenvalues of i Omega V; a valid
    quantum covariance has both >= 1/2.
    """
    mods = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ cov.matrix)))
    return float(mods[0]), float(mods[2])


def correlations(cov: CovarianceMatrix) -> CorrelationReport:
    """Normalized cross-block correlations and the exact separability verdict.

    Raises UnphysicalCovariance when V violates the symplectic uncertainty
    bound beyond tolerance.  The separable flag is the partial-transpose
    bound, which for one mode per side is necessary and sufficient.
    """
    v = cov.matrix
    nu_min, _ = symplectic_eigenvalues(cov)
    if nu_min < 0.5 - SYMPLECTIC_TOLERANCE:
        raise UnphysicalCovariance(
            f"smallest symplectic eigenvalue {nu_min!r} is below the uncertainty bound 1/2"
        )
    ppt = CovarianceMatrix(_PPT_FLIP @ v @ _PPT_FLIP)
    nu_min_ppt, _ = symplectic_eigenvalues(ppt)
    return CorrelationReport(
        cor_xAxB=v[0, 2] / math.sqrt(v[0, 0] * v[2, 2]),
        cor_xApB=v[0, 3] / math.sqrt(v[0, 0] * v[3, 3]),
        cor_pAxB=v[1, 2] / math.sqrt(v[1, 1] * v[2, 2]),
        cor_pApB=v[1, 3] / math.sqrt(v[1, 1] * v[3, 3]),
        nu_min=nu_min,
        nu_min_ppt=nu_min_ppt,
        separable=bool(nu_min_ppt >= 0.5 - SYMPLECTIC_TOLERANCE),
    )
