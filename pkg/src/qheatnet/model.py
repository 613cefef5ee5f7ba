"""Two-node transport network: parameters, statistics and the normal-mode basis.

The system is a pair of single-frequency nodes exchanging excitations,

    H = omega_h a'a + omega_c b'b + epsilon (a'b + ab'),

with node A damped by a hot bath and node B by a cold bath.  Everything is
expressed in natural units (hbar = k_B = 1), so beta * omega is the only
dimensionless combination that ever enters a rate or an occupation.

The one-body matrix [[omega_h, epsilon], [epsilon, omega_c]] is diagonalised
by a rotation of angle theta; its eigenfrequencies omega_+ >= omega_- define
the delocalised normal modes used by the global treatment.  The rotation is
computed from stable rewrites (hypot for the splitting, the determinant for
omega_-) so that nearly-resonant or weakly-coupled inputs do not lose digits
to cancellation.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    GaplessSpectrum,
    NegativeCoupling,
    NonPositiveParameter,
    UnsupportedStatistics,
)


class Statistics(Enum):
    """Exchange statistics of the two nodes."""

    BOSON = "boson"
    TLS = "tls"

    @property
    def delta(self) -> float:
        """Sign in the on-node relation a a' + delta a'a = 1: -1 bosons, +1 two-level systems."""
        return 1.0 if self is Statistics.TLS else -1.0


@dataclass(frozen=True)
class NetworkParams:
    """Full parameter set of one transport configuration."""

    omega_h: float = 10.0  # node A frequency (hot side)
    omega_c: float = 5.0  # node B frequency (cold side)
    epsilon: float = 1e-3  # inter-node exchange coupling, >= 0
    T_h: float = 12.0  # hot bath temperature
    T_c: float = 10.0  # cold bath temperature
    kappa: float = 1e-7  # prefactor of the cubic spectral response
    statistics: Statistics = Statistics.BOSON

    @property
    def beta_h(self) -> float:
        return 1.0 / self.T_h

    @property
    def beta_c(self) -> float:
        return 1.0 / self.T_c

    @property
    def delta(self) -> float:
        return self.statistics.delta


def validate(params: NetworkParams) -> NetworkParams:
    """Check a parameter set and return it unchanged.

    Raises NonPositiveParameter for non-positive (or non-finite) frequencies,
    temperatures or kappa, and NegativeCoupling for epsilon < 0.
    """
    positive = {
        "omega_h": params.omega_h,
        "omega_c": params.omega_c,
        "T_h": params.T_h,
        "T_c": params.T_c,
        "kappa": params.kappa,
    }
    for name, value in positive.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise NonPositiveParameter(f"{name} must be a positive finite number, got {value!r}")
    eps = params.epsilon
    if not (isinstance(eps, (int, float)) and math.isfinite(eps)):
        raise NonPositiveParameter(f"epsilon must be finite, got {eps!r}")
    if eps < 0:
        raise NegativeCoupling(f"epsilon must be >= 0, got {eps!r}")
    if not isinstance(params.statistics, Statistics):
        raise UnsupportedStatistics(f"unknown statistics {params.statistics!r}")
    return params


def thermal_occupation(omega: float, T: float, statistics: Statistics) -> float:
    """Equilibrium occupation 1 / (exp(omega/T) + delta) of a single node."""
    x = omega / T
    if statistics is Statistics.BOSON:
        return 1.0 / math.expm1(x)
    return 1.0 / (math.exp(x) + 1.0)


@dataclass(frozen=True)
class NormalModeBasis:
    """Rotation diagonalising the one-body matrix [[omega_h, eps], [eps, omega_c]].

    The mode operators are d_+ = cos(theta) a + sin(theta) b and
    d_- = cos(theta) b - sin(theta) a, with theta in [0, pi/2] and
    cos(theta) sin(theta) = epsilon / (omega_+ - omega_-).
    """

    theta: float
    omega_plus: float
    omega_minus: float
    c2: float  # cos(theta)**2
    s2: float  # sin(theta)**2

    @property
    def c(self) -> float:
        return math.sqrt(self.c2)

    @property
    def s(self) -> float:
        return math.sqrt(self.s2)

    @property
    def cs(self) -> float:
        """cos(theta) sin(theta), always >= 0 for theta in [0, pi/2]."""
        return math.sqrt(self.c2 * self.s2)


def normal_mode_basis(params: NetworkParams) -> NormalModeBasis:
    """Diagonalise the one-body problem; bosonic nodes only.

    Raises GaplessSpectrum when epsilon**2 >= omega_h * omega_c (the lower
    eigenfrequency would not be positive) and UnsupportedStatistics for TLS
    nodes, whose bilinears do not close under the rotation.
    """
    validate(params)
    if params.statistics is not Statistics.BOSON:
        raise UnsupportedStatistics("normal modes are defined for bosonic nodes only")
    det = params.omega_h * params.omega_c - params.epsilon**2
    if det <= 0:
        raise GaplessSpectrum(
            f"epsilon**2 = {params.epsilon**2!r} >= omega_h*omega_c = "
            f"{params.omega_h * params.omega_c!r}"
        )
    half_gap = 0.5 * (params.omega_h - params.omega_c)
    r = math.hypot(half_gap, params.epsilon)
    omega_plus = 0.5 * (params.omega_h + params.omega_c) + r
    # omega_- via the determinant avoids the mid - r cancellation.
    omega_minus = det / omega_plus
    if r == 0.0:
        # omega_h == omega_c with epsilon == 0: any rotation works, take none.
        c2, s2 = 1.0, 0.0
    elif half_gap >= 0.0:
        c2 = (half_gap + r) / (2.0 * r)
        s2 = params.epsilon**2 / (2.0 * r * (r + half_gap))
    else:
        s2 = (r - half_gap) / (2.0 * r)
        c2 = params.epsilon**2 / (2.0 * r * (r - half_gap))
    theta = math.atan2(math.sqrt(s2), math.sqrt(c2))
    return NormalModeBasis(theta=theta, omega_plus=omega_plus, omega_minus=omega_minus, c2=c2, s2=s2)


# --- plain key=value configuration files -----------------------------------

_FLOAT_KEYS = ("omega_h", "omega_c", "epsilon", "T_h", "T_c", "kappa")
CONFIG_KEYS = _FLOAT_KEYS + ("statistics",)


def parse_config(text: str) -> dict[str, str]:
    """Parse 'key = value' lines; blank lines and '#' comments are ignored."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = value
    return values


def params_from_mapping(mapping: dict[str, str], base: NetworkParams | None = None) -> NetworkParams:
    """Overlay string-valued settings on a base parameter set and validate."""
    params = base if base is not None else NetworkParams()
    updates: dict[str, object] = {}
    for key, value in mapping.items():
        if key in _FLOAT_KEYS:
            updates[key] = float(value)
        elif key == "statistics":
            try:
                updates[key] = Statistics(value.lower())
            except ValueError:
                raise ValueError(f"statistics must be one of {{boson, tls}}, got {value!r}") from None
        else:
            raise ValueError(f"unknown parameter {key!r}")
    return validate(replace(params, **updates))


def load_config(path: str, base: NetworkParams | None = None) -> NetworkParams:
    """Read a key=value file into a validated parameter set."""
    with open(path, "r", encoding="utf-8") as handle:
        return params_from_mapping(parse_config(handle.read()), base=base)
