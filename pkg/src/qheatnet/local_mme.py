"""Local treatment: each node is damped by its own bath at its bare frequency.

The hot generator acts on node A alone and the cold one on node B alone,
each with downward rate gamma_l and upward weight exp(-beta_l omega_l).
Writing w_l = exp(-beta_l omega_l) and G_l = gamma_l (1 + delta w_l), the
quadratic moments

    nA = <a'a>,  nB = <b'b>,  X = <a'b + ab'>,  Y = i<a'b - ab'>

close for both statistics and obey the affine system dx/dt = A x + v:

    d nA / dt = -G_h nA + gamma_h w_h - epsilon Y
    d nB / dt = -G_c nB + gamma_c w_c + epsilon Y
    d X  / dt = -(G_h + G_c)/2 X + (omega_h - omega_c) Y
    d Y  / dt = -(G_h + G_c)/2 Y - (omega_h - omega_c) X + 2 epsilon (nA - nB)

The steady state is the unique solution of A x = -v, solved densely with
partial pivoting.  Heat currents are the generator expectations evaluated at
the solved moments,

    J_h = omega_h gamma_h (w_h - nA (1 + delta w_h)) - (epsilon gamma_h / 2) X (1 + delta w_h)

and J_c symmetrically from the cold generator, so the first law J_h + J_c = 0
is an output check, not an input assumption.  The entropy production rate is
sigma = -J_h/T_h - J_c/T_c; it changes sign with exp(beta_c omega_c) -
exp(beta_h omega_h), which is the whole point of auditing this treatment.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import bath
from .errors import SingularSystem
from .model import NetworkParams, validate


@dataclass(frozen=True)
class MomentState:
    """Second moments (nA, nB, X, Y) of the two-node state."""

    nA: float
    nB: float
    X: float
    Y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.nA, self.nB, self.X, self.Y], dtype=float)

    @classmethod
    def from_array(cls, vec) -> "MomentState":
        nA, nB, X, Y = (float(v) for v in vec)
        return cls(nA=nA, nB=nB, X=X, Y=Y)


@dataclass(frozen=True)
class LocalSteadyState:
    """Steady moments plus the currents and entropy production they imply."""

    moments: MomentState
    J_h: float
    J_c: float
    sigma: float
    prefactor_F: float  # J_h = (exp(beta_c omega_c) - exp(beta_h omega_h)) * F, F >= 0


def _coefficients(params: NetworkParams) -> tuple[float, float, float, float, float, float]:
    gamma_h, gamma_c = bath.local_rates(params)
    w_h = math.exp(-params.beta_h * params.omega_h)
    w_c = math.exp(-params.beta_c * params.omega_c)
    G_h = gamma_h * (1.0 + params.delta * w_h)
    G_c = gamma_c * (1.0 + params.delta * w_c)
    return gamma_h, gamma_c, w_h, w_c, G_h, G_c


def affine_system(params: NetworkParams) -> tuple[np.ndarray, np.ndarray]:
    """Drift matrix A and inhomogeneity v of dx/dt = A x + v for x = (nA, nB, X, Y)."""
    validate(params)
    gamma_h, gamma_c, w_h, w_c, G_h, G_c = _coefficients(params)
    eps = params.epsilon
    gap = params.omega_h - params.omega_c
    damp = 0.5 * (G_h + G_c)
    A = np.array(
        [
            [-G_h, 0.0, 0.0, -eps],
            [0.0, -G_c, 0.0, eps],
            [0.0, 0.0, -damp, gap],
            [2.0 * eps, -2.0 * eps, -gap, -damp],
        ]
    )
    v = np.array([gamma_h * w_h, gamma_c * w_c, 0.0, 0.0])
    return A, v


def moment_rhs(params: NetworkParams, state: MomentState) -> MomentState:
    """Time derivative of the moment vector at the given state."""
    A, v = affine_system(params)
    return MomentState.from_array(A @ state.as_array() + v)


def _currents(params: NetworkParams, x: np.ndarray) -> tuple[float, float]:
    gamma_h, gamma_c, w_h, w_c, G_h, G_c = _coefficients(params)
    J_h = params.omega_h * (gamma_h * w_h - G_h * x[0]) - 0.5 * params.epsilon * G_h * x[2]
    J_c = params.omega_c * (gamma_c * w_c - G_c * x[1]) - 0.5 * params.epsilon * G_c * x[2]
    return float(J_h), float(J_c)


def steady_state(params: NetworkParams) -> LocalSteadyState:
    """Unique steady state of the local generator's moment system."""
    A, v = affine_system(params)
    try:
        x = np.linalg.solve(A, -v)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"moment drift matrix is singular: {exc}") from exc
    J_h, J_c = _currents(params, x)
    sigma = -J_h / params.T_h - J_c / params.T_c
    _, F = heat_current_closed_form(params)
    return LocalSteadyState(
        moments=MomentState.from_array(x), J_h=J_h, J_c=J_c, sigma=sigma, prefactor_F=F
    )


def heat_current_closed_form(params: NetworkParams) -> tuple[float, float]:
    """Steady J_h as the explicit rational expression, returned as (J_h, F).

    J_h factors as (exp(beta_c omega_c) - exp(beta_h omega_h)) * F with F a
    manifestly nonnegative rational function of the parameters; the sign of
    the hot current is therefore carried entirely by the exponential
    difference.  Independent of steady_state(), which solves the 4x4 system.
    """
    validate(params)
    gamma_h, gamma_c, _, _, _, _ = _coefficients(params)
    d = params.delta
    eps = params.epsilon
    omega_h, omega_c = params.omega_h, params.omega_c
    E_h = math.exp(params.beta_h * omega_h)
    E_c = math.exp(params.beta_c * omega_c)
    num = (
        4.0 * eps**2 * gamma_c * gamma_h * E_c * E_h
        * (omega_c * gamma_h * E_c * (E_h + d) + gamma_c * omega_h * E_h * (E_c + d))
    )
    den = (
        gamma_c**3 * gamma_h * E_h**2 * (E_c + d) ** 3 * (E_h + d)
        + 2.0 * gamma_c**2 * (E_c + d) ** 2 * E_c * E_h
        * (gamma_h**2 * (E_h + d) ** 2 + 2.0 * eps**2 * E_h**2)
        + gamma_c * gamma_h * E_c**2 * (E_c + d) * (E_h + d)
        * (4.0 * E_h**2 * ((omega_c - omega_h) ** 2 + 2.0 * eps**2) + gamma_h**2 * (E_h + d) ** 2)
        + 4.0 * eps**2 * gamma_h**2 * E_c**3 * E_h * (E_h + d) ** 2
    )
    F = num / den
    return (E_c - E_h) * F, F


def evolve(
    params: NetworkParams, state: MomentState, duration: float, steps: int
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 trajectory of the moment system.

    Returns (times, moments) with moments of shape (steps + 1, 4); row i is
    the state at times[i].  Meant for relaxation plots, not for the steady
    state itself, which steady_state() gets directly.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    A, v = affine_system(params)
    h = duration / steps
    times = np.linspace(0.0, duration, steps + 1)
    out = np.empty((steps + 1, 4))
    x = state.as_array()
    out[0] = x
    for i in range(steps):
        k1 = A @ x + v
        k2 = A @ (x + 0.5 * h * k1) + v
        k3 = A @ (x + 0.5 * h * k2) + v
        k4 = A @ (x + h * k3) + v
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = x
    return times, out
