"""Brute-force steady states on a truncated Fock space.

Everything else in this package works with closed moment equations or
detailed-balance occupations derived by hand.  This module rebuilds both
generators as explicit sparse superoperators on a truncated two-node Fock
space and extracts steady states, currents and covariances numerically, with
no shared algebra, so the closed forms can be audited against it.

Superoperators use the column-stacking convention vec(A rho B) = (B^T kron A)
vec(rho).  The steady state is the nullspace of the generator, pinned to unit
trace by replacing the first row with the trace functional and solving the
resulting sparse system directly.  Truncation quality is policed, not
assumed: the solve must reproduce a small generator residual, the state must
be positive to round-off, and bosonic states must leave the top Fock level
essentially unpopulated.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from . import bath
from .errors import (
    DegenerateNullspace,
    NonConvergence,
    StatisticsMismatch,
    TruncationTooSmall,
    UnsupportedStatistics,
)
from .gaussian import CovarianceMatrix
from .global_mme import DissipationChannel
from .local_mme import MomentState
from .model import NetworkParams, Statistics, normal_mode_basis, validate

RESIDUAL_TOLERANCE = 1e-10
NEGATIVITY_TOLERANCE = 1e-10
TOP_LEVEL_TOLERANCE = 1e-8
TAIL_TARGET = 1e-10


class Generator(Enum):
    """Which master-equation treatment the Liouvillian implements."""

    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class FockLiouvillian:
    """A generator assembled on the truncated two-node space.

    dimension is the Hilbert-space dimension, so the superoperators are
    dimension**2 square.  hot_part and cold_part are the two bath dissipators
    alone; generator is the full right-hand side including the commutator.
    """

    params: NetworkParams
    approach: Generator
    n_max: int
    dimension: int
    generator: sp.csr_matrix
    hot_part: sp.csr_matrix
    cold_part: sp.csr_matrix
    hamiltonian: sp.csr_matrix
    a: sp.csr_matrix
    b: sp.csr_matrix


def _spre(op: sp.spmatrix) -> sp.csr_matrix:
    dim = op.shape[0]
    return sp.kron(sp.identity(dim, format="csr"), op, format="csr")


def _spost(op: sp.spmatrix) -> sp.csr_matrix:
    dim = op.shape[0]
    return sp.kron(op.T, sp.identity(dim, format="csr"), format="csr")


def _sandwich(left: sp.spmatrix, right: sp.spmatrix) -> sp.csr_matrix:
    # vec(L rho R) = (R^T kron L) vec(rho)
    return sp.kron(right.T, left, format="csr")


def _dissipator(op: sp.spmatrix) -> sp.csr_matrix:
    """D[c]: rho -> c rho c' - {c'c, rho}/2 as a superoperator."""
    opd = op.conj().T
    anti = (opd @ op).tocsr()
    return _sandwich(op, opd) - 0.5 * (_spre(anti) + _spost(anti))


def _thermal_channel(op: sp.spmatrix, boltzmann: float) -> sp.csr_matrix:
    """Downward channel on op plus its Boltzmann-weighted upward partner."""
    return _dissipator(op) + boltzmann * _dissipator(op.conj().T)


def _cross_kernel(left: sp.spmatrix, right: sp.spmatrix) -> sp.csr_matrix:
    """rho -> l rho r' + r rho l' - {l'r + r'l, rho}/2 for commuting modes."""
    ld, rd = left.conj().T, right.conj().T
    anti = (ld @ right + rd @ left).tocsr()
    return (
        _sandwich(left, rd) + _sandwich(right, ld) - 0.5 * (_spre(anti) + _spost(anti))
    )


def _cross_channel(a: sp.spmatrix, b: sp.spmatrix, boltzmann: float) -> sp.csr_matrix:
    return _cross_kernel(a, b) + boltzmann * _cross_kernel(a.conj().T, b.conj().T)


def channel_superoperator(
    a: sp.spmatrix, b: sp.spmatrix, channels: tuple[DissipationChannel, ...]
) -> sp.csr_matrix:
    """Assemble a node-basis channel table into a superoperator matrix."""
    dim2 = a.shape[0] ** 2
    total = sp.csr_matrix((dim2, dim2), dtype=complex)
    for channel in channels:
        if channel.kind == "a":
            total = total + channel.weight * _thermal_channel(a, channel.boltzmann)
        elif channel.kind == "b":
            total = total + channel.weight * _thermal_channel(b, channel.boltzmann)
        elif channel.kind == "cross":
            total = total + channel.weight * _cross_channel(a, b, channel.boltzmann)
        else:
            raise ValueError(f"unknown channel kind {channel.kind!r}")
    return total


def _mode_operators(params: NetworkParams, n_max: int) -> tuple[sp.csr_matrix, sp.csr_matrix, int]:
    if params.statistics is Statistics.BOSON:
        ladder = sp.diags(np.sqrt(np.arange(1.0, n_max + 1.0)), 1, format="csr")
    else:
        ladder = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    dim_mode = ladder.shape[0]
    eye = sp.identity(dim_mode, format="csr")
    a = sp.kron(ladder, eye, format="csr").astype(complex)
    b = sp.kron(eye, ladder, format="csr").astype(complex)
    return a, b, dim_mode**2


def build(params: NetworkParams, approach: Generator, n_max: int = 12) -> FockLiouvillian:
    """Assemble the requested generator on the truncated space.

    For two-level nodes the space is exact and n_max is ignored.  Bosonic
    truncations below n_max = 2 cannot even hold the cross-channel algebra
    and are rejected outright; whether a given n_max is large enough for a
    given parameter set is checked a posteriori by steady_state.
    """
    validate(params)
    if params.statistics is Statistics.TLS:
        if approach is Generator.GLOBAL:
            raise UnsupportedStatistics("the global treatment is defined for bosonic nodes only")
        n_max = 1
    elif n_max < 2:
        raise TruncationTooSmall(f"bosonic truncation needs n_max >= 2, got {n_max}")
    a, b, dimension = _mode_operators(params, n_max)
    ad, bd = a.conj().T, b.conj().T
    hamiltonian = (
        params.omega_h * (ad @ a)
        + params.omega_c * (bd @ b)
        + params.epsilon * (ad @ b + a @ bd)
    ).tocsr()
    if approach is Generator.LOCAL:
        gamma_h, gamma_c = bath.local_rates(params)
        hot = gamma_h * _thermal_channel(a, math.exp(-params.beta_h * params.omega_h))
        cold = gamma_c * _thermal_channel(b, math.exp(-params.beta_c * params.omega_c))
    else:
        # Assembled straight from the rotated mode operators, not from the
        # node-basis channel table, so the two stay independent routes.
        basis = normal_mode_basis(params)
        gh_p, gh_m, gc_p, gc_m = bath.dressed_rates(params, basis)
        d_plus = basis.c * a + basis.s * b
        d_minus = basis.c * b - basis.s * a
        x_h_p = math.exp(-params.beta_h * basis.omega_plus)
        x_h_m = math.exp(-params.beta_h * basis.omega_minus)
        x_c_p = math.exp(-params.beta_c * basis.omega_plus)
        x_c_m = math.exp(-params.beta_c * basis.omega_minus)
        hot = gh_p * basis.c2 * _thermal_channel(d_plus, x_h_p) + gh_m * basis.s2 * _thermal_channel(
            d_minus, x_h_m
        )
        cold = gc_p * basis.s2 * _thermal_channel(d_plus, x_c_p) + gc_m * basis.c2 * _thermal_channel(
            d_minus, x_c_m
        )
    commutator = -1j * (_spre(hamiltonian) - _spost(hamiltonian))
    return FockLiouvillian(
        params=params,
        approach=approach,
        n_max=n_max,
        dimension=dimension,
        generator=(commutator + hot + cold).tocsr(),
        hot_part=hot.tocsr(),
        cold_part=cold.tocsr(),
        hamiltonian=hamiltonian,
        a=a,
        b=b,
    )


def _vec(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")


def _unvec(x: np.ndarray, dim: int) -> np.ndarray:
    return x.reshape((dim, dim), order="F")


def _top_level_population(rho: np.ndarray, dim_mode: int) -> float:
    probs = np.real(np.diag(rho)).reshape((dim_mode, dim_mode))
    return float(probs[-1, :].sum() + probs[:, -1].sum() - probs[-1, -1])


def steady_state(liou: FockLiouvillian) -> np.ndarray:
    """Solve for the unique unit-trace state annihilated by the generator.

    Raises DegenerateNullspace when the trace-pinned system is singular
    (more than one steady state), NonConvergence when the returned state
    fails the residual or positivity checks, and TruncationTooSmall when a
    bosonic state noticeably populates the top Fock level, which means the
    numbers describe the truncation rather than the network.
    """
    dim = liou.dimension
    trace_row = sp.csr_matrix(
        (np.ones(dim), (np.zeros(dim, dtype=int), np.arange(0, dim * dim, dim + 1))),
        shape=(1, dim * dim),
        dtype=complex,
    )
    pinned = sp.vstack([trace_row, liou.generator[1:, :]], format="csc")
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    try:
        solution = splu(pinned).solve(rhs)
    except RuntimeError as exc:
        raise DegenerateNullspace(f"trace-pinned generator is singular: {exc}") from exc
    if not np.all(np.isfinite(solution)):
        raise DegenerateNullspace("trace-pinned solve returned non-finite entries")
    rho = _unvec(solution, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.max(np.abs(liou.generator @ _vec(rho))))
    if residual > RESIDUAL_TOLERANCE:
        raise NonConvergence(f"steady-state residual {residual!r} exceeds {RESIDUAL_TOLERANCE}")
    lowest = float(np.linalg.eigvalsh(rho)[0])
    if lowest < -NEGATIVITY_TOLERANCE:
        raise NonConvergence(f"steady state has eigenvalue {lowest!r} below -{NEGATIVITY_TOLERANCE}")
    if liou.params.statistics is Statistics.BOSON:
        top = _top_level_population(rho, liou.n_max + 1)
        if top > TOP_LEVEL_TOLERANCE:
            raise TruncationTooSmall(
                f"top Fock level holds population {top!r}; raise n_max above {liou.n_max}"
            )
    return rho


def _expectation(op: sp.spmatrix, rho: np.ndarray) -> complex:
    return complex(np.trace(op @ rho))


def moments(liou: FockLiouvillian, rho: np.ndarray) -> MomentState:
    """Second moments (nA, nB, X, Y) of a state on the truncated space."""
    ad, bd = liou.a.conj().T, liou.b.conj().T
    cross = _expectation(ad @ liou.b, rho)
    return MomentState(
        nA=_expectation(ad @ liou.a, rho).real,
        nB=_expectation(bd @ liou.b, rho).real,
        X=2.0 * cross.real,
        Y=-2.0 * cross.imag,
    )


def mode_populations(liou: FockLiouvillian, rho: np.ndarray) -> tuple[float, float]:
    """Occupations of the normal modes d_+- (bosonic nodes only)."""
    basis = normal_mode_basis(liou.params)
    d_plus = basis.c * liou.a + basis.s * liou.b
    d_minus = basis.c * liou.b - basis.s * liou.a
    n_plus = _expectation(d_plus.conj().T @ d_plus, rho).real
    n_minus = _expectation(d_minus.conj().T @ d_minus, rho).real
    return float(n_plus), float(n_minus)


def heat_current(liou: FockLiouvillian, rho: np.ndarray, which: str) -> float:
    """Energy flow into the system through one bath, Tr[H D_bath(rho)]."""
    parts = {"hot": liou.hot_part, "cold": liou.cold_part}
    try:
        part = parts[which]
    except KeyError:
        raise ValueError(f"which must be 'hot' or 'cold', got {which!r}") from None
    drho = _unvec(part @ _vec(rho), liou.dimension)
    return float(np.trace(liou.hamiltonian @ drho).real)


def quadrature_covariance(liou: FockLiouvillian, rho: np.ndarray) -> CovarianceMatrix:
    """Symmetrized covariance of (x_A, p_A, x_B, p_B), first moments subtracted.

    Computed directly from operator expectations, with no Gaussian or
    no-squeezing assumption, so it doubles as a check of both.
    """
    if liou.params.statistics is not Statistics.BOSON:
        raise StatisticsMismatch("quadrature covariance is defined for bosonic nodes only")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    quads = (
        inv_sqrt2 * (liou.a + liou.a.conj().T),
        -1j * inv_sqrt2 * (liou.a - liou.a.conj().T),
        inv_sqrt2 * (liou.b + liou.b.conj().T),
        -1j * inv_sqrt2 * (liou.b - liou.b.conj().T),
    )
    means = [_expectation(q, rho).real for q in quads]
    cov = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            sym = 0.5 * _expectation(quads[i] @ quads[j] + quads[j] @ quads[i], rho).real
            cov[i, j] = cov[j, i] = sym - means[i] * means[j]
    return CovarianceMatrix(cov)


def gibbs_state(liou: FockLiouvillian, temperature: float) -> np.ndarray:
    """exp(-H/T) / Z on the truncated space."""
    energies, vectors = np.linalg.eigh(liou.hamiltonian.toarray())
    weights = np.exp(-(energies - energies[0]) / temperature)
    weights /= weights.sum()
    return (vectors * weights) @ vectors.conj().T


def suggested_nmax(params: NetworkParams, approach: Generator = Generator.LOCAL) -> int:
    """Smallest truncation whose thermal tail clears the occupancy guard.

    Bounds the steady state by a thermal tail at the hottest bath and the
    slowest relevant transition frequency: the population beyond n_max scales
    like exp(-beta omega (n_max + 1)).  Exact for two-level nodes, where the
    space is complete at n_max = 1.
    """
    validate(params)
    if params.statistics is Statistics.TLS:
        return 1
    if approach is Generator.GLOBAL:
        omega_min = normal_mode_basis(params).omega_minus
    else:
        omega_min = min(params.omega_h, params.omega_c)
    x = omega_min / max(params.T_h, params.T_c)
    return max(2, math.floor(-math.log(TAIL_TARGET) / x))
