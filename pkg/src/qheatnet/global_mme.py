"""Global treatment: dissipation acts on the delocalised normal modes.

After rotating to the modes d_+- (bosonic nodes only), each bath couples to
both modes with weights fixed by the rotation angle:

    hot bath:   gamma_h(omega_+) cos^2(theta) on d_+ and gamma_h(omega_-) sin^2(theta) on d_-
    cold bath:  gamma_c(omega_+) sin^2(theta) on d_+ and gamma_c(omega_-) cos^2(theta) on d_-

with upward Boltzmann weights exp(-beta_l omega_+-) evaluated at the dressed
frequencies.  The two modes decouple, so each steady occupation n_+- is a
two-bath detailed-balance mixture and the currents follow per mode.  Because
every exchange happens at a single dressed frequency shared by both baths,
the entropy production rate (beta_c - beta_h) * J_h is nonnegative whenever
the currents are, i.e. this treatment cannot violate the second law.

The generator is secular: it drops the d_+ <-> d_- coherence coupling, which
is only justified when the mode splitting omega_+ - omega_- dominates all
rates.  steady_state flags the opposite regime via secular_warning instead of
refusing, since the algebra stays well defined.
"""

import math
from dataclasses import dataclass

from . import bath
from .errors import UnsupportedStatistics
from .model import NetworkParams, NormalModeBasis, Statistics, normal_mode_basis, validate

# Warn when the mode splitting is within this factor of the fastest rate.
SECULAR_FACTOR = 10.0


@dataclass(frozen=True)
class GlobalSteadyState:
    """Steady normal-mode occupations and the observables rebuilt from them."""

    n_plus: float
    n_minus: float
    nA: float  # cos^2 n_+ + sin^2 n_-
    nB: float  # sin^2 n_+ + cos^2 n_-
    J_h: float
    J_c: float
    sigma: float
    secular_warning: bool


@dataclass(frozen=True)
class DissipationChannel:
    """One Lindblad channel of the generator written in the node basis.

    kind selects the jump structure: 'a' and 'b' are single-node thermal
    channels, 'cross' is the symmetric two-node channel
    a rho b' + b rho a' - {a'b + b'a, rho}/2 (plus its Boltzmann-weighted
    upward partner).  weight multiplies the whole channel and is signed for
    'cross'; boltzmann is the upward weight exp(-beta omega) of the dressed
    transition the channel descends from.
    """

    kind: str
    weight: float
    boltzmann: float


@dataclass(frozen=True)
class LocalBasisGenerator:
    """The global generator expanded over node operators, per bath."""

    hot: tuple[DissipationChannel, ...]
    cold: tuple[DissipationChannel, ...]


def _setup(params: NetworkParams) -> tuple[NormalModeBasis, tuple[float, float, float, float]]:
    validate(params)
    if params.statistics is not Statistics.BOSON:
        raise UnsupportedStatistics("the global treatment is defined for bosonic nodes only")
    basis = normal_mode_basis(params)
    return basis, bath.dressed_rates(params, basis)


def _mode_balance(
    omega: float, k_h: float, x_h: float, k_c: float, x_c: float
) -> tuple[float, float, float]:
    """Occupation and per-bath currents of one mode fed by two thermal channels.

    k_l are the downward channel strengths gamma_l^sigma * weight, x_l the
    upward Boltzmann weights exp(-beta_l omega).  Steady state balances
    total up-pumping k_l x_l against total decay k_l (1 - x_l).
    """
    loss = k_h * (1.0 - x_h) + k_c * (1.0 - x_c)
    n = (k_h * x_h + k_c * x_c) / loss
    J_h = omega * k_h * (x_h - (1.0 - x_h) * n)
    J_c = omega * k_c * (x_c - (1.0 - x_c) * n)
    return n, J_h, J_c


def steady_state(params: NetworkParams) -> GlobalSteadyState:
    """Steady state of the global generator from per-mode detailed balance."""
    basis, (gh_p, gh_m, gc_p, gc_m) = _setup(params)
    bh, bc = params.beta_h, params.beta_c
    wp, wm = basis.omega_plus, basis.omega_minus
    n_p, Jh_p, Jc_p = _mode_balance(
        wp, gh_p * basis.c2, math.exp(-bh * wp), gc_p * basis.s2, math.exp(-bc * wp)
    )
    n_m, Jh_m, Jc_m = _mode_balance(
        wm, gh_m * basis.s2, math.exp(-bh * wm), gc_m * basis.c2, math.exp(-bc * wm)
    )
    J_h = Jh_p + Jh_m
    J_c = Jc_p + Jc_m
    sigma = -J_h / params.T_h - J_c / params.T_c
    warning = (wp - wm) < SECULAR_FACTOR * max(gh_p, gh_m, gc_p, gc_m)
    return GlobalSteadyState(
        n_plus=n_p,
        n_minus=n_m,
        nA=basis.c2 * n_p + basis.s2 * n_m,
        nB=basis.s2 * n_p + basis.c2 * n_m,
        J_h=J_h,
        J_c=J_c,
        sigma=sigma,
        secular_warning=bool(warning),
    )


def heat_current_closed_form(params: NetworkParams) -> float:
    """Steady J_h as an explicit two-term rational expression.

    Each term is the detailed-balance current through one normal mode,
    written over a common positive denominator; the sign of each term is
    carried by exp(beta_c omega) - exp(beta_h omega) at that mode's dressed
    frequency, so both terms vanish at equal temperatures and the whole
    expression vanishes at epsilon = 0 through the cos^2 sin^2 prefactor.
    Independent of steady_state(), which goes through the occupations n_+-.
    """
    basis, (gh_p, gh_m, gc_p, gc_m) = _setup(params)
    c2, s2 = basis.c2, basis.s2
    bh, bc = params.beta_h, params.beta_c

    def term(omega: float, g_h: float, g_c: float, w_hot: float, w_cold: float) -> float:
        # w_hot is the weight of the hot channel on this mode (c2 for +, s2 for -).
        E_h = math.exp(bh * omega)
        E_c = math.exp(bc * omega)
        num = (E_c - E_h) * g_c * g_h * omega * w_hot * w_cold
        den = w_hot * E_h * (E_c - 1.0) * g_c + w_cold * E_c * (E_h - 1.0) * g_h
        return num / den

    return term(basis.omega_plus, gh_p, gc_p, c2, s2) + term(basis.omega_minus, gh_m, gc_m, s2, c2)


def local_basis_generator(params: NetworkParams) -> LocalBasisGenerator:
    """Expand the global dissipators over node operators a and b.

    Substituting d_+ = c a + s b and d_- = c b - s a into the mode channels
    and collecting terms yields, per bath, two 'a' channels, two 'b' channels
    and two signed 'cross' channels, one of each pair per dressed frequency.
    At epsilon = 0 the table collapses to the local generator's single-node
    channels evaluated at the bare frequencies.
    """
    basis, (gh_p, gh_m, gc_p, gc_m) = _setup(params)
    c2, s2, cs = basis.c2, basis.s2, basis.cs
    x_h_p = math.exp(-params.beta_h * basis.omega_plus)
    x_h_m = math.exp(-params.beta_h * basis.omega_minus)
    x_c_p = math.exp(-params.beta_c * basis.omega_plus)
    x_c_m = math.exp(-params.beta_c * basis.omega_minus)
    hot = (
        DissipationChannel("a", gh_p * c2 * c2, x_h_p),
        DissipationChannel("a", gh_m * s2 * s2, x_h_m),
        DissipationChannel("b", gh_p * c2 * s2, x_h_p),
        DissipationChannel("b", gh_m * c2 * s2, x_h_m),
        DissipationChannel("cross", gh_p * c2 * cs, x_h_p),
        DissipationChannel("cross", -gh_m * s2 * cs, x_h_m),
    )
    cold = (
        DissipationChannel("a", gc_p * c2 * s2, x_c_p),
        DissipationChannel("a", gc_m * c2 * s2, x_c_m),
        DissipationChannel("b", gc_p * s2 * s2, x_c_p),
        DissipationChannel("b", gc_m * c2 * c2, x_c_m),
        DissipationChannel("cross", gc_p * s2 * cs, x_c_p),
        DissipationChannel("cross", -gc_m * c2 * cs, x_c_m),
    )
    return LocalBasisGenerator(hot=hot, cold=cold)
