"""Steady-state heat transport through a two-node network, two ways.

A hot bath drives node A, a cold bath drains node B, and the nodes exchange
excitations with strength epsilon.  The package solves the steady state under
two Markovian treatments: a local one, where each bath addresses its own node
at the bare frequency (cheap, but it can push heat against the temperature
bias), and a global one, acting on the delocalised normal modes, which keeps
the second law intact.  A truncated-Fock brute-force solver audits both.
"""

from . import bath, cli, gaussian, global_mme, local_mme, model, oracle
from .errors import HeatNetError
from .gaussian import CorrelationReport, CovarianceMatrix, correlations
from .global_mme import GlobalSteadyState
from .local_mme import LocalSteadyState, MomentState
from .model import NetworkParams, NormalModeBasis, Statistics, normal_mode_basis

__version__ = "0.1.0"

local_steady_state = local_mme.steady_state
global_steady_state = global_mme.steady_state

__all__ = [
    "CorrelationReport",
    "CovarianceMatrix",
    "GlobalSteadyState",
    "HeatNetError",
    "LocalSteadyState",
    "MomentState",
    "NetworkParams",
    "NormalModeBasis",
    "Statistics",
    "bath",
    "cli",
    "correlations",
    "gaussian",
    "global_mme",
    "global_steady_state",
    "local_mme",
    "local_steady_state",
    "model",
    "normal_mode_basis",
    "oracle",
]
