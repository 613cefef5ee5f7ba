"""Command-line front end: point evaluation, parameter sweeps, figure presets.

Output is a flat table, one row per (grid point, treatment), echoing the full
parameter set so every row stands alone.  Columns that do not apply to a row
(normal-mode occupations for the local treatment, quadrature correlations for
two-level nodes) stay empty, and per-row failures land in the final error
column as the exception class name instead of aborting the sweep.  Floats are
printed with 17 significant digits so identical invocations are byte
identical and values round-trip exactly.

The fig2/fig3/fig4 presets are the three canned sweeps this package ships:
the sign map of the local entropy production over (omega_h, T_h), the
epsilon sweep comparing both treatments, and the omega_h sweep through
resonance.  Their fixed constants and grid ranges are frozen here so the
tables they emit are reproducible claims, not just defaults.
"""

import argparse
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import global_mme, local_mme, oracle
from .errors import GaplessSpectrum, HeatNetError
from .gaussian import correlations, covariance_global, covariance_local
from .model import (
    _FLOAT_KEYS,
    NetworkParams,
    Statistics,
    load_config,
    normal_mode_basis,
    validate,
)

COLUMNS = (
    "approach",
    "omega_h",
    "omega_c",
    "epsilon",
    "T_h",
    "T_c",
    "kappa",
    "statistics",
    "n_A",
    "n_B",
    "X",
    "Y",
    "n_plus",
    "n_minus",
    "J_h",
    "J_c",
    "sigma",
    "cor_xAxB",
    "cor_xApB",
    "cor_pAxB",
    "cor_pApB",
    "separable",
    "secular_warning",
    "error",
)

_STRING_COLUMNS = {"approach", "statistics", "error"}


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: name, inclusive range, point count, spacing."""

    name: str
    start: float
    stop: float
    count: int
    scale: str  # "lin" or "log"

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """A full sweep: one or two axes over a fixed base parameter set."""

    axis1: SweepAxis
    axis2: SweepAxis | None
    fixed: NetworkParams
    approaches: tuple[str, ...]
    n_max: int = 12


def parse_axis(text: str) -> SweepAxis:
    """Parse 'name:start:stop:count:lin|log' into a SweepAxis."""
    parts = text.split(":")
    if len(parts) != 5:
        raise ValueError(f"axis must be name:start:stop:count:lin|log, got {text!r}")
    name, start_s, stop_s, count_s, scale = (p.strip() for p in parts)
    if name not in _FLOAT_KEYS:
        raise ValueError(f"axis parameter must be one of {', '.join(_FLOAT_KEYS)}, got {name!r}")
    start, stop, count = float(start_s), float(stop_s), int(count_s)
    if count < 2:
        raise ValueError(f"axis count must be >= 2, got {count}")
    if not start < stop:
        raise ValueError(f"axis needs start < stop, got {start!r} >= {stop!r}")
    if scale not in ("lin", "log"):
        raise ValueError(f"axis scale must be lin or log, got {scale!r}")
    if scale == "log" and start <= 0:
        raise ValueError(f"log axis needs start > 0, got {start!r}")
    return SweepAxis(name=name, start=start, stop=stop, count=count, scale=scale)


# --- row construction -------------------------------------------------------


def _base_row(approach: str, params: NetworkParams) -> dict:
    row = dict.fromkeys(COLUMNS, None)
    row["approach"] = approach
    row["omega_h"] = params.omega_h
    row["omega_c"] = params.omega_c
    row["epsilon"] = params.epsilon
    row["T_h"] = params.T_h
    row["T_c"] = params.T_c
    row["kappa"] = params.kappa
    row["statistics"] = params.statistics.value
    row["error"] = ""
    return row


def _fill_correlations(row: dict, report) -> None:
    row["cor_xAxB"] = report.cor_xAxB
    row["cor_xApB"] = report.cor_xApB
    row["cor_pAxB"] = report.cor_pAxB
    row["cor_pApB"] = report.cor_pApB
    row["separable"] = report.separable


def _local_row(params: NetworkParams, with_correlations: bool) -> dict:
    row = _base_row("local", params)
    state = local_mme.steady_state(params)
    m = state.moments
    row.update(n_A=m.nA, n_B=m.nB, X=m.X, Y=m.Y, J_h=state.J_h, J_c=state.J_c, sigma=state.sigma)
    if with_correlations and params.statistics is Statistics.BOSON:
        _fill_correlations(row, correlations(covariance_local(m)))
    return row


def _global_row(params: NetworkParams, with_correlations: bool) -> dict:
    row = _base_row("global", params)
    state = global_mme.steady_state(params)
    basis = normal_mode_basis(params)
    row.update(
        n_A=state.nA,
        n_B=state.nB,
        X=2.0 * basis.cs * (state.n_plus - state.n_minus),
        Y=0.0,
        n_plus=state.n_plus,
        n_minus=state.n_minus,
        J_h=state.J_h,
        J_c=state.J_c,
        sigma=state.sigma,
        secular_warning=state.secular_warning,
    )
    if with_correlations:
        _fill_correlations(row, correlations(covariance_global(basis, state.n_plus, state.n_minus)))
    return row


def _oracle_row(approach: str, params: NetworkParams, n_max: int, with_correlations: bool) -> dict:
    row = _base_row(approach, params)
    generator = oracle.Generator.GLOBAL if approach.endswith("global") else oracle.Generator.LOCAL
    liou = oracle.build(params, generator, n_max)
    rho = oracle.steady_state(liou)
    m = oracle.moments(liou, rho)
    J_h = oracle.heat_current(liou, rho, "hot")
    J_c = oracle.heat_current(liou, rho, "cold")
    row.update(
        n_A=m.nA,
        n_B=m.nB,
        X=m.X,
        Y=m.Y,
        J_h=J_h,
        J_c=J_c,
        sigma=-J_h / params.T_h - J_c / params.T_c,
    )
    if params.statistics is Statistics.BOSON:
        try:
            row["n_plus"], row["n_minus"] = oracle.mode_populations(liou, rho)
        except GaplessSpectrum:
            pass  # moments are fine, the mode decomposition just does not exist
        if with_correlations:
            _fill_correlations(row, correlations(oracle.quadrature_covariance(liou, rho)))
    return row


def run_point(
    params: NetworkParams,
    approaches: tuple[str, ...],
    n_max: int = 12,
    with_correlations: bool = True,
) -> list[dict]:
    """One row per requested treatment; failures become the row's error column."""
    rows = []
    for approach in approaches:
        try:
            if approach == "local":
                row = _local_row(params, with_correlations)
            elif approach == "global":
                row = _global_row(params, with_correlations)
            elif approach in ("oracle-local", "oracle-global"):
                row = _oracle_row(approach, params, n_max, with_correlations)
            else:
                raise ValueError(f"unknown approach {approach!r}")
        except HeatNetError as exc:
            row = _base_row(approach, params)
            row["error"] = type(exc).__name__
        rows.append(row)
    return rows


def sweep_blocks(
    fixed: NetworkParams,
    axis1_name: str,
    axis1_values: np.ndarray,
    axis2_name: str | None,
    axis2_values: np.ndarray | None,
    approaches: tuple[str, ...],
    n_max: int = 12,
    with_correlations: bool = True,
) -> list[list[dict]]:
    """Evaluate a grid in deterministic order: axis1 outer, axis2 inner.

    Returns one block of rows per axis1 value; blocks become blank-line
    separated scanlines in the gnuplot layout.
    """
    blocks = []
    inner = [None] if axis2_values is None else list(axis2_values)
    for v1 in axis1_values:
        block: list[dict] = []
        for v2 in inner:
            updates = {axis1_name: float(v1)}
            if axis2_name is not None:
                updates[axis2_name] = float(v2)
            params = replace(fixed, **updates)
            block.extend(run_point(params, approaches, n_max, with_correlations))
        blocks.append(block)
    return blocks


def run_sweep(spec: SweepSpec) -> list[list[dict]]:
    axis2 = spec.axis2
    return sweep_blocks(
        spec.fixed,
        spec.axis1.name,
        spec.axis1.values(),
        axis2.name if axis2 is not None else None,
        axis2.values() if axis2 is not None else None,
        spec.approaches,
        spec.n_max,
    )


# --- figure presets ---------------------------------------------------------


def preset_fig2() -> tuple[tuple[str, ...], list[list[dict]]]:
    """Sign map of the local entropy production over (omega_h, T_h).

    Fixed constants: T_c = 10, omega_c = 5, epsilon = 1e-4, kappa = 1e-7.
    T_h starts just above T_c: the sign map statement sign(sigma) =
    sign(omega_c/T_c - omega_h/T_h) holds for a hotter hot bath, which is
    also the transport regime the map is about.  The violation borderline
    omega_h/T_h = 1/2 then crosses the full grid.  Quadrature correlations
    are skipped; the map is about sigma only.
    """
    fixed = NetworkParams(omega_c=5.0, epsilon=1e-4, T_c=10.0, kappa=1e-7)
    blocks = sweep_blocks(
        fixed,
        "T_h",
        np.linspace(10.05, 20.0, 200),
        "omega_h",
        np.linspace(0.5, 15.0, 200),
        ("local",),
        with_correlations=False,
    )
    for block in blocks:
        for row in block:
            sigma = row["sigma"]
            row["sigma_sign"] = None if sigma is None else int(np.sign(sigma))
    return COLUMNS + ("sigma_sign",), blocks


def preset_fig3() -> tuple[tuple[str, ...], list[list[dict]]]:
    """Both treatments across the coupling range epsilon in [1e-5, 1].

    Fixed constants: T_h = 12, T_c = 10, omega_h = 10, omega_c = 5,
    kappa = 1e-4.  Log-spaced, 61 points.
    """
    fixed = NetworkParams(omega_h=10.0, omega_c=5.0, T_h=12.0, T_c=10.0, kappa=1e-4)
    blocks = sweep_blocks(
        fixed, "epsilon", np.geomspace(1e-5, 1.0, 61), None, None, ("local", "global")
    )
    return COLUMNS, blocks


def _fig4_grid() -> np.ndarray:
    # Dense (0.01) through the resonance window around omega_c = 5, 0.1 outside;
    # the outside spacing is also the resolution at the local sign flip at 6.
    return np.concatenate(
        [
            np.linspace(0.5, 4.4, 40),
            np.linspace(4.5, 5.5, 101),
            np.linspace(5.6, 15.0, 95),
        ]
    )


def preset_fig4() -> tuple[tuple[str, ...], list[list[dict]]]:
    """Both treatments across omega_h through resonance with omega_c.

    Fixed constants: T_h = 12, T_c = 10, omega_c = 5, epsilon = 1e-3,
    kappa = 1e-7.
    """
    fixed = NetworkParams(omega_c=5.0, epsilon=1e-3, T_h=12.0, T_c=10.0, kappa=1e-7)
    blocks = sweep_blocks(fixed, "omega_h", _fig4_grid(), None, None, ("local", "global"))
    return COLUMNS, blocks


# --- rendering --------------------------------------------------------------


def _format_value(value, column: str, gnuplot: bool) -> str:
    if value is None:
        if not gnuplot:
            return ""
        return "-" if column in _STRING_COLUMNS else "nan"
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, str):
        if gnuplot and value == "":
            return "-"
        return value
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def render_csv(columns: tuple[str, ...], blocks: list[list[dict]]) -> str:
    lines = [",".join(columns)]
    for block in blocks:
        for row in block:
            lines.append(",".join(_format_value(row.get(c), c, False) for c in columns))
    return "\n".join(lines) + "\n"


def render_gnuplot(columns: tuple[str, ...], blocks: list[list[dict]]) -> str:
    """Whitespace-separated table; blocks become blank-line separated so a
    2-D sweep is directly usable as a gnuplot grid."""
    chunks = []
    for block in blocks:
        lines = [" ".join(_format_value(row.get(c), c, True) for c in columns) for row in block]
        chunks.append("\n".join(lines))
    return "# " + " ".join(columns) + "\n" + "\n\n".join(chunks) + "\n"


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


# --- argument plumbing ------------------------------------------------------


def _params_from_args(args: argparse.Namespace) -> NetworkParams:
    params = NetworkParams()
    if args.config is not None:
        params = load_config(args.config, base=params)
    updates: dict = {}
    for name in _FLOAT_KEYS:
        value = getattr(args, name)
        if value is not None:
            updates[name] = value
    if args.statistics is not None:
        updates["statistics"] = Statistics(args.statistics)
    params = replace(params, **updates)
    # a base parameter set broken before any sweeping is a usage error,
    # not a per-row one; swept values are still judged row by row
    validate(params)
    return params


def _approaches_from_args(args: argparse.Namespace) -> tuple[str, ...]:
    base = ("local", "global") if args.approach == "both" else (args.approach,)
    if getattr(args, "oracle", False):
        return base + tuple(f"oracle-{name}" for name in base)
    return base


def _build_parser() -> argparse.ArgumentParser:
    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--config", help="key=value parameter file")
    params.add_argument("--omega-h", dest="omega_h", type=float, help="node A frequency")
    params.add_argument("--omega-c", dest="omega_c", type=float, help="node B frequency")
    params.add_argument("--epsilon", type=float, help="inter-node coupling")
    params.add_argument("--T-h", dest="T_h", type=float, help="hot bath temperature")
    params.add_argument("--T-c", dest="T_c", type=float, help="cold bath temperature")
    params.add_argument("--kappa", type=float, help="spectral response prefactor")
    params.add_argument("--statistics", choices=("boson", "tls"), help="node statistics")

    approach = argparse.ArgumentParser(add_help=False)
    approach.add_argument(
        "--approach", choices=("local", "global", "both"), default="both",
        help="which treatment(s) to evaluate",
    )
    approach.add_argument(
        "--oracle", action="store_true",
        help="also solve the truncated-space generator for each treatment",
    )
    approach.add_argument(
        "--nmax", type=int, default=12, help="bosonic Fock truncation for --oracle",
    )

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", help="output path (default: stdout)")
    output.add_argument(
        "--gnuplot", action="store_true",
        help="emit a gnuplot-ready table instead of CSV",
    )

    parser = argparse.ArgumentParser(
        prog="qheatnet",
        description="Steady-state heat transport through a two-node network, "
        "local vs global master equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser(
        "point", parents=[params, approach, output], help="evaluate one parameter set"
    )
    p_point.set_defaults(handler=_cmd_point)

    p_sweep = sub.add_parser(
        "sweep", parents=[params, approach, output], help="sweep one or two parameters"
    )
    p_sweep.add_argument(
        "--axis1", required=True, help="swept axis as name:start:stop:count:lin|log"
    )
    p_sweep.add_argument("--axis2", help="optional second axis, same format")
    p_sweep.set_defaults(handler=_cmd_sweep)

    for name, handler, doc in (
        ("fig2", _cmd_fig2, "local entropy-production sign map over (omega_h, T_h)"),
        ("fig3", _cmd_fig3, "coupling sweep comparing both treatments"),
        ("fig4", _cmd_fig4, "omega_h sweep through resonance, both treatments"),
    ):
        p = sub.add_parser(name, parents=[output], help=doc)
        p.set_defaults(handler=handler)
    return parser


def _cmd_point(args: argparse.Namespace) -> tuple[tuple[str, ...], list[list[dict]]]:
    params = _params_from_args(args)
    return COLUMNS, [run_point(params, _approaches_from_args(args), args.nmax)]


def _cmd_sweep(args: argparse.Namespace) -> tuple[tuple[str, ...], list[list[dict]]]:
    spec = SweepSpec(
        axis1=parse_axis(args.axis1),
        axis2=parse_axis(args.axis2) if args.axis2 else None,
        fixed=_params_from_args(args),
        approaches=_approaches_from_args(args),
        n_max=args.nmax,
    )
    return COLUMNS, run_sweep(spec)


def _cmd_fig2(args: argparse.Namespace) -> tuple[tuple[str, ...], list[list[dict]]]:
    return preset_fig2()


def _cmd_fig3(args: argparse.Namespace) -> tuple[tuple[str, ...], list[list[dict]]]:
    return preset_fig3()


def _cmd_fig4(args: argparse.Namespace) -> tuple[tuple[str, ...], list[list[dict]]]:
    return preset_fig4()


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        columns, blocks = args.handler(args)
    except (ValueError, HeatNetError) as exc:
        # Bad config files and malformed axis specs are usage errors; per-point
        # failures inside a sweep never reach here, they land in the error column.
        print(f"qheatnet: error: {exc}", file=sys.stderr)
        return 2
    render = render_gnuplot if args.gnuplot else render_csv
    _write_output(render(columns, blocks), args.out)
    return 0
