"""Command-line front end: verification runs and machine-readable data export.

Subcommands
-----------
verify   run the full oracle suite and report one line per check
trace    fluctuation amplitudes and uncertainty products on a time grid
sweep    envelope frequency and period statistics across couplings
sample   one seeded stochastic realization with its envelope
figures  write the standard set of figure data files plus an index

Exit status: 0 success, 1 verification failure, 2 usage or config error.
All numeric output is serialized with 9 significant digits; CSV files are
UTF-8, comma-delimited, with a header row and LF line endings.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic, fock, oracle
from .model import BellState, OscillatorIndex, SystemParams, beat_frequency, eta
from .sampler import RealizationConfig, sample_realization

__all__ = ["RunConfig", "main"]

FIGURE_COUPLINGS = (0.0, 0.2, 0.8)  # named coupling regimes: none, strong, very strong
FIGURE_SAMPLE_COUPLING = 0.8
SWEEP_SAMPLES_PER_PERIOD = 4096
DEFAULT_SWEEP_GRID = tuple(np.linspace(0.0, 2.0, 81))


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of every CLI knob a subcommand may consume."""

    omega: float = 1.0
    coupling: float = 0.5
    state: BellState = BellState.PSI_PLUS
    oscillator: OscillatorIndex = OscillatorIndex.ONE
    t_max: float | None = None
    steps: int = 200
    cutoff: int = 12
    tolerance: float = 1e-8
    seed: int = 12345
    format: str = "csv"
    output: str = "-"
    out_dir: str = "figures"
    couplings: tuple[float, ...] | None = None

    def params(self) -> SystemParams:
        return SystemParams(omega=self.omega, coupling_ratio=self.coupling)

    def resolved_t_max(self, coupling: float | None = None) -> float:
        """Explicit --t-max, else two envelope periods (two base periods at g=0)."""
        if self.t_max is not None:
            return self.t_max
        g = self.coupling if coupling is None else coupling
        params = SystemParams(omega=self.omega, coupling_ratio=g)
        if g > 0:
            return 2.0 * (2.0 * math.pi / abs(beat_frequency(params)))
        return 2.0 * (2.0 * math.pi / self.omega)


# ---------------------------------------------------------------------------
# serialization helpers


def _fmt(value: float) -> str:
    return f"{float(value):.9g}"


def _write_csv(stream, columns: dict[str, np.ndarray]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns.keys())
    for row in zip(*columns.values()):
        writer.writerow(_fmt(v) for v in row)


def _write_json(stream, columns: dict[str, np.ndarray], metadata: dict) -> None:
    payload = {
        "metadata": metadata,
        "columns": {k: [float(_fmt(v)) for v in col] for k, col in columns.items()},
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _emit(config: RunConfig, columns: dict[str, np.ndarray], metadata: dict) -> None:
    if config.output == "-":
        _dump(sys.stdout, config, columns, metadata)
        return
    with open(config.output, "w", newline="", encoding="utf-8") as fh:
        _dump(fh, config, columns, metadata)


def _dump(stream, config: RunConfig, columns, metadata) -> None:
    if config.format == "json":
        _write_json(stream, columns, metadata)
    else:
        _write_csv(stream, columns)


def _metadata(config: RunConfig, command: str, **extra) -> dict:
    meta = {
        "command": command,
        "omega": config.omega,
        "coupling": config.coupling,
        "state": config.state.value,
        "oscillator": int(config.oscillator),
        "t_max": config.resolved_t_max() if command in ("trace", "sample") else config.t_max,
        "steps": config.steps,
        "cutoff": config.cutoff,
        "tolerance": config.tolerance,
        "seed": config.seed,
        "format": config.format,
    }
    meta.update(extra)
    return meta


def read_columns(path) -> dict[str, np.ndarray]:
    """Load a CSV written by this tool back into named float columns."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader]
    data = np.asarray(rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(header)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_trace(config: RunConfig) -> int:
    params = config.params()
    t_max = config.resolved_t_max()
    tr = analytic.trace(params, config.state, 0.0, t_max, config.steps)
    amp1_nc, up1_nc = analytic.baseline_nc(config.state, OscillatorIndex.ONE)
    _, up2_nc = analytic.baseline_nc(config.state, OscillatorIndex.TWO)
    ones = np.ones_like(tr.times)
    columns = {
        "t": tr.times,
        "dx1": tr.dx1,
        "dx2": tr.dx2,
        "dp1": tr.dp1,
        "dp2": tr.dp2,
        "up1": tr.up1,
        "up2": tr.up2,
        "dx1_nc": amp1_nc * ones,
        "dp1_nc": amp1_nc * ones,
        "up1_nc": up1_nc * ones,
        "up2_nc": up2_nc * ones,
    }
    _emit(config, columns, _metadata(config, "trace"))
    return 0


def _pair_stats(params: SystemParams, state: BellState, osc: OscillatorIndex):
    """(min, max, mean, fraction_below) of one uncertainty product over a period."""
    if params.coupling_ratio == 0:
        level = analytic.baseline_nc(state, osc)[1]
        return level, level, level, 0.0
    st = analytic.period_statistics(params, state, osc, SWEEP_SAMPLES_PER_PERIOD)
    return st.min_product, st.max_product, st.mean_product, st.fraction_below_nc


def cmd_sweep(config: RunConfig, couplings) -> int:
    couplings = [float(g) for g in couplings]
    if not couplings:
        raise ValueError("couplings list must be nonempty")
    for g in couplings:
        if not (math.isfinite(g) and g >= 0):
            raise ValueError(f"couplings must be finite and >= 0, got {g!r}")
    rows = []
    for g in couplings:
        params = SystemParams(omega=config.omega, coupling_ratio=g)
        e = eta(params)
        stats1 = _pair_stats(params, config.state, OscillatorIndex.ONE)
        stats2 = _pair_stats(params, config.state, OscillatorIndex.TWO)
        rows.append((g, e, abs(beat_frequency(params)) / config.omega, *stats1, *stats2))
    data = np.asarray(rows, dtype=float)
    names = (
        "coupling",
        "eta",
        "abs_beat_over_omega",
        "min_up1",
        "max_up1",
        "mean_up1",
        "fraction_below_nc_1",
        "min_up2",
        "max_up2",
        "mean_up2",
        "fraction_below_nc_2",
    )
    columns = {name: data[:, i] for i, name in enumerate(names)}
    _emit(config, columns, _metadata(config, "sweep", couplings=couplings))
    return 0


def cmd_sample(config: RunConfig) -> int:
    if config.steps < 2:
        raise ValueError(f"sample needs steps >= 2, got {config.steps}")
    t_max = config.resolved_t_max()
    rc = RealizationConfig(seed=config.seed, dt=t_max / (config.steps - 1), t_max=t_max)
    real = sample_realization(config.params(), config.state, config.oscillator, rc)
    columns = {
        "t": real.times,
        "sample": real.values,
        "envelope_plus": real.envelope,
        "envelope_minus": -real.envelope,
    }
    _emit(config, columns, _metadata(config, "sample"))
    return 0


def cmd_figures(config: RunConfig, out_dir: str, couplings=None) -> int:
    if config.steps < 2:
        raise ValueError(f"figures need steps >= 2, got {config.steps}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sweep_grid = [float(g) for g in (couplings if couplings else DEFAULT_SWEEP_GRID)]
    t_max = config.t_max if config.t_max is not None else config.resolved_t_max(
        coupling=min(g for g in FIGURE_COUPLINGS if g > 0)
    ) / 2.0  # one full period of the slowest oscillating curve
    index = []

    def save(name: str, columns: dict, description: dict) -> None:
        path = out / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            _write_csv(fh, columns)
        index.append({"file": name, **description})

    sweep_cfg = RunConfig(
        omega=config.omega,
        state=config.state,
        format="csv",
        output=str(out / "fig1.csv"),
    )
    cmd_sweep(sweep_cfg, sweep_grid)
    index.append(
        {
            "file": "fig1.csv",
            "figure": 1,
            "quantity": "relative envelope frequency and period statistics vs coupling",
            "state": config.state.value,
        }
    )

    sample_params = SystemParams(omega=config.omega, coupling_ratio=FIGURE_SAMPLE_COUPLING)
    rc = RealizationConfig(seed=config.seed, dt=t_max / (config.steps - 1), t_max=t_max)
    real = sample_realization(sample_params, config.state, OscillatorIndex.ONE, rc)
    save(
        "fig2.csv",
        {
            "t": real.times,
            "sample": real.values,
            "envelope_plus": real.envelope,
            "envelope_minus": -real.envelope,
        },
        {
            "figure": 2,
            "quantity": "one seeded realization of the oscillator-1 coordinate fluctuations",
            "state": config.state.value,
            "coupling": FIGURE_SAMPLE_COUPLING,
            "seed": config.seed,
        },
    )

    per_figure = [
        ("fig3.csv", 3, "dx1", "normalized coordinate fluctuation amplitude, oscillator 1"),
        ("fig4.csv", 4, "dp1", "normalized momentum fluctuation amplitude, oscillator 1"),
        ("fig5.csv", 5, "up1", "normalized uncertainty product, oscillator 1"),
        ("fig6.csv", 6, "up2", "normalized uncertainty product, oscillator 2"),
    ]
    times = np.linspace(0.0, t_max, config.steps)
    traces = {}
    for g in FIGURE_COUPLINGS:
        params = SystemParams(omega=config.omega, coupling_ratio=g)
        traces[g] = analytic.trace(params, config.state, 0.0, t_max, config.steps)
    for name, number, column, description in per_figure:
        columns = {"t": times}
        for g in FIGURE_COUPLINGS:
            columns[f"{column}_g{g:g}"] = getattr(traces[g], column)
        save(
            name,
            columns,
            {
                "figure": number,
                "quantity": description,
                "state": config.state.value,
                "couplings": list(FIGURE_COUPLINGS),
            },
        )

    with open(out / "index.json", "w", encoding="utf-8") as fh:
        json.dump(
            {
                "omega": config.omega,
                "state": config.state.value,
                "t_max": t_max,
                "steps": config.steps,
                "files": index,
            },
            fh,
            indent=2,
        )
        fh.write("\n")
    print(f"wrote {len(index)} figure data files and index.json to {out}")
    return 0


def cmd_verify(config: RunConfig) -> int:
    params = config.params()
    basis = fock.TwoModeBasis(config.cutoff)
    tol = config.tolerance

    checks: list[oracle.OracleReport] = []
    checks.extend(oracle.commutator_check(basis))
    checks.extend(oracle.table1_check(params, basis, tol))
    accepted, rejected = oracle.cross_momentum_scaling_probe(params, basis, tol)
    checks.append(accepted)
    check_time = 1.0 / config.omega
    checks.append(
        oracle.heisenberg_evolution_check(params, basis, check_time, tol, canonical_momentum=True)
    )
    noncanonical = oracle.heisenberg_evolution_check(
        params, basis, check_time, tol, canonical_momentum=False
    )

    t_max = config.resolved_t_max()
    times = np.linspace(0.0, t_max, config.steps)
    for state in (BellState.PSI_PLUS, BellState.PSI_MINUS):
        closed = analytic.trace(params, state, 0.0, t_max, config.steps)
        evolved = oracle.evolve_expectations(params, state, basis, times)
        dev = max(
            float(np.max(np.abs(getattr(closed, col) - getattr(evolved, col))))
            for col in ("dx1", "dx2", "dp1", "dp2")
        )
        checks.append(
            oracle.OracleReport.compare(
                f"trace-match[{state.value}] max dev, {config.steps} pts", 0.0, dev, tol
            )
        )

    for report in checks:
        print(report.line())
    print("INFO negative controls (rejected variants, expected to FAIL):")
    print("INFO " + rejected.line())
    print("INFO " + noncanonical.line())
    failed = [r for r in checks if not r.passed]
    print(f"verify: {len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_physics_args(p: argparse.ArgumentParser, coupling: bool = True) -> None:
    p.add_argument("--omega", type=float, default=1.0, help="base angular frequency (default 1)")
    if coupling:
        p.add_argument(
            "--coupling", type=float, default=0.5, help="coupling ratio g (default 0.5)"
        )


def _add_state_args(p: argparse.ArgumentParser, oscillator: bool = False) -> None:
    p.add_argument(
        "--state",
        choices=[s.value for s in BellState],
        default=BellState.PSI_PLUS.value,
        help="entangled state (default psi-plus)",
    )
    if oscillator:
        p.add_argument(
            "--oscillator", type=int, choices=[1, 2], default=1, help="oscillator (default 1)"
        )


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--t-max",
        type=float,
        default=None,
        help="grid end time (default: two envelope periods)",
    )
    p.add_argument("--steps", type=int, default=200, help="number of grid points (default 200)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="output format")
    p.add_argument("--output", default="-", help="output path, '-' for stdout (default)")


def _parse_couplings(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad couplings list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("couplings list must be nonempty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellosc",
        description=(
            "Quantum fluctuations of two position-position coupled oscillators "
            "in single-excitation entangled states."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the oracle suite against the closed forms")
    _add_physics_args(p)
    p.add_argument("--cutoff", type=int, default=12, help="Fock cutoff per oscillator (default 12)")
    p.add_argument("--tolerance", type=float, default=1e-8, help="check tolerance (default 1e-8)")
    _add_grid_args(p)
    p.set_defaults(handler=lambda cfg, args: cmd_verify(cfg))

    p = sub.add_parser("trace", help="export amplitude and uncertainty-product columns")
    _add_physics_args(p)
    _add_state_args(p)
    _add_grid_args(p)
    _add_output_args(p)
    p.set_defaults(handler=lambda cfg, args: cmd_trace(cfg))

    p = sub.add_parser("sweep", help="export period statistics across couplings")
    _add_physics_args(p, coupling=False)
    _add_state_args(p)
    p.add_argument(
        "--couplings",
        type=_parse_couplings,
        default=None,
        help="comma-separated coupling ratios (default 0..2 in steps of 0.025)",
    )
    _add_output_args(p)
    p.set_defaults(
        handler=lambda cfg, args: cmd_sweep(
            cfg, args.couplings if args.couplings else DEFAULT_SWEEP_GRID
        )
    )

    p = sub.add_parser("sample", help="export one seeded stochastic realization")
    _add_physics_args(p)
    _add_state_args(p, oscillator=True)
    _add_grid_args(p)
    p.add_argument("--seed", type=int, default=12345, help="RNG seed (default 12345)")
    _add_output_args(p)
    p.set_defaults(handler=lambda cfg, args: cmd_sample(cfg))

    p = sub.add_parser("figures", help="write the standard figure data files")
    _add_physics_args(p, coupling=False)
    _add_state_args(p)
    _add_grid_args(p)
    p.add_argument("--seed", type=int, default=12345, help="RNG seed for fig2 (default 12345)")
    p.add_argument(
        "--couplings", type=_parse_couplings, default=None, help="fig1 sweep couplings"
    )
    p.add_argument("--out-dir", default="figures", help="output directory (default ./figures)")
    p.set_defaults(handler=lambda cfg, args: cmd_figures(cfg, args.out_dir, args.couplings))

    return parser


_PLAIN_CONFIG_FIELDS = (
    "omega", "coupling", "t_max", "steps", "cutoff",
    "tolerance", "seed", "format", "output", "out_dir",
)


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {name: getattr(args, name) for name in _PLAIN_CONFIG_FIELDS if hasattr(args, name)}
    if hasattr(args, "state"):
        kwargs["state"] = BellState(args.state)
    if hasattr(args, "oscillator"):
        kwargs["oscillator"] = OscillatorIndex(args.oscillator)
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return args.handler(config, args)
    except (ValueError, fock.ConvergenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
