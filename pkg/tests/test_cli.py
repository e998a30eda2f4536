"""End-to-end CLI behavior: formats, exit codes, and figure data files."""

import json
import math

import numpy as np
import pytest

from bellosc import analytic
from bellosc.cli import main, read_columns
from bellosc.model import BellState, OscillatorIndex, SystemParams
from bellosc.sampler import RealizationConfig, sample_realization

PSI_P = BellState.PSI_PLUS

TRACE_HEADER = "t,dx1,dx2,dp1,dp2,up1,up2,dx1_nc,dp1_nc,up1_nc,up2_nc"
SWEEP_HEADER = (
    "coupling,eta,abs_beat_over_omega,min_up1,max_up1,mean_up1,fraction_below_nc_1,"
    "min_up2,max_up2,mean_up2,fraction_below_nc_2"
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTrace:
    def test_csv_header_and_row_count(self, capsys):
        code, out, _ = run(capsys, "trace", "--coupling", "0.5", "--steps", "37")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == TRACE_HEADER
        assert len(lines) == 1 + 37

    def test_uncoupled_product_columns(self, capsys):
        code, out, _ = run(capsys, "trace", "--coupling", "0", "--steps", "5")
        assert code == 0
        rows = [line.split(",") for line in out.splitlines()[1:]]
        header = TRACE_HEADER.split(",")
        up1 = [float(r[header.index("up1")]) for r in rows]
        up2 = [float(r[header.index("up2")]) for r in rows]
        assert up1 == [3.0] * 5
        assert up2 == [1.0] * 5

    @pytest.mark.parametrize("g", [0.2, 0.8])
    def test_columns_match_closed_forms(self, g, tmp_path, capsys):
        out_file = tmp_path / "trace.csv"
        code, _, _ = run(
            capsys, "trace", "--coupling", str(g), "--steps", "50",
            "--t-max", "20", "--output", str(out_file),
        )
        assert code == 0
        cols = read_columns(out_file)
        params = SystemParams(1.0, g)
        expected = analytic.trace(params, PSI_P, 0.0, 20.0, 50)
        for name in ("dx1", "dx2", "dp1", "dp2", "up1", "up2"):
            rounded = np.array([float(f"{v:.9g}") for v in getattr(expected, name)])
            assert np.array_equal(cols[name], rounded)

    def test_output_agrees_with_oracle_path(self, tmp_path, capsys):
        from bellosc.fock import TwoModeBasis
        from bellosc.oracle import evolve_expectations

        out_file = tmp_path / "trace.csv"
        code, _, _ = run(
            capsys, "trace", "--coupling", "0.8", "--steps", "40",
            "--t-max", "24", "--output", str(out_file),
        )
        assert code == 0
        cols = read_columns(out_file)
        evolved = evolve_expectations(
            SystemParams(1.0, 0.8), PSI_P, TwoModeBasis(12), cols["t"]
        )
        for name in ("dx1", "dx2", "dp1", "dp2"):
            assert np.max(np.abs(cols[name] - getattr(evolved, name))) < 1e-6

    def test_json_structure(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--coupling", "0.3", "--steps", "4", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["metadata"]["command"] == "trace"
        assert payload["metadata"]["coupling"] == 0.3
        assert set(payload["columns"]) == set(TRACE_HEADER.split(","))
        assert len(payload["columns"]["dx1"]) == 4

    def test_bad_steps_is_config_error(self, capsys):
        code, _, err = run(capsys, "trace", "--steps", "1")
        assert code == 2
        assert "error" in err


class TestSweep:
    def test_reference_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--couplings", "0,1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == SWEEP_HEADER
        zero = dict(zip(SWEEP_HEADER.split(","), map(float, lines[1].split(","))))
        one = dict(zip(SWEEP_HEADER.split(","), map(float, lines[2].split(","))))
        assert zero["abs_beat_over_omega"] == 0.0
        assert zero["min_up1"] == zero["max_up1"] == 3.0
        assert zero["fraction_below_nc_1"] == 0.0
        assert one["abs_beat_over_omega"] == pytest.approx(math.sqrt(3.0) - 1.0, abs=1e-8)
        assert one["eta"] == pytest.approx(math.sqrt(3.0), abs=1e-8)

    def test_beat_column_strictly_increasing(self, capsys):
        code, out, _ = run(capsys, "sweep")
        assert code == 0
        rows = [line.split(",") for line in out.splitlines()[1:]]
        beat = [float(r[2]) for r in rows]
        assert len(beat) == 81
        assert all(b2 > b1 for b1, b2 in zip(beat, beat[1:]))

    def test_rejects_negative_coupling(self, capsys):
        code, _, err = run(capsys, "sweep", "--couplings", "0.2,-1")
        assert code == 2
        assert "error" in err

    def test_rejects_empty_list(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "sweep", "--couplings", ",")
        assert exc.value.code == 2

    def test_json_mirrors_csv_columns(self, capsys):
        code, out, _ = run(capsys, "sweep", "--couplings", "0,0.5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["metadata"]["couplings"] == [0.0, 0.5]
        assert set(payload["columns"]) == set(SWEEP_HEADER.split(","))


class TestSample:
    def test_fixed_seed_is_byte_identical(self, capsys):
        args = ("sample", "--coupling", "0.8", "--steps", "64", "--seed", "9")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_envelope_columns_match_closed_form(self, tmp_path, capsys):
        out_file = tmp_path / "sample.csv"
        code, _, _ = run(
            capsys, "sample", "--coupling", "0.8", "--steps", "33", "--t-max", "16",
            "--seed", "5", "--output", str(out_file),
        )
        assert code == 0
        cols = read_columns(out_file)
        envelope = analytic.normalized_x_fluctuation(
            SystemParams(1.0, 0.8), PSI_P, OscillatorIndex.ONE, cols["t"]
        )
        rounded = np.array([float(f"{v:.9g}") for v in envelope])
        assert np.array_equal(cols["envelope_plus"], rounded)
        assert np.array_equal(cols["envelope_minus"], -rounded)

    def test_gaussian_tail_bound(self, tmp_path, capsys):
        out_file = tmp_path / "big.csv"
        code, _, _ = run(
            capsys, "sample", "--coupling", "0.8", "--steps", "20000",
            "--t-max", "200", "--output", str(out_file),
        )
        assert code == 0
        cols = read_columns(out_file)
        violations = np.sum(np.abs(cols["sample"]) > 4.0 * cols["envelope_plus"])
        assert violations / len(cols["sample"]) < 1e-4

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys, "sample", "--coupling", "0.5", "--steps", "6", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["metadata"]["command"] == "sample"
        assert set(payload["columns"]) == {"t", "sample", "envelope_plus", "envelope_minus"}
        assert len(payload["columns"]["sample"]) == 6

    def test_oscillator_selector(self, capsys):
        code, out, _ = run(
            capsys, "sample", "--coupling", "0.8", "--oscillator", "2",
            "--steps", "3", "--t-max", "1",
        )
        assert code == 0
        first = out.splitlines()[1].split(",")
        expected = analytic.normalized_x_fluctuation(
            SystemParams(1.0, 0.8), PSI_P, OscillatorIndex.TWO, 0.0
        )
        assert float(first[2]) == pytest.approx(float(expected), rel=1e-8)


class TestVerify:
    def test_default_config_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        counted = [line for line in out.splitlines() if not line.startswith("INFO")]
        assert not any(line.startswith("FAIL") for line in counted)
        assert "INFO" in out  # adjudication lines are informational, not failures
        assert "X-type variant" in out
        assert "non-canonical" in out

    def test_small_cutoff_is_config_error(self, capsys):
        code, _, err = run(capsys, "verify", "--cutoff", "2")
        assert code == 2
        assert "cutoff" in err

    def test_unreachable_tolerance_fails_with_diff_reported(self, capsys):
        code, out, _ = run(capsys, "verify", "--cutoff", "8", "--tolerance", "1e-30")
        assert code == 1
        failing = [line for line in out.splitlines() if line.startswith("FAIL")]
        assert failing
        assert all("|diff|=" in line for line in failing)


@pytest.fixture(scope="module")
def figure_dir(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("figs")
    code = main(["figures", "--out-dir", str(out_dir), "--steps", "64", "--seed", "3"])
    assert code == 0
    return out_dir


class TestFigures:
    def test_all_files_written(self, figure_dir):
        names = {p.name for p in figure_dir.iterdir()}
        assert names == {f"fig{i}.csv" for i in range(1, 7)} | {"index.json"}

    def test_index_maps_every_figure(self, figure_dir):
        index = json.loads((figure_dir / "index.json").read_text())
        figures = sorted(entry["figure"] for entry in index["files"])
        assert figures == [1, 2, 3, 4, 5, 6]

    def test_fig1_starts_at_zero_and_rises(self, figure_dir):
        cols = read_columns(figure_dir / "fig1.csv")
        assert cols["coupling"][0] == 0.0
        assert cols["abs_beat_over_omega"][0] == 0.0
        assert np.all(np.diff(cols["abs_beat_over_omega"]) > 0)

    def test_fig5_shows_noise_transfer(self, figure_dir):
        cols = read_columns(figure_dir / "fig5.csv")
        strong = cols["up1_g0.8"]
        assert np.max(strong) > 3.0
        assert np.mean(strong) < 3.0

    def test_fig2_round_trips_through_sampler(self, figure_dir):
        cols = read_columns(figure_dir / "fig2.csv")
        index = json.loads((figure_dir / "index.json").read_text())
        t_max, steps = index["t_max"], index["steps"]
        config = RealizationConfig(seed=3, dt=t_max / (steps - 1), t_max=t_max)
        real = sample_realization(
            SystemParams(1.0, 0.8), PSI_P, OscillatorIndex.ONE, config
        )
        rounded = np.array([float(f"{v:.9g}") for v in real.values])
        assert np.array_equal(cols["sample"], rounded)

    def test_trace_figures_round_trip(self, figure_dir):
        index = json.loads((figure_dir / "index.json").read_text())
        t_max, steps = index["t_max"], index["steps"]
        for name, column in (("fig3.csv", "dx1"), ("fig4.csv", "dp1"), ("fig6.csv", "up2")):
            cols = read_columns(figure_dir / name)
            for g in (0.0, 0.2, 0.8):
                expected = getattr(
                    analytic.trace(SystemParams(1.0, g), PSI_P, 0.0, t_max, steps), column
                )
                rounded = np.array([float(f"{v:.9g}") for v in expected])
                assert np.array_equal(cols[f"{column}_g{g:g}"], rounded)


class TestExitCodes:
    def test_unknown_flag_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["trace", "--nonsense"])
        assert exc.value.code == 2

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0

    def test_figures_single_step_is_config_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "figures", "--steps", "1", "--out-dir", str(tmp_path))
        assert code == 2
        assert "steps" in err

    def test_negative_omega_is_config_error(self, capsys):
        code, _, err = run(capsys, "trace", "--omega", "-1")
        assert code == 2
        assert "omega" in err

    def test_missing_subcommand_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
