import pytest

from ghzw_squeezing.cli import main
from ghzw_squeezing.sweep import SweepSpec, load_records, run_sweep


@pytest.fixture()
def in_tmp_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestPoint:
    def test_ghz_point(self, capsys):
        rc = main(
            ["point", "--channel", "depolarizing", "--alpha", "1", "--theta", "0",
             "--phi", "0", "--gammat", "0"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "epsilon        = 1\n" in out
        assert "v_min          = 0.75" in out

    def test_w_point(self, capsys):
        rc = main(
            ["point", "--channel", "amplitude", "--alpha", "0", "--theta", "0",
             "--phi", "0", "--gammat", "0"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "epsilon        = 2.33333333333" in out

    def test_mean_mode_uses_state_direction(self, capsys):
        rc = main(
            ["point", "--channel", "phase", "--alpha", "0", "--theta", "90",
             "--phi", "0", "--gammat", "0", "--direction-mode", "mean"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        # W points along +z, so the mean direction overrides the given theta=90
        assert "direction      = (theta=0 deg, phi=0 deg)" in out

    def test_alpha_out_of_range_is_usage_error(self, capsys):
        rc = main(
            ["point", "--channel", "amplitude", "--alpha", "1.5", "--theta", "0",
             "--phi", "0", "--gammat", "0"]
        )
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_channel_is_usage_error(self, capsys):
        rc = main(
            ["point", "--channel", "bitflip", "--alpha", "0.5", "--theta", "0",
             "--phi", "0", "--gammat", "0"]
        )
        assert rc == 2


class TestSweep:
    def test_custom_grid_counts_and_roundtrip(self, in_tmp_path, capsys):
        rc = main(
            ["sweep", "--channel", "depolarizing", "--alpha", "0,0.5,1",
             "--theta", "0,90", "--phi", "0", "--gammat", "0:1:0.5",
             "--format", "json", "--out", "out.json"]
        )
        assert rc == 0
        assert "wrote 18 records" in capsys.readouterr().out
        records = load_records(in_tmp_path / "out.json")
        spec = SweepSpec(
            channel_kind="depolarizing",
            alpha_grid=(0.0, 0.5, 1.0),
            theta_grid_deg=(0.0, 90.0),
            phi_grid_deg=(0.0,),
            gamma_t_grid=(0.0, 0.5, 1.0),
        )
        assert records == run_sweep(spec)

    def test_csv_deterministic_across_runs(self, in_tmp_path):
        args = ["sweep", "--channel", "phase", "--alpha", "0,1", "--theta", "0",
                "--phi", "0,90", "--gammat", "0:2:1"]
        assert main(args + ["--out", "a.csv"]) == 0
        assert main(args + ["--out", "b.csv"]) == 0
        assert (in_tmp_path / "a.csv").read_bytes() == (in_tmp_path / "b.csv").read_bytes()

    def test_jobs_flag_matches_serial(self, in_tmp_path):
        args = ["sweep", "--channel", "amplitude", "--alpha", "0,0.5,1", "--theta",
                "0,30", "--phi", "0,90", "--gammat", "0:1:0.25"]
        assert main(args + ["--out", "serial.csv"]) == 0
        assert main(args + ["--jobs", "4", "--out", "parallel.csv"]) == 0
        assert (in_tmp_path / "serial.csv").read_bytes() == (in_tmp_path / "parallel.csv").read_bytes()

    def test_empty_grid_is_usage_error_without_output(self, in_tmp_path, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["sweep", "--channel", "phase", "--gammat", "0:0:1", "--out", "x.csv"])
        assert excinfo.value.code == 2
        assert "0:0:1" in capsys.readouterr().err
        assert not (in_tmp_path / "x.csv").exists()

    def test_gamma_grid_must_start_at_zero(self, in_tmp_path, capsys):
        rc = main(["sweep", "--channel", "phase", "--gammat", "1,2", "--out", "x.csv"])
        assert rc == 2
        assert not (in_tmp_path / "x.csv").exists()

    def test_default_grid_row_count(self, in_tmp_path):
        rc = main(["sweep", "--channel", "depolarizing", "--out", "full.csv"])
        assert rc == 0
        lines = (in_tmp_path / "full.csv").read_text().splitlines()
        assert len(lines) == 4 * 7 * 11 * 101 + 1


class TestTable:
    def test_small_grid_report(self, in_tmp_path, capsys):
        rc = main(
            ["table", "--channel", "amplitude", "--alpha", "0,0.8,1",
             "--gammat", "0:1:0.5", "--out", "rep.txt"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "min epsilon" in out
        text = (in_tmp_path / "rep.txt").read_text()
        assert "reference no-squeezing directions" in text
        assert text.count("-> MATCH") + text.count("-> MISMATCH") >= 10

    def test_depolarizing_report_sections(self, in_tmp_path):
        rc = main(
            ["table", "--channel", "depolarizing", "--alpha", "0,0.8",
             "--theta", "0,30", "--phi", "0", "--gammat", "0:1:0.5", "--out", "dep.txt"]
        )
        assert rc == 0
        text = (in_tmp_path / "dep.txt").read_text()
        assert "squeezing at theta = 0 expected for every alpha" in text
        assert "claim verdict:" in text
        # damping-channel sections still present, marked not run
        assert "NOT-RUN" in text


class TestCheck:
    def test_passes_clean(self, capsys):
        assert main(["check"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 5

    def test_injected_sign_error_fails_completeness(self, capsys):
        assert main(["check", "--inject-sign-error"]) == 1
        out = capsys.readouterr().out
        assert "kraus-completeness" in out
        assert "FAILED: kraus-completeness" in out

    def test_verbose_prints_deviations(self, capsys):
        assert main(["check", "--verbose"]) == 0
        assert "deviation" in capsys.readouterr().out
