"""
Integration tests per la CLI
"""

import json
import sys

import pandas as pd
import pytest
from loguru import logger

from src.risonanza_accelerata.api.cli import cli

FIGURE3_POINT = ["--sep", "0.075", "--z", "0.02", "--omega0", "4.17"]


@pytest.fixture(autouse=True)
def restore_logger():
    """La CLI sostituisce il sink di loguru; lo ripristina dopo ogni test"""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


@pytest.mark.integration
class TestEnergyCommand:
    """Test per il comando energy"""

    def test_scalar_json(self, cli_runner):
        result = cli_runner.invoke(cli, ["energy", *FIGURE3_POINT, "-f", "json"])
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data["field"] == "scalar"
        assert data["zone"] == "near"
        assert data["energy_ev"]["total"] == pytest.approx(-9.89e-2, rel=1e-3)
        assert data["energy_ev"]["total"] == pytest.approx(
            data["energy_ev"]["free"] + data["energy_ev"]["boundary"], rel=1e-8
        )

    def test_scalar_si_units(self, cli_runner):
        result = cli_runner.invoke(
            cli, ["energy", *FIGURE3_POINT, "--units", "si", "-f", "json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["energy_j"]["total"] == pytest.approx(-9.89e-2 * 1.602176634e-19, rel=1e-3)

    def test_scalar_table(self, cli_runner):
        result = cli_runner.invoke(cli, ["energy", *FIGURE3_POINT, "--geometry", "par"])
        assert result.exit_code == 0
        assert "boundary" in result.stdout
        assert "-0.0328" in result.stdout

    def test_antisymmetric_state(self, cli_runner):
        sym = cli_runner.invoke(cli, ["energy", *FIGURE3_POINT, "--a", "1", "-f", "json"])
        anti = cli_runner.invoke(
            cli, ["energy", *FIGURE3_POINT, "--a", "1", "--state", "anti", "-f", "json"]
        )
        assert json.loads(anti.stdout)["energy_ev"]["total"] == -json.loads(sym.stdout)[
            "energy_ev"
        ]["total"]

    def test_em_preset(self, cli_runner):
        result = cli_runner.invoke(
            cli,
            [
                "energy",
                "--field",
                "em",
                "--preset",
                "cross-xz",
                "--sep",
                "0.075",
                "--z",
                "0.0507",
                "--omega0",
                "4.17",
                "--a",
                "2.2e-6",
                "-f",
                "json",
            ],
        )
        assert result.exit_code == 0, result.output
        total = json.loads(result.stdout)["energy_ev"]["total"]
        assert abs(total) == pytest.approx(2.2356e-5, rel=1e-3)

    def test_em_explicit_dipoles(self, cli_runner):
        result = cli_runner.invoke(
            cli,
            [
                "energy",
                "--field",
                "em",
                "--geometry",
                "par",
                "--dipole-a",
                "1,0,0",
                "--dipole-b",
                "0,1,0",
                *FIGURE3_POINT,
                "--a",
                "0.5",
            ],
        )
        assert result.exit_code == 0, result.output

    @pytest.mark.parametrize(
        "args",
        [
            ["--sep", "0.075", "--z", "0.02"],
            [*FIGURE3_POINT, "--field", "em"],
            [*FIGURE3_POINT, "--preset", "cross-xz"],
            [*FIGURE3_POINT, "--field", "em", "--preset", "cross-xz", "--lambda-sq", "2"],
            [*FIGURE3_POINT, "--field", "em", "--preset", "cross-xz", "--dipole-a", "1,0,0"],
            [*FIGURE3_POINT, "--field", "em", "--dipole-a", "1,0,0"],
            [*FIGURE3_POINT, "--field", "em", "--dipole-a", "1,0", "--dipole-b", "0,0,1"],
            [*FIGURE3_POINT, "--field", "em", "--dipole-a", "x,0,0", "--dipole-b", "0,0,1"],
            ["--sep", "-1", "--z", "0.02", "--omega0", "4.17"],
            ["--sep", "1", "--z", "0", "--omega0", "1", "--field", "em", "--geometry", "par",
             "--preset", "cross-xy"],
        ],
    )
    def test_usage_errors(self, cli_runner, args):
        result = cli_runner.invoke(cli, ["energy", *args])
        assert result.exit_code == 2
        assert "❌" in result.stderr
        assert result.stdout == ""


@pytest.mark.integration
class TestSweepCommand:
    """Test per il comando sweep"""

    def test_log_sweep_on_acceleration(self, cli_runner, tmp_path):
        out = tmp_path / "sweep.csv"
        result = cli_runner.invoke(
            cli,
            [
                "sweep",
                *FIGURE3_POINT,
                "--param",
                "a",
                "--from",
                "1e-3",
                "--to",
                "10",
                "--points",
                "5",
                "--scale",
                "log",
                "-o",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        table = pd.read_csv(out)
        assert list(table.columns) == ["param", "free", "boundary", "total", "static_total"]
        assert len(table) == 5
        assert table["param"].iloc[-1] == pytest.approx(10.0)
        assert (table["static_total"] == table["static_total"].iloc[0]).all()

    def test_sweep_fills_swept_option(self, cli_runner, tmp_path):
        """Il parametro variato non va passato come opzione fisica"""
        out = tmp_path / "omega.csv"
        result = cli_runner.invoke(
            cli,
            ["sweep", "--sep", "1", "--z", "0.5", "--param", "omega0", "--from", "0.1",
             "--to", "2", "--points", "3", "-o", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(out)) == 3

    def test_invalid_range(self, cli_runner, tmp_path):
        result = cli_runner.invoke(
            cli,
            ["sweep", *FIGURE3_POINT, "--param", "z", "--from", "1", "--to", "0.5",
             "-o", str(tmp_path / "x.csv")],
        )
        assert result.exit_code == 2

    def test_unwritable_output(self, cli_runner, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")
        result = cli_runner.invoke(
            cli,
            ["sweep", *FIGURE3_POINT, "--param", "z", "--from", "0.01", "--to", "0.1",
             "--points", "2", "-o", str(blocker / "out.csv")],
        )
        assert result.exit_code == 3
        assert "❌" in result.stderr


@pytest.mark.integration
class TestFigure3Command:
    """Test per la riproduzione della figura"""

    def test_writes_csv_and_script(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, ["figure3", "--output-dir", str(tmp_path), "--points", "11"])
        assert result.exit_code == 0, result.output
        table = pd.read_csv(tmp_path / "figure3.csv")
        assert len(table) == 11
        script = (tmp_path / "figure3_plot.py").read_text(encoding="utf-8")
        assert 'pd.read_csv("figure3.csv")' in script
        assert "figure3.png" in script

    def test_overrides(self, cli_runner, tmp_path):
        result = cli_runner.invoke(
            cli,
            ["figure3", "--output-dir", str(tmp_path), "--points", "3", "--a-from", "1",
             "--a-to", "100"],
        )
        assert result.exit_code == 0
        table = pd.read_csv(tmp_path / "figure3.csv")
        assert table["a"].tolist() == pytest.approx([1.0, 10.0, 100.0])


@pytest.mark.integration
class TestValidateCommand:
    """Test per il comando validate"""

    def test_jsonl_records(self, cli_runner):
        result = cli_runner.invoke(cli, ["validate", "--filter", "series"])
        assert result.exit_code == 0, result.stderr
        records = [json.loads(line) for line in result.stdout.splitlines()]
        assert records
        assert all(r["case_id"].startswith("series/") for r in records)
        assert all(r["pass"] for r in records)
        assert set(records[0]) == {"case_id", "model", "oracle", "rel_error", "tolerance", "pass"}

    def test_informational_estimate_does_not_fail(self, cli_runner):
        result = cli_runner.invoke(cli, ["validate", "--filter", "estimate"])
        assert result.exit_code == 0
        record = json.loads(result.stdout.strip())
        assert record["case_id"] == "estimate/cross-xz/informational"

    def test_table_format(self, cli_runner, fast_config_file):
        result = cli_runner.invoke(
            cli,
            ["--config", str(fast_config_file), "validate", "--filter", "properties",
             "--filter", "asymptotic", "-f", "table"],
        )
        assert result.exit_code == 0, result.stderr
        assert "Casi:" in result.stdout
        assert "falliti: 0" in result.stdout

    def test_mutated_tensor_fails(self, cli_runner, monkeypatch):
        """Una perturbazione di 10⁻³ su una componente viene rilevata"""
        from src.risonanza_accelerata.physics import em_model

        original = em_model.fh_perp_free

        def perturbed(a, L, omega):
            tensor = original(a, L, omega)
            f = dict(tensor.f)
            f["xx"] *= 1.0 + 1e-3
            return tensor.model_copy(update={"f": f})

        monkeypatch.setattr(em_model, "fh_perp_free", perturbed)
        result = cli_runner.invoke(cli, ["validate", "--filter", "em"])
        assert result.exit_code == 1
        failed = [
            json.loads(line)["case_id"]
            for line in result.stdout.splitlines()
            if not json.loads(line)["pass"]
        ]
        assert any(case.startswith("em/static/perp_free/") for case in failed)
        assert any(case.startswith("em/pinned/perp_free/") for case in failed)

    def test_group_error_record_is_strict_json(self, cli_runner, monkeypatch):
        from src.risonanza_accelerata.validation.suite import ValidationSuite

        def broken(self):
            raise RuntimeError("guasto")

        def reject(constant):
            raise ValueError(f"costante non JSON: {constant}")

        monkeypatch.setattr(ValidationSuite, "series_cases", broken)
        result = cli_runner.invoke(cli, ["validate", "--filter", "series"])
        assert result.exit_code == 1
        record = json.loads(result.stdout.strip(), parse_constant=reject)
        assert record["case_id"] == "series/error"
        assert record["model"] is None
        assert record["rel_error"] is None
        assert record["pass"] is False


@pytest.mark.integration
class TestConvertCommand:
    """Test per le conversioni di unità"""

    def test_length_json(self, cli_runner):
        result = cli_runner.invoke(cli, ["convert", "length-si", "1e-8", "-f", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["output"] == pytest.approx(5.0677e-2, rel=1e-4)
        assert data["output_unit"] == "eV⁻¹"

    def test_unruh_si(self, cli_runner):
        result = cli_runner.invoke(cli, ["convert", "unruh-si", "1e20"])
        assert result.exit_code == 0
        assert "0.4055" in result.stdout
        assert "K" in result.stdout

    def test_negative_rejected(self, cli_runner):
        result = cli_runner.invoke(cli, ["convert", "acceleration-si", "--", "-1"])
        assert result.exit_code == 2


@pytest.mark.integration
class TestConfigFile:
    """Test per il file di configurazione globale"""

    def test_command_defaults(self, cli_runner, tmp_path):
        path = tmp_path / "rdd.conf"
        path.write_text(
            "energy.sep = 0.075\nenergy.z = 0.02\nenergy.omega0 = 4.17\nenergy.output_format = json\n",
            encoding="utf-8",
        )
        result = cli_runner.invoke(cli, ["--config", str(path), "energy"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["energy_ev"]["total"] == pytest.approx(-9.89e-2, rel=1e-3)

    def test_missing_file(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, ["--config", str(tmp_path / "nope.conf"), "convert", "unruh", "1"])
        assert result.exit_code == 3
        assert "Errore di I/O" in result.stderr

    def test_unreadable_path(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, ["--config", str(tmp_path), "convert", "unruh", "1"])
        assert result.exit_code == 3
        assert "Errore di I/O" in result.stderr

    def test_unknown_setting(self, cli_runner, tmp_path):
        path = tmp_path / "rdd.conf"
        path.write_text("colore = rosso\n", encoding="utf-8")
        result = cli_runner.invoke(cli, ["--config", str(path), "convert", "unruh", "1"])
        assert result.exit_code == 2
