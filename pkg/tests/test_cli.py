import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, EXIT_VERIFY
from run import cli

FIXTURES = Path(__file__).parent / "fixtures"

EXACT_PARA_TARGET = '{"theta": ["-24", "7", "1", "2", "3"]}'


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_star_table(runner):
    result = invoke(runner, "star-table")
    assert result.exit_code == EXIT_OK
    assert "⋆Ψ¹=−Ψ¹∧Ψ²∧Ψ⁴" in result.output
    assert "⋆Ψ¹∧Ψ³=−Ψ²∧Ψ⁴" in result.output


def test_star_table_json(runner):
    result = invoke(runner, "--format", "json", "star-table")
    assert len(json.loads(result.output)) == 14


class TestVerify:
    def test_family_fixture(self, runner):
        result = invoke(runner, "verify", "--algebra", f"@{FIXTURES / 'family_para.json'}")
        assert result.exit_code == EXIT_OK, result.output

    def test_hermitian_fixture(self, runner):
        result = invoke(runner, "verify", "--model", "hermitian",
                        "--algebra", f"@{FIXTURES / 'family_hermitian.json'}")
        assert result.exit_code == EXIT_OK, result.output

    def test_corrupted_fixture(self, runner):
        result = invoke(runner, "verify", "--algebra", f"@{FIXTURES / 'family_para_corrupted.json'}")
        assert result.exit_code == EXIT_VERIFY

    def test_json_report(self, runner):
        result = invoke(runner, "--format", "json", "verify",
                        "--algebra", f"@{FIXTURES / 'abelian.json'}")
        report = json.loads(result.output)
        assert report["pass"] is True
        assert "trivial Weyl structure" in report["notes"]


class TestRealize:
    def test_para_exact(self, runner):
        result = invoke(runner, "--format", "json", "realize", "--model", "para",
                        "--target", EXACT_PARA_TARGET)
        assert result.exit_code == EXIT_OK, result.output
        data = json.loads(result.output)
        assert data["pass"] and data["exact"]
        assert data["roundtrip"]["ok"]

    def test_irrational_rotation_needs_float_backend(self, runner):
        target = '{"theta": ["1", "0", "0", "0", "0"]}'
        result = invoke(runner, "realize", "--model", "para", "--target", target)
        assert result.exit_code == EXIT_DOMAIN
        assert "irrational" in result.output

        result = invoke(runner, "--backend", "float", "realize", "--model", "para", "--target", target)
        assert result.exit_code == EXIT_OK, result.output

    def test_hermitian_orbit(self, runner):
        result = invoke(runner, "realize", "--model", "hermitian", "--mode", "orbit",
                        "--target", '{"theta": ["0", "2", "0", "3", "0"]}')
        assert result.exit_code == EXIT_OK, result.output
        assert "orbit" in result.output

    def test_hermitian_zero_target(self, runner):
        result = invoke(runner, "--format", "json", "realize", "--model", "hermitian", "--target", "zero")
        assert result.exit_code == EXIT_OK, result.output
        data = json.loads(result.output)
        assert set(data["params"].values()) == {"0"}

    def test_para_coefficient_target(self, runner):
        result = invoke(runner, "--format", "json", "realize", "--model", "para",
                        "--target", '{"coeffs": {"12": "1"}}')
        assert result.exit_code == EXIT_OK, result.output
        data = json.loads(result.output)
        assert data["params"]["eps1"] == "1"
        assert data["params"]["alpha2"] == "1"

    def test_non_real_hermitian_target(self, runner):
        result = invoke(runner, "realize", "--model", "hermitian", "--target", '{"coeffs": {"12": "1"}}')
        assert result.exit_code == EXIT_DOMAIN
        assert "reality violation" in result.output

    def test_omega_component(self, runner):
        result = invoke(runner, "realize", "--model", "para",
                        "--target", '{"theta": ["0", "0", "0", "0", "0"], "omega": "1"}')
        assert result.exit_code == EXIT_DOMAIN

    def test_bad_json(self, runner):
        result = invoke(runner, "realize", "--model", "para", "--target", "{oops")
        assert result.exit_code == EXIT_INPUT

    def test_missing_model(self, runner):
        result = invoke(runner, "realize", "--target", "zero")
        assert result.exit_code == EXIT_INPUT

    def test_unknown_backend(self, runner):
        result = runner.invoke(cli, ["--backend", "quad", "star-table"])
        assert result.exit_code == 2

    def test_out_file(self, runner, tmp_path):
        out = tmp_path / "nested" / "result.json"
        result = invoke(runner, "--out", str(out), "realize", "--model", "para", "--target", "zero")
        assert result.exit_code == EXIT_OK, result.output
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["model"] == "para"
        assert data["report"]["notes"] == ["trivial Weyl structure"]

    def test_debug_prints_traceback(self, runner):
        result = invoke(runner, "--debug", "realize", "--model", "para", "--target", "{oops")
        assert result.exit_code == EXIT_INPUT
        assert "Traceback" in result.output


def test_decompose(runner):
    result = invoke(runner, "--format", "json", "decompose", "--model", "hermitian",
                    "--target", '{"theta": ["0", "2", "0", "3", "0"]}')
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert data["invariants"] == {"x": "8", "y": "18"}
    assert data["theta"] == ["0", "2", "0", "3", "0"]
    assert data["omega"] == "0"


class TestBatch:
    def test_float_batch(self, runner):
        result = invoke(runner, "--backend", "float", "batch", "--model", "para", "--workers", "1",
                        "--targets", f"@{FIXTURES / 'para_targets.json'}")
        assert result.exit_code == EXIT_OK, result.output
        assert "通过 3/3" in result.output

    def test_targets_must_be_a_list(self, runner):
        result = invoke(runner, "batch", "--model", "para", "--targets", '{"coeffs": {}}')
        assert result.exit_code == EXIT_INPUT

    def test_bad_entry(self, runner):
        result = invoke(runner, "batch", "--model", "para", "--workers", "1", "--targets", '["zero", "garbage"]')
        assert result.exit_code == EXIT_INPUT


class TestArchive:
    def test_history_empty(self, runner, results_dir):
        result = invoke(runner, "history", "--results-dir", str(results_dir))
        assert result.exit_code == EXIT_OK
        assert "没有找到已存档的证书" in result.output

    def test_save_then_read(self, runner, results_dir):
        saved = invoke(runner, "realize", "--model", "para", "--target", EXACT_PARA_TARGET,
                       "--save", "--results-dir", str(results_dir))
        assert saved.exit_code == EXIT_OK, saved.output

        listed = invoke(runner, "--format", "json", "history", "--results-dir", str(results_dir))
        entries = json.loads(listed.output)
        assert len(entries) == 1 and entries[0]["model"] == "para"

        by_id = invoke(runner, "read", "--id", entries[0]["id"], "--results-dir", str(results_dir))
        assert by_id.exit_code == EXIT_OK, by_id.output

        by_target = invoke(runner, "--format", "json", "read", "--model", "para", "--target", EXACT_PARA_TARGET,
                           "--results-dir", str(results_dir))
        assert by_target.exit_code == EXIT_OK, by_target.output
        assert json.loads(by_target.output)["model"] == "para"

    def test_read_missing(self, runner, results_dir):
        result = invoke(runner, "read", "--id", "nope", "--results-dir", str(results_dir))
        assert result.exit_code == EXIT_INPUT

    def test_read_needs_key(self, runner, results_dir):
        result = invoke(runner, "read", "--results-dir", str(results_dir))
        assert result.exit_code == EXIT_INPUT


@pytest.mark.parametrize("target, theta, omega", [
    ('{"coeffs": {"12": "1", "34": "1"}}', ["0", "0", "0", "1", "0"], "0"),
    ('{"coeffs": {"13": "-1", "24": "-1"}}', ["0", "0", "0", "0", "0"], "1"),
])
def test_decompose_para(runner, target, theta, omega):
    result = invoke(runner, "--format", "json", "decompose", "--model", "para", "--target", target)
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert data["theta"] == theta
    assert data["omega"] == omega
