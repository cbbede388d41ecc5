"""Integration tests for the command-line interface."""

import json

import pytest
from typer.testing import CliRunner

from coco_hopf.cli import app

pytestmark = pytest.mark.integration

runner = CliRunner()


def invoke(*args: str, env=None):
    result = runner.invoke(app, list(args), env=env)
    payload = json.loads(result.stdout) if result.stdout.strip().startswith(("{", "[")) else None
    return result, payload


class TestBuiltinCommands:
    """Test commands against the builtin groups and extensions."""

    def test_schur(self):
        result, payload = invoke("schur", "V4")
        assert result.exit_code == 0
        assert payload == {"invariant_factors": [2]}

    def test_commutator(self):
        result, payload = invoke("commutator", "QS3", "QS3")
        assert result.exit_code == 0
        assert payload["dim"] == 3
        assert payload["grouplike_basis"] == ["e", "(123)", "(132)"]

    def test_center_reports_flags(self):
        result, payload = invoke("center", "QS3")
        assert result.exit_code == 0
        assert payload["dim"] == 3
        assert payload["grouplike_basis"] is None
        assert payload["flags"]["comult_closed"] == "no"

    def test_abelianize(self):
        result, payload = invoke("abelianize", "QS3")
        assert result.exit_code == 0
        assert payload["name"] == "H1(QS3)"
        assert payload["dim"] == 2

    def test_quotient_by_derived_subalgebra(self):
        result, payload = invoke("quotient", "QS3", "D(QS3)")
        assert result.exit_code == 0
        assert payload["dim"] == 2

    def test_h2_group_backend(self):
        result, payload = invoke("h2", "V4")
        assert result.exit_code == 0
        assert payload == {"backend": "group", "dim": 2, "invariant_factors": [2]}

    def test_h2_direct_backend(self):
        result, payload = invoke("--backend", "direct", "h2", "Q8->V4")
        assert result.exit_code == 0
        assert payload["dim"] == 2
        assert payload["invariant_factors"] == [2]

    def test_h2_backend_after_the_command(self):
        result, payload = invoke("h2", "Q8->V4", "--backend", "direct")
        assert result.exit_code == 0
        assert payload == {"backend": "direct", "dim": 2, "invariant_factors": [2]}

    def test_h2_command_backend_overrides_global(self):
        result, payload = invoke("--backend", "direct", "h2", "V4", "--backend", "group")
        assert result.exit_code == 0
        assert payload["backend"] == "group"
        assert payload["dim"] == 2

    def test_kernel(self):
        result, payload = invoke("kernel", "Q8->V4")
        assert result.exit_code == 0
        assert payload["grouplike_basis"] == ["1", "-1"]

    def test_eqpair(self):
        result, payload = invoke("eqpair", "C4->C2")
        assert result.exit_code == 0
        assert payload["dim"] == 8
        assert payload["projections_split_diagonal"] is True

    def test_fiveterm(self):
        result, payload = invoke("fiveterm", "Q8->V4")
        assert result.exit_code == 0
        assert payload["is_exact"]
        assert [node["dim"] for node in payload["nodes"]] == [1, 2, 2, 4, 4, 1]

    def test_fiveterm_direct_backend(self, temp_dir):
        path = temp_dir / "presented.json"
        path.write_text(json.dumps({"morphisms": {"idQ8": {"dom": "Q8", "cod": "Q8", "group_hom": {"i": "i", "j": "j"}}}}))
        result, payload = invoke("-w", str(path), "fiveterm", "Q8->V4", "--backend", "direct", "--presentation", "idQ8")
        assert result.exit_code == 0
        assert payload["is_exact"]
        assert [node["dim"] for node in payload["nodes"]] == [1, 2, 2, 4, 4, 1]

    def test_extension_report(self):
        result, payload = invoke("extension-report", "Q8->V4")
        assert result.exit_code == 0
        assert payload["in_E"] and payload["is_normal"]
        assert payload["kernel_dim"] == 2

    def test_pi1_by_elements(self):
        result, payload = invoke("pi1", "Q8->V4", "--method", "elements")
        assert result.exit_code == 0
        assert payload["dim"] == 2
        assert payload["grouplike_group"] == [2]

    def test_cleft_analyze(self):
        result, payload = invoke("cleft-analyze", "Q8->V4")
        assert result.exit_code == 0
        assert payload["kernel_dim"] == 2
        assert payload["action_trivial"] is True
        assert payload["cocycle_trivial"] is False
        assert payload["section_multiplicative"] is False
        assert payload["canonical_map"]["well_defined"]
        assert payload["canonical_map"]["balanced_dim"] == payload["canonical_map"]["target_dim"]

    def test_zoo(self):
        result = runner.invoke(app, ["zoo"])
        assert result.exit_code == 0
        assert "Builtin groups" in result.stdout
        assert "Q8->V4" in result.stdout

    def test_single_line_output(self):
        result, payload = invoke("--json-indent", "0", "schur", "D4")
        assert result.exit_code == 0
        assert result.stdout.strip().count("\n") == 0
        assert payload == {"invariant_factors": [2]}


class TestExitCodes:
    """Test the mapping of outcomes to exit codes."""

    def test_check_passes(self):
        result, payload = invoke("check", "k")
        assert result.exit_code == 0
        assert payload["passed"]

    def test_unknown_reference_is_input_error(self):
        result, payload = invoke("check", "nope")
        assert result.exit_code == 2
        assert payload["error"] == "UnknownReference"
        assert payload["reference"] == "nope"

    def test_failed_check_exits_one(self):
        result, payload = invoke("pi1", "S3->C2")
        assert result.exit_code == 1
        assert payload["error"] == "NotNormal"

    def test_bad_antipode_fails_axioms(self, temp_dir):
        path = temp_dir / "bad.json"
        path.write_text(
            json.dumps(
                {
                    "algebras": {
                        "B": {
                            "dim": 2,
                            "labels": ["e", "g"],
                            "mult": [["e", "e", "e", 1], ["e", "g", "g", 1], ["g", "e", "g", 1], ["g", "g", "e", 1]],
                            "unit": [1, 0],
                            "comult": [["e", "e", "e", 1], ["g", "g", "g", 1]],
                            "counit": [1, 1],
                            "antipode": [["e", "e", 1], ["g", "g", -1]],
                        }
                    }
                }
            )
        )
        result, payload = invoke("-w", str(path), "check", "B")
        assert result.exit_code == 1
        assert payload["passed"] is False
        assert payload["failures"] == ["antipode"]

    def test_selftest_subset(self):
        result, payload = invoke("selftest", "--only", "schur_oracle")
        assert result.exit_code == 0
        assert list(payload) == ["schur_oracle"]

    def test_large_permutation_group_is_input_error(self, temp_dir):
        path = temp_dir / "big.json"
        path.write_text(json.dumps({"groups": {"S7": {"permutations": [[1, 2, 3, 4, 5, 6, 0], [1, 0, 2, 3, 4, 5, 6]]}}}))
        result, payload = invoke("-w", str(path), "check", "QS7")
        assert result.exit_code == 2
        assert payload["error"] == "OrderBound"

    def test_direct_fiveterm_without_presentation(self):
        result, payload = invoke("fiveterm", "Q8->V4", "--backend", "direct")
        assert result.exit_code == 2
        assert payload["error"] == "MalformedStructure"

    def test_selftest_unknown_check(self):
        result, payload = invoke("selftest", "--only", "bogus")
        assert result.exit_code == 2
        assert payload["error"] == "MalformedStructure"
