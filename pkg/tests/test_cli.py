"""Command-line interface: exit codes, JSON shape, determinism."""

import json

import pytest

from catconv.cli import (
    EXIT_MISMATCH,
    EXIT_NUMERIC,
    EXIT_PASS,
    EXIT_USAGE,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestVerifyCommand:
    def test_full_grid_json(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "thm-a",
            "--n", "0..40", "--lambda", "0..10",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["command"] == "verify"
        assert payload["cases_run"] == 451
        assert payload["skipped"] == 0
        assert payload["failures"] == []
        assert payload["flagged"] == []
        assert payload["reports"][0]["name"] == "thm-a"
        assert payload["config_echo"]["identity"] == "thm-a"
        assert payload["config_echo"]["n"] == "0..40"

    def test_single_n_value_is_accepted(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "recurrence", "--n", "17",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 1

    def test_rational_parameter_grids(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "prop-a",
            "--n", "0..10", "--a", "1/2,1", "--c", "5/2",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 22

    def test_flagged_discrepancy_is_pass_by_default(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "cor-2",
            "--n", "0..10", "--lambda", "0..3",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["failures"] == []
        assert payload["flagged"]
        record = payload["flagged"][0]
        assert "lhs" in record and "rhs" in record and "note" in record

    def test_strict_printed_turns_flags_into_mismatch(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "cor-2",
            "--n", "0..10", "--lambda", "0..3",
            "--strict-printed", "--format", "json",
        )
        assert code == EXIT_MISMATCH
        assert payload["failures"] == []

    def test_strict_printed_text_verdict(self, capsys):
        code, out = run_cli(
            capsys,
            "verify", "--identity", "cor-2",
            "--n", "0..4", "--lambda", "0..1",
            "--strict-printed",
        )
        assert code == EXIT_MISMATCH
        assert "FAIL (flagged, strict)" in out

    def test_unknown_identity_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "--identity", "thm-z", "--n", "0..4"])
        assert excinfo.value.code == EXIT_USAGE

    def test_bad_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "--identity", "thm-a", "--n", "4..x"])
        assert excinfo.value.code == EXIT_USAGE

    def test_missing_required_lambda_range(self, capsys):
        # thm-a cannot sweep without a lam range
        code, out = run_cli(
            capsys, "verify", "--identity", "thm-a", "--n", "0..4"
        )
        assert code == EXIT_USAGE


class TestDeterminism:
    ARGS = (
        "verify", "--identity", "thm-c",
        "--n", "0..12", "--lambda", "0..4",
        "--format", "json", "--no-timing",
    )

    def test_identical_output_across_runs(self, capsys):
        _, first = run_cli(capsys, *self.ARGS)
        _, second = run_cli(capsys, *self.ARGS)
        assert first == second

    def test_no_timing_strips_elapsed_keys(self, capsys):
        _, payload = run_json(capsys, *self.ARGS)
        assert "elapsed_ms" not in payload
        assert all("elapsed_ms" not in r for r in payload["reports"])

    def test_timing_present_by_default(self, capsys):
        code, payload = run_json(
            capsys,
            "verify", "--identity", "recurrence", "--n", "0..5",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert "elapsed_ms" in payload


class TestOtherCommands:
    def test_coeffs_single_point(self, capsys):
        code, payload = run_json(
            capsys,
            "coeffs", "--formula", "bailey-dixon",
            "--a", "1", "--c", "2", "--order", "16",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 1

    def test_coeffs_grid_sweep(self, capsys):
        code, payload = run_json(
            capsys,
            "coeffs", "--formula", "clausen", "--order", "12",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] > 30

    def test_coeffs_lemma_needs_lambda(self, capsys):
        code, payload = run_json(
            capsys,
            "coeffs", "--formula", "lemma-linear",
            "--a", "1/2", "--c", "2",
            "--format", "json",
        )
        assert code == EXIT_USAGE
        assert payload["error"]["type"] == "DegenerateLambda"

    def test_coeffs_requires_both_or_neither(self, capsys):
        code, payload = run_json(
            capsys,
            "coeffs", "--formula", "clausen", "--a", "1/2",
            "--format", "json",
        )
        assert code == EXIT_USAGE
        assert payload["error"]["type"] == "ValueError"

    def test_fourf3_reports_both_checks(self, capsys):
        code, payload = run_json(
            capsys,
            "fourf3", "--n", "0..6", "--lambda", "1..2",
            "--c", "1/3", "--e", "1/5",
            "--format", "json",
        )
        assert code == EXIT_PASS
        names = [r["name"] for r in payload["reports"]]
        assert names == ["terminating-4f3", "contiguous-relation"]
        assert payload["cases_run"] == 28

    def test_gamma_selftest(self, capsys):
        code, payload = run_json(
            capsys, "gamma-selftest", "--prec", "30", "--format", "json"
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 9

    def test_numeric_single_point(self, capsys):
        code, payload = run_json(
            capsys,
            "numeric", "--family", "dixon",
            "--a", "1/2", "--c", "1/4", "--e", "1/4",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 1

    def test_numeric_nonconvergent_exit_code(self, capsys):
        code, payload = run_json(
            capsys,
            "numeric", "--family", "dixon",
            "--a", "1", "--c", "3/2", "--e", "3/2",
            "--format", "json",
        )
        assert code == EXIT_NUMERIC
        assert payload["error"]["type"] == "NonConvergent"
        assert set(payload["error"]) == {"type", "message"}

    def test_numeric_pole_exit_code(self, capsys):
        code, payload = run_json(
            capsys,
            "numeric", "--family", "dixon",
            "--a", "1", "--c", "2", "--e", "2",
            "--format", "json",
        )
        assert code == EXIT_NUMERIC
        assert payload["error"]["type"] == "PoleError"

    def test_numeric_incomplete_point(self, capsys):
        code, payload = run_json(
            capsys,
            "numeric", "--family", "dixon", "--a", "1/2",
            "--format", "json",
        )
        assert code == EXIT_USAGE

    def test_integral_sweep(self, capsys):
        code, payload = run_json(
            capsys,
            "integral", "--which", "thm-a",
            "--n", "0..2", "--lambda", "0..1", "--prec", "30",
            "--format", "json",
        )
        assert code == EXIT_PASS
        assert payload["cases_run"] == 6

    def test_out_writes_same_rendering(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run_cli(
            capsys,
            "verify", "--identity", "touchard", "--n", "0..8",
            "--format", "json", "--no-timing", "--out", str(target),
        )
        assert code == EXIT_PASS
        assert target.read_text() == out

    def test_text_format_report_line(self, capsys):
        code, out = run_cli(
            capsys,
            "verify", "--identity", "mikic-1", "--n", "0..20",
            "--no-timing",
        )
        assert code == EXIT_PASS
        assert "command: verify" in out
        assert "mikic-1: cases=21 skipped=0 failures=0 flagged=0 PASS" in out
        assert out.rstrip().endswith("overall: PASS")
