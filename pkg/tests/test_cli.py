import json
from pathlib import Path
from shutil import rmtree
from tempfile import mkdtemp
from unittest import TestCase

import numpy as np
from click.testing import CliRunner

from agdmm import CurveModel, make_field, random_matrix, read_matrix_csv, write_matrix_csv
from agdmm._agdmm_cli import _agdmm_cli

HERMITIAN_SCHEME_OPTIONS = [
    "--curve",
    "hermitian:2",
    "--kind",
    "poly",
    "--method",
    "apery",
    "--m",
    "2",
    "--n",
    "2",
]


def _json_lines(output: str) -> list:
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


class CliTestCase(TestCase):
    def setUp(self):
        self.runner = CliRunner(env={"AGDMM_SEED": None})

    def invoke(self, *arguments: str, expected_exit_code: int = 0):
        result = self.runner.invoke(_agdmm_cli, [str(argument) for argument in arguments])
        assert result.exit_code == expected_exit_code, result.output
        return result

    def invoke_json(self, *arguments: str):
        return json.loads(self.invoke(*arguments).output)


class TestSemigroupCommands(CliTestCase):
    def test_info(self):
        info = self.invoke_json("semigroup", "info", "--gens", "3,4")
        assert info["conductor"] == 6
        assert info["gaps"] == [1, 2, 5]
        assert info["genus"] == 3
        assert info["n"] == 3
        assert info["sparse"] is False
        assert info["delta_argmax"] == 3

    def test_apery(self):
        assert self.invoke_json("semigroup", "apery", "--gens", "3,4", "--n", "4")["apery"] == [0, 9, 6, 3]

    def test_apery_of_gap(self):
        result = self.invoke("semigroup", "apery", "--gens", "3,4", "--n", "5", expected_exit_code=2)
        assert "Error:" in result.output

    def test_delta(self):
        delta = self.invoke_json("semigroup", "delta", "--gens", "3,4")
        assert delta["values"] == {"0": 6, "3": 7, "4": 6, "6": 6}
        assert delta["argmax"] == 3
        assert delta["maximum"] == 7

    def test_gcd_not_one(self):
        self.invoke("semigroup", "info", "--gens", "4,6", expected_exit_code=2)

    def test_pretty(self):
        output = self.invoke("semigroup", "info", "--gens", "3,4", "--pretty").output
        assert "conductor: 6" in output.splitlines()
        assert "gaps: 1, 2, 5" in output.splitlines()


class TestConstructCommands(CliTestCase):
    def test_poly_apery(self):
        solution = self.invoke_json("construct", "poly", "--gens", "3,4", "--method", "apery", "--m", "2", "--n", "2")
        assert solution["D_A"] == [0, 4]
        assert solution["D_B"] == [0, 3]
        assert solution["threshold"] == 8
        assert solution["lower_bound"] == 7

    def test_poly_needs_n(self):
        self.invoke("construct", "poly", "--gens", "3,4", "--method", "apery", "--m", "2", expected_exit_code=2)

    def test_matdot_optimal(self):
        solution = self.invoke_json("construct", "matdot", "--gens", "2,3", "--method", "optimal", "--m", "4")
        assert solution["D_A"] == [2, 3, 4, 5]
        assert solution["D_B"] == [2, 3, 4, 5]
        assert solution["d"] == 7
        assert solution["threshold"] == 11

    def test_matdot_rejects_poly_method(self):
        self.invoke("construct", "matdot", "--gens", "2,3", "--method", "apery", "--m", "4", expected_exit_code=2)

    def test_table(self):
        table = self.invoke_json("construct", "table", "--gens", "3,4", "--m", "2", "--n", "2")
        assert table["m_in_semigroup"] is False
        rows = {row["method"]: row for row in table["rows"]}
        assert rows["trivial"] == dict(method="trivial", formula=16, threshold=16)
        assert rows["apery"]["formula"] == 12
        assert rows["apery"]["threshold"] == 8
        assert rows["recursive"]["threshold"] == 11


class TestSearchCommand(CliTestCase):
    def test_poly(self):
        assert self.invoke_json("search", "--kind", "poly", "--gens", "2,3", "--m", "2", "--n", "2")["threshold"] == 6

    def test_matdot(self):
        assert self.invoke_json("search", "--kind", "matdot", "--gens", "2,3", "--m", "4")["threshold"] == 11

    def test_search_space_too_large(self):
        result = self.invoke(
            "search", "--kind", "poly", "--gens", "2,3", "--m", "3", "--n", "3", "--bound", "100", expected_exit_code=3
        )
        assert "Please lower the search bound." in result.output


class TestDmmCommands(CliTestCase):
    @classmethod
    def setUpClass(cls):
        cls.tempdir = Path(mkdtemp())
        cls.spec = CurveModel.hermitian(q0=2).field
        cls.A = random_matrix(cls.spec, rows=4, cols=3, seed=0)
        cls.B = random_matrix(cls.spec, rows=3, cols=4, seed=1)
        cls.a_path = cls.tempdir / "a.csv"
        cls.b_path = cls.tempdir / "b.csv"
        write_matrix_csv(file_path=cls.a_path, matrix=cls.A, spec=cls.spec)
        write_matrix_csv(file_path=cls.b_path, matrix=cls.B, spec=cls.spec)

    @classmethod
    def tearDownClass(cls):
        rmtree(cls.tempdir)

    def dmm_run(self, out_name: str, *extra: str, expected_exit_code: int = 0):
        return self.invoke(
            "dmm",
            "run",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "8",
            "--a",
            self.a_path,
            "--b",
            self.b_path,
            "--out",
            self.tempdir / out_name,
            *extra,
            expected_exit_code=expected_exit_code,
        )

    def test_run_with_drops(self):
        report = json.loads(self.dmm_run("ab_drop.csv", "--drop", "1,4").output)
        assert report["threshold"] == 6
        assert report["responders_used"] == [0, 2, 3, 5, 6, 7]
        assert report["ok"] is True
        spec, product = read_matrix_csv(self.tempdir / "ab_drop.csv")
        assert spec == self.spec
        np.testing.assert_array_equal(product, self.A @ self.B)

    def test_run_shuffled(self):
        report = json.loads(self.dmm_run("ab_shuffle.csv", "--shuffle", "--seed", "3").output)
        assert report["ok"] is True
        arrival = np.random.Generator(np.random.PCG64(3)).permutation(8)
        assert report["responders_used"] == [int(index) for index in arrival[:6]]

    def test_run_too_few_responders(self):
        result = self.dmm_run("ab_few.csv", "--drop", "0,1,2", expected_exit_code=4)
        assert "recovery threshold is 6" in result.output

    def test_run_drop_out_of_range(self):
        self.dmm_run("ab_range.csv", "--drop", "8", expected_exit_code=2)

    def test_run_field_mismatch(self):
        spec = make_field(5)
        wrong_path = self.tempdir / "a_gf5.csv"
        write_matrix_csv(file_path=wrong_path, matrix=random_matrix(spec, rows=4, cols=3, seed=0), spec=spec)
        self.invoke(
            "dmm",
            "run",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "8",
            "--a",
            wrong_path,
            "--b",
            self.b_path,
            "--out",
            self.tempdir / "ab_mismatch.csv",
            expected_exit_code=2,
        )

    def test_run_too_many_workers(self):
        self.invoke(
            "dmm",
            "run",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "9",
            "--a",
            self.a_path,
            "--b",
            self.b_path,
            "--out",
            self.tempdir / "ab_workers.csv",
            expected_exit_code=2,
        )

    def test_reference(self):
        out_path = self.tempdir / "reference.csv"
        summary = self.invoke_json("dmm", "reference", "--a", self.a_path, "--b", self.b_path, "--out", out_path)
        assert (summary["rows"], summary["cols"]) == (4, 4)
        _, product = read_matrix_csv(out_path)
        np.testing.assert_array_equal(product, self.A @ self.B)


class TestSimCommand(CliTestCase):
    sim_options = [
        "sim",
        *HERMITIAN_SCHEME_OPTIONS,
        "--workers",
        "8",
        "--model",
        "shifted-exp:tau=1,lambda=0.5",
        "--trials",
        "5",
    ]

    def test_trial_lines_and_summary(self):
        lines = _json_lines(self.invoke(*self.sim_options, "--seed", "7").output)
        assert len(lines) == 6
        assert [line["trial"] for line in lines[:5]] == [0, 1, 2, 3, 4]
        assert all(line["decode_ok"] for line in lines[:5])
        assert all(len(line["responders_used"]) == 6 for line in lines[:5])
        assert lines[5]["summary"]["trials"] == 5
        assert lines[5]["summary"]["rho"] == 0.75

    def test_deterministic(self):
        first = self.invoke(*self.sim_options, "--seed", "7").output
        second = self.invoke(*self.sim_options, "--seed", "7").output
        assert first == second

    def test_environment_seed_overrides(self):
        expected = _json_lines(self.invoke(*self.sim_options, "--seed", "7").output)
        result = self.runner.invoke(_agdmm_cli, [*self.sim_options, "--seed", "3"], env={"AGDMM_SEED": "7"})
        assert result.exit_code == 0, result.output
        assert _json_lines(result.output) == expected

    def test_fixed_model(self):
        lines = _json_lines(self.invoke("sim", *HERMITIAN_SCHEME_OPTIONS, "--workers", "8", "--trials", "2").output)
        assert lines[0]["finish_time"] == 6.0
        assert lines[0]["responders_used"] == [0, 1, 2, 3, 4, 5]

    def test_bad_model(self):
        self.invoke("sim", *HERMITIAN_SCHEME_OPTIONS, "--workers", "8", "--model", "gamma", expected_exit_code=2)

    def test_pretty(self):
        output = self.invoke("sim", *HERMITIAN_SCHEME_OPTIONS, "--workers", "8", "--trials", "2", "--pretty").output
        lines = output.splitlines()
        assert _json_lines(output) == []
        assert lines.count("trial: 0") == 1
        assert lines.count("trial: 1") == 1
        assert "finish_time: 6.0" in lines
        assert "responders_used: 0, 1, 2, 3, 4, 5" in lines
        assert lines.count("decode_ok: True") == 2
        summary = [line for line in lines if line.startswith("summary: ")]
        assert len(summary) == 1
        assert "trials=2" in summary[0]


class TestReportCommand(CliTestCase):
    def test_asymptotic(self):
        report = self.invoke_json("report", "asymptotic", "--q", "25", "--m", "4", "--series", "N=125,c=20")
        assert report["epsilon"] == "0.250000"
        assert report["limit"] == "0.250000"
        assert report["matdot_limit"] == "0.500000"
        assert report["series"] == [dict(N=125, c=20, excess="0.160000", excess_exact="4/25")]

    def test_asymptotic_matdot(self):
        report = self.invoke_json("report", "asymptotic", "--q", "49", "--m", "4", "--mode", "matdot")
        assert report["limit"] == "0.333333"

    def test_non_square_field(self):
        self.invoke("report", "asymptotic", "--q", "24", "--m", "4", expected_exit_code=2)


class TestAuditCommand(CliTestCase):
    @classmethod
    def setUpClass(cls):
        cls.tempdir = Path(mkdtemp())

    @classmethod
    def tearDownClass(cls):
        rmtree(cls.tempdir)

    def test_audit_reports_spare_workers(self):
        output = self.invoke("audit", *HERMITIAN_SCHEME_OPTIONS, "--workers", "6").output
        assert "agdmm Audit Report Summary" in output
        assert "check_spare_workers" in output

    def test_audit_strict_config(self):
        output = self.invoke(
            "audit",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "6",
            "--config",
            "strict",
            "--threshold",
            "BEST_PRACTICE_VIOLATION",
        ).output
        assert "BEST_PRACTICE_VIOLATION: check_spare_workers" in output

    def test_audit_select(self):
        output = self.invoke(
            "audit", *HERMITIAN_SCHEME_OPTIONS, "--workers", "6", "--select", "check_enough_places"
        ).output
        assert "Found 0 issues over 0 objects:" in output

    def test_audit_saves_json_and_report(self):
        json_file_path = self.tempdir / "audit.json"
        report_file_path = self.tempdir / "audit.txt"
        self.invoke(
            "audit",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "6",
            "--json-file-path",
            json_file_path,
            "--report-file-path",
            report_file_path,
        )
        payload = json.loads(json_file_path.read_text())
        assert set(payload) == {"header", "messages"}
        assert "check_spare_workers" in {message["check_function_name"] for message in payload["messages"]}
        assert "agdmm Audit Report Summary" in report_file_path.read_text()

        self.invoke(
            "audit",
            *HERMITIAN_SCHEME_OPTIONS,
            "--workers",
            "6",
            "--json-file-path",
            json_file_path,
            expected_exit_code=2,
        )
