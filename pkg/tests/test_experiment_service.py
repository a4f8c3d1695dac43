"""Tests for the experiment runner and its report writers."""

import json
import shutil
from unittest.mock import patch

import pandas as pd
import pytest

from structlog.testing import capture_logs

from effbasis.core.errors import GraphError, VariationalBoundError
from effbasis.models.experiment import ExperimentConfig, RunSpec
from effbasis.models.report import ReportRow
from effbasis.services.experiment_service import (
    _check_bound,
    candidate_graphs,
    execute_run,
    load_system,
    report_resources,
    run_experiment,
    run_system,
    write_report,
    write_resources,
)
from tests.helpers import H2_FCI, H2_FIXTURE


def _config(*runs: dict, **extra) -> ExperimentConfig:
    doc = {"fixture": H2_FIXTURE, "runs": list(runs), **extra}
    return ExperimentConfig.model_validate(doc)


@pytest.fixture(scope="module")
def h2_system():
    return load_system(H2_FIXTURE, _config({"method": "FCI"}))


class TestLoadSystem:
    def test_uses_stored_reference(self, h2_system):
        assert h2_system.fci_energy == H2_FCI
        assert h2_system.name == "h2_sto3g_r1.4bohr"
        assert (h2_system.n_spatial, h2_system.n_electrons, h2_system.ms2) == (2, 2, 0)

    def test_recomputes_missing_reference(self, tmp_path):
        copy = tmp_path / "h2_copy.fcidump"
        shutil.copy(H2_FIXTURE, copy)
        with capture_logs() as logs:
            system = load_system(copy, _config({"method": "FCI"}, fixture=copy))
        assert system.fci_energy == pytest.approx(H2_FCI, abs=1e-10)
        assert "reference_energy_missing" in [e["event"] for e in logs]


class TestCandidateGraphs:
    def test_enumerate(self):
        graphs = candidate_graphs(RunSpec(method="GNM"), 4, 4)
        assert len(graphs) == 3

    def test_given_graphs_must_hold_all_electrons(self):
        run = RunSpec(method="GNM", graphs=[[[0, 1]]])
        with pytest.raises(GraphError, match="electrons"):
            candidate_graphs(run, 4, 4)


class TestExecuteRun:
    def test_fci_row(self, h2_system):
        row, detail = execute_run(RunSpec(method="FCI"), h2_system)
        assert row.error == 0.0
        assert row.M == 0
        assert detail.energy == H2_FCI

    def test_gnm_single_pair(self, h2_system):
        row, detail = execute_run(RunSpec(method="GNM", N=1, M=1), h2_system)
        assert -1e-9 <= row.error < 1e-6
        assert row.graphs == "0-1"
        assert (row.cnot_count, row.parameter_count) == (19, 2)
        assert row.converged
        assert set(detail.bindings[0]) == {"0-1:theta(0,1)", "0-1:phi(0,1)"}

    def test_krylov_row(self, h2_system):
        run = RunSpec(method="KRYLOV", N=2, krylov={"mode": "POWER"})
        row, _ = execute_run(run, h2_system)
        assert row.graphs == "POWER"
        assert row.N == 2
        assert abs(row.error) < 1e-6

    def test_too_many_graphs(self, h2_system):
        with pytest.raises(GraphError, match="exceeds"):
            execute_run(RunSpec(method="GNM", N=2, M=0), h2_system)

    def test_variational_bound_enforced(self, h2_system):
        with pytest.raises(VariationalBoundError, match="below FCI"):
            _check_bound(h2_system.fci_energy - 1e-6, h2_system)
        _check_bound(h2_system.fci_energy - 1e-10, h2_system)


class TestRunSystem:
    def test_failing_run_is_isolated(self):
        config = _config({"method": "FCI"}, {"method": "GNM", "N": 3, "label": "too-big"}, {"method": "FCI"})
        outcome = run_system(H2_FIXTURE, config)
        assert len(outcome.rows) == 2
        assert [f.label for f in outcome.failures] == ["too-big"]

    def test_unreadable_fixture(self, tmp_path):
        bad = tmp_path / "bad.fcidump"
        bad.write_text("not an fcidump\n")
        outcome = run_system(bad, _config({"method": "FCI"}, fixture=bad))
        assert outcome.rows == []
        assert outcome.failures[0].label == "*"


class TestRunExperiment:
    def test_rows_in_system_order(self, tmp_path):
        paths = []
        for name in ("b_first.fcidump", "a_second.fcidump"):
            shutil.copy(H2_FIXTURE, tmp_path / name)
            paths.append(tmp_path / name)
        config = ExperimentConfig(scan=paths, runs=[{"method": "FCI"}])
        report = run_experiment(config)
        assert [r.system for r in report.rows] == ["b_first", "a_second"]
        assert report.ok

    def test_parallel_matches_serial(self, tmp_path):
        paths = []
        for name in ("p0.fcidump", "p1.fcidump", "p2.fcidump"):
            shutil.copy(H2_FIXTURE, tmp_path / name)
            paths.append(tmp_path / name)
        config = ExperimentConfig(scan=paths, runs=[{"method": "FCI"}, {"method": "GNM", "N": 1}])
        serial = run_experiment(config, jobs=1)
        parallel = run_experiment(config, jobs=2)
        assert [r.model_dump() for r in parallel.rows] == [r.model_dump() for r in serial.rows]

    @patch("effbasis.services.experiment_service.run_system")
    def test_failures_collected(self, mock_run_system):
        from effbasis.services.experiment_service import SystemOutcome
        from effbasis.models.report import RunFailure

        mock_run_system.return_value = SystemOutcome(
            rows=[], details=[], failures=[RunFailure(system="h2", label="x", error="boom")]
        )
        report = run_experiment(_config({"method": "FCI"}))
        assert not report.ok
        assert report.failures[0].error == "boom"


class TestWriters:
    def test_csv_and_sidecar(self, tmp_path):
        report = run_experiment(_config({"method": "FCI"}, {"method": "GNM", "N": 1, "M": 1}, name="h2"))
        csv_path, json_path = write_report(report, tmp_path / "out")
        frame = pd.read_csv(csv_path)
        assert list(frame.columns) == list(ReportRow.model_fields)
        assert list(frame["method"]) == ["FCI", "GNM"]
        sidecar = json.loads(json_path.read_text())
        assert sidecar["details"][1]["bindings"]
        assert "0-1:theta(0,1)" in sidecar["details"][1]["bindings"][0]

    def test_deterministic_output(self, tmp_path):
        config = _config({"method": "GNM", "N": 1, "M": 1}, name="repeat")
        first, _ = write_report(run_experiment(config), tmp_path / "a")
        second, _ = write_report(run_experiment(config), tmp_path / "b")
        assert first.read_bytes() == second.read_bytes()

    def test_resources(self, tmp_path):
        config = _config(
            {"method": "FCI"},
            {"method": "GNM", "N": 1, "M": 1},
            {"method": "GNM", "N": 1, "M": 1, "augmented": True},
        )
        rows = report_resources(config)
        assert [r.method for r in rows] == ["G(N,M)", "G(N,M)+U_R"]
        assert all(r.cnot_count == 19 for r in rows)
        path = write_resources("h2", rows, tmp_path)
        assert pd.read_csv(path)["graph"].tolist() == ["0-1", "0-1"]
