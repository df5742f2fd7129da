import json

import pytest

from rdmpf import bench
from rdmpf_orchestrator import RdmpfOrchestrator


@pytest.fixture(scope="module")
def demo():
    orchestrator = RdmpfOrchestrator(verbose=False, height=2)
    return orchestrator, orchestrator.process("micro", 3, "micro_demo")


def test_summary_lines(demo):
    _, results = demo
    assert results["summary"] == {
        "Session Keys Match": "YES",
        "Tampering Test": "PASSED",
        "Verification (original)": "ACCEPTED",
        "Verification (tampered)": "REJECTED*",
        "Protocol Status": "SUCCESS",
    }
    assert results["errors"] == []


def test_pipeline_metrics(demo):
    _, results = demo
    metrics = results["pipeline_metrics"]
    assert set(metrics["kem"]) == {"Setup", "KeyGen", "Encaps", "Decaps", "ImplicitReject", "Total"}
    assert set(metrics["dsa"]) == {"Setup", "Sign", "Verify", "ImplicitReject", "Total"}
    assert metrics["kem_table"].splitlines()[-1].split("\t")[1] == "Standard error"
    assert len(results["kem_results"]) == len(results["dsa_results"]) == 3


def test_export_json_and_txt(demo, tmp_path):
    orchestrator, results = demo
    json_path = orchestrator.export_results(results, str(tmp_path), "json")
    txt_path = orchestrator.export_results(results, str(tmp_path), "txt")

    with open(json_path, encoding="utf-8") as f:
        assert json.load(f)["summary"]["Protocol Status"] == "SUCCESS"
    with open(txt_path, encoding="utf-8") as f:
        text = f.read()
    assert "Tampering Test: PASSED" in text
    assert "Verification (tampered): REJECTED*" in text

    with pytest.raises(ValueError):
        orchestrator.export_results(results, str(tmp_path), "xml")


def test_metrics_and_arguments(demo):
    orchestrator, _ = demo
    assert orchestrator.get_metrics()["total_executions"] == 1
    with pytest.raises(ValueError):
        orchestrator.process("micro", 0)
    with pytest.raises(ValueError):
        orchestrator.process("unknown", 1)


def test_runs_go_through_bench_helpers(monkeypatch):
    calls = []
    run_kem, run_dsa = bench.run_kem, bench.run_dsa

    def counting_kem(*args):
        calls.append("kem")
        return run_kem(*args)

    def counting_dsa(*args):
        calls.append("dsa")
        return run_dsa(*args)

    monkeypatch.setattr(bench, "run_kem", counting_kem)
    monkeypatch.setattr(bench, "run_dsa", counting_dsa)

    results = RdmpfOrchestrator(verbose=False, height=2).process("micro", 2)
    assert calls == ["kem", "dsa", "kem", "dsa"]
    kem_run = results["kem_results"][0]
    assert kem_run["total_seconds"] == pytest.approx(
        sum(kem_run["timings"][op] for op in ("KeyGen", "Encaps", "Decaps")))
