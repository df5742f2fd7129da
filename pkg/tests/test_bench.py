"""Benchmark tables, CSV output and the decaps timing check"""

import csv
import io
import math

import pytest

from rdmpf import kem
from rdmpf.bench import (
    CSV_HEADER,
    DSA_OPS,
    KEM_OPS,
    BenchRecord,
    BenchReport,
    bench,
    count_operations,
    mean_and_stderr,
    run_dsa,
    run_kem,
    timing_check,
)
from rdmpf.errors import ParameterError


def test_mean_and_stderr_on_fixed_column():
    mean, stderr = mean_and_stderr([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert math.isclose(stderr, 1.0 / math.sqrt(3))
    assert mean_and_stderr([0.5]) == (0.5, 0.0)


def test_kem_bench_shape(toy):
    report = bench(toy, 10)
    assert report.runs == 10
    assert len(report.records) == 10 * len(KEM_OPS)
    assert all(report.checks)
    assert all(rec.seconds >= 0 for rec in report.records)

    rows = report.table_rows()
    assert len(rows) == 1 + 10 + 2
    assert rows[0][:2] == ["RUN #", "KEYa = KEYb"]
    assert rows[-2][1] == "Mean"
    assert rows[-1][1] == "Standard error"
    assert all(row[1] == "Yes" for row in rows[1:11])


def test_csv_layout(micro):
    report = bench(micro, 3)
    parsed = list(csv.reader(io.StringIO(report.to_csv())))
    assert tuple(parsed[0]) == CSV_HEADER
    assert len(parsed) == 1 + 3 * len(KEM_OPS)
    assert {row[3] for row in parsed[1:]} == {"micro"}
    assert [row[1] for row in parsed[1:6]] == list(KEM_OPS)


def test_dsa_bench(micro):
    report = bench(micro, 2, protocol="dsa", height=2)
    assert len(report.records) == 2 * len(DSA_OPS)
    assert report.table_rows()[1][1] == "OK"


def test_totals_exclude_setup_and_reject():
    report = BenchReport(protocol="kem", profile="x", ops=KEM_OPS, checks=[True])
    for op, seconds in zip(KEM_OPS, (10.0, 1.0, 2.0, 3.0, 20.0)):
        report.records.append(BenchRecord(1, op, seconds, "x"))
    assert report.totals() == [6.0]


def test_bench_arguments(toy):
    with pytest.raises(ParameterError):
        bench(toy, 0)
    with pytest.raises(ParameterError):
        bench(toy, 1, protocol="tls")


def test_operation_parity_between_paths(toy_keys):
    pk, sk = toy_keys
    ct, _ = kem.encaps(pk, bytes(8))
    accept = count_operations(kem.decaps, sk, ct)
    reject = count_operations(kem.decaps, sk, kem.tamper(ct, 70))
    assert accept == reject
    assert accept["rdmpf"] == 2 * pk.params.R


def test_timing_check_summary(micro):
    summary = timing_check(micro, 100, seed=bytes(32))
    assert summary.trials == 100
    assert summary.ratio > 0
    assert isinstance(summary.flagged, bool)
    assert summary.parity


def test_timing_check_detects_injected_delay(micro):
    summary = timing_check(micro, 100, inject_delay=0.005, seed=bytes(32))
    assert summary.flagged
    assert summary.ratio > 1.2


def test_timing_check_minimum_trials(micro):
    with pytest.raises(ParameterError):
        timing_check(micro, 50)


def test_run_helpers_record_and_return(micro):
    report = BenchReport(protocol="kem", profile="micro", ops=KEM_OPS)
    result = run_kem(micro, report, 1)
    assert result.keys_match and result.key_rejected != result.key_a
    assert tuple(result.timings) == KEM_OPS
    assert [rec.op for rec in report.records] == list(KEM_OPS)

    report = BenchReport(protocol="dsa", profile="micro", ops=DSA_OPS)
    result = run_dsa(micro, report, 1, 2)
    assert result.ok
    assert result.rejected.label == "reject*"
    assert report.checks == [True]
