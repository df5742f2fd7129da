"""
Benchmark and timing harness
============================

bench() times every protocol operation per run with a monotonic clock and
renders both a long CSV (run,op,seconds,profile) and the wide per-protocol
table with Mean and Standard error rows.

timing_check() compares decapsulation of honest and tampered ciphertexts.
Python cannot promise constant time, so the check only raises a soft flag;
the structural guarantee (same operation sequence on both paths) is checked
with call counters.
"""

import csv
import io
import logging
import math
import secrets
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional
from unittest import mock

from . import dsa, hashing, kem
from .errors import ParameterError
from .params import Params

logger = logging.getLogger(__name__)

KEM_OPS = ("Setup", "KeyGen", "Encaps", "Decaps", "ImplicitReject")
DSA_OPS = ("Setup", "Sign", "Verify", "ImplicitReject")
CSV_HEADER = ("run", "op", "seconds", "profile")
TIMING_THRESHOLD = 0.20
DEMO_MESSAGE = b" Hello PQC! with FO & IR "


@dataclass(frozen=True)
class BenchRecord:
    run: int
    op: str
    seconds: float
    profile: str


def mean_and_stderr(values: List[float]):
    """Arithmetic mean and sample stdev / sqrt(n) (0 for a single value)"""
    mean = statistics.fmean(values)
    if len(values) < 2:
        return mean, 0.0
    return mean, statistics.stdev(values) / math.sqrt(len(values))


@dataclass
class BenchReport:
    protocol: str
    profile: str
    ops: tuple
    records: List[BenchRecord] = field(default_factory=list)
    checks: List[bool] = field(default_factory=list)

    @property
    def runs(self) -> int:
        return len(self.checks)

    def column(self, op: str) -> List[float]:
        return [rec.seconds for rec in self.records if rec.op == op]

    def totals(self) -> List[float]:
        """Per-run time of the protocol path (every op except Setup and ImplicitReject)"""
        timed = [op for op in self.ops if op not in ("Setup", "ImplicitReject")]
        return [
            sum(rec.seconds for rec in self.records if rec.run == run and rec.op in timed)
            for run in range(1, self.runs + 1)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in self.records:
            writer.writerow((rec.run, rec.op, f"{rec.seconds:.7f}", rec.profile))
        return buf.getvalue()

    def table_rows(self) -> List[List[str]]:
        """Wide table: header, one row per run, then Mean and Standard error"""
        check_name = "KEYa = KEYb" if self.protocol == "kem" else "Signature Verification Result"
        header = ["RUN #", check_name] + [f"{op} time (seconds)" for op in self.ops] + ["Total time (seconds)"]
        columns = [self.column(op) for op in self.ops] + [self.totals()]

        rows = [header]
        for idx in range(self.runs):
            ok = self.checks[idx]
            mark = ("Yes" if ok else "No") if self.protocol == "kem" else ("OK" if ok else "FAIL")
            rows.append([str(idx + 1), mark] + [f"{col[idx]:.7f}" for col in columns])

        stats = [mean_and_stderr(col) for col in columns]
        rows.append(["", "Mean"] + [f"{m:.7f}" for m, _ in stats])
        rows.append(["", "Standard error"] + [f"{s:.7f}" for _, s in stats])
        return rows

    def format_table(self) -> str:
        return "\n".join("\t".join(row) for row in self.table_rows())


def _timed(fn: Callable, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


@dataclass(frozen=True)
class KemRun:
    """One timed KEM pass: both parties' keys and the key from a tampered ciphertext"""
    key_a: bytes
    key_b: bytes
    key_rejected: bytes
    timings: Dict[str, float]

    @property
    def keys_match(self) -> bool:
        return self.key_a == self.key_b


@dataclass(frozen=True)
class DsaRun:
    outcome: dsa.VerifyOutcome
    rejected: dsa.VerifyOutcome
    timings: Dict[str, float]

    @property
    def ok(self) -> bool:
        return self.outcome.accepted and not self.rejected.accepted


def run_kem(params: Params, report: BenchReport, run: int) -> KemRun:
    """Time Setup → KeyGen → Encaps → Decaps → ImplicitReject and record the run in `report`"""
    seed = secrets.token_bytes(kem.SEED_BYTES)
    _, t_setup = _timed(kem.setup, seed, params)
    (pk, sk), t_keygen = _timed(kem.keygen, seed, params)
    (ct, key), t_encaps = _timed(kem.encaps_random, pk)
    key_back, t_decaps = _timed(kem.decaps, sk, ct)
    forged = kem.tamper(ct, len(ct.ta_enc))
    key_rej, t_reject = _timed(kem.decaps, sk, forged)

    result = KemRun(key, key_back, key_rej,
                    dict(zip(KEM_OPS, (t_setup, t_keygen, t_encaps, t_decaps, t_reject))))
    for op, seconds in result.timings.items():
        report.records.append(BenchRecord(run, op, seconds, params.name))
    report.checks.append(result.keys_match)
    return result


def run_dsa(params: Params, report: BenchReport, run: int, height: Optional[int]) -> DsaRun:
    """Time Setup → Sign → Verify → ImplicitReject (one flipped message bit)"""
    seed = secrets.token_bytes(dsa.SEED_BYTES)
    (pk, sk), t_setup = _timed(dsa.keygen_ds, seed, "merkle-lamport", height)
    context = dsa.VerifierContext.from_secret(sk)
    sig, t_sign = _timed(dsa.sign_ds, sk, DEMO_MESSAGE)
    outcome, t_verify = _timed(dsa.verify_ds, pk, DEMO_MESSAGE, sig, context)
    forged = DEMO_MESSAGE[:-1] + bytes([DEMO_MESSAGE[-1] ^ 1])
    rejected, t_reject = _timed(dsa.verify_ds, pk, forged, sig, context)

    result = DsaRun(outcome, rejected, dict(zip(DSA_OPS, (t_setup, t_sign, t_verify, t_reject))))
    for op, seconds in result.timings.items():
        report.records.append(BenchRecord(run, op, seconds, params.name))
    report.checks.append(result.ok)
    return result


def bench(profile: Params, runs: int, protocol: str = "kem", height: Optional[int] = None) -> BenchReport:
    """Sequential timing runs of one protocol under a profile"""
    if runs < 1:
        raise ParameterError(f"runs must be >= 1, got {runs}")
    if protocol not in ("kem", "dsa"):
        raise ParameterError(f"Unknown protocol: {protocol}. Use 'kem' or 'dsa'")

    report = BenchReport(protocol=protocol, profile=profile.name,
                         ops=KEM_OPS if protocol == "kem" else DSA_OPS)
    for run in range(1, runs + 1):
        if protocol == "kem":
            run_kem(profile, report, run)
        else:
            run_dsa(profile, report, run, height)
        logger.info("bench %s/%s run %d/%d done", protocol, profile.name, run, runs)
    return report


# ============================================================================
# TIMING CHECK
# ============================================================================

@dataclass
class TimingSummary:
    profile: str
    trials: int
    accept_median: float
    reject_median: float
    accept_mad: float
    reject_mad: float
    ratio: float
    flagged: bool
    op_counts_accept: Dict[str, int]
    op_counts_reject: Dict[str, int]

    @property
    def parity(self) -> bool:
        return self.op_counts_accept == self.op_counts_reject


def _mad(values: List[float], median: float) -> float:
    return statistics.median(abs(v - median) for v in values)


def count_operations(fn: Callable, *args) -> Dict[str, int]:
    """Run fn once and count RDMPF evaluations and XOF calls"""
    with mock.patch.object(kem, "rdmpf", wraps=kem.rdmpf) as rdmpf_calls, \
         mock.patch.object(hashing, "xof", wraps=hashing.xof) as xof_calls:
        fn(*args)
    return {"rdmpf": rdmpf_calls.call_count, "xof": xof_calls.call_count}


def timing_check(profile: Params, trials: int, inject_delay: float = 0.0,
                 seed: Optional[bytes] = None) -> TimingSummary:
    """
    Decaps timing on honest vs tampered ciphertexts.

    inject_delay adds a sleep to the tampered path only; it exists so the
    check can be tested against a known leak.
    """
    if trials < 100:
        raise ParameterError(f"trials must be >= 100, got {trials}")

    pk, sk = kem.keygen(seed or secrets.token_bytes(kem.SEED_BYTES), profile)
    honest_times, reject_times = [], []
    for _ in range(trials):
        ct, _ = kem.encaps_random(pk)
        forged = kem.tamper(ct, len(ct.ta_enc))

        start = time.perf_counter()
        kem.decaps(sk, ct)
        honest_times.append(time.perf_counter() - start)

        start = time.perf_counter()
        kem.decaps(sk, forged)
        if inject_delay:
            time.sleep(inject_delay)
        reject_times.append(time.perf_counter() - start)

    ct, _ = kem.encaps_random(pk)
    counts_accept = count_operations(kem.decaps, sk, ct)
    counts_reject = count_operations(kem.decaps, sk, kem.tamper(ct, len(ct.ta_enc)))

    accept_median = statistics.median(honest_times)
    reject_median = statistics.median(reject_times)
    ratio = reject_median / accept_median
    flagged = abs(ratio - 1.0) > TIMING_THRESHOLD
    if flagged:
        logger.warning(
            "Decaps medians differ by %.1f%% (accept %.6fs, reject %.6fs)",
            abs(ratio - 1.0) * 100, accept_median, reject_median
        )

    return TimingSummary(
        profile=profile.name,
        trials=trials,
        accept_median=accept_median,
        reject_median=reject_median,
        accept_mad=_mad(honest_times, accept_median),
        reject_mad=_mad(reject_times, reject_median),
        ratio=ratio,
        flagged=flagged,
        op_counts_accept=counts_accept,
        op_counts_reject=counts_reject,
    )
