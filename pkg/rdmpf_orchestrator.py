"""
RdmpfOrchestrator - End-to-end KEM and signature demo
=====================================================

Runs both protocol pipelines under one parameter profile:
  KEM: Setup → KeyGen → Encaps → Decaps → ImplicitReject (tampered ct)
  DSA: Setup → Sign → Verify → ImplicitReject (tampered message)

Each run is timed per operation; the report carries per-run rows, mean and
standard error per column, and the protocol summary. Results export to JSON
or TXT.
"""

import io
import json
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from rdmpf import bench, config
from rdmpf.bench import DSA_OPS, KEM_OPS, BenchReport, mean_and_stderr
from rdmpf.errors import RdmpfError
from rdmpf.params import Params, get_profile

# Las claves compartidas se muestran truncadas a estos dígitos hex
KEY_DISPLAY_HEX = 4


class RdmpfOrchestrator:
    """
    Orchestrates the KEM and DSA demo pipelines.

    Features:
    - Per-operation timings per run
    - Stage errors captured instead of aborting the run
    - Export to JSON/TXT
    """

    def __init__(self, verbose: bool = True, height: Optional[int] = None):
        self.verbose = verbose
        self.height = height if height is not None else config.MERKLE_HEIGHT
        self.execution_count = 0

        if self.verbose:
            print("=" * 80)
            print("INITIALIZING RDMPF ORCHESTRATOR")
            print("=" * 80)
            print(f"Inner signature scheme: merkle-lamport (height {self.height})")
            print("=" * 80 + "\n")

    def process(self, profile: str = "toy-997", runs: int = 1,
                case_name: Optional[str] = None) -> Dict[str, Any]:
        """
        Run both pipelines `runs` times under `profile`.

        Returns:
            Dict with metadata, per-run results, pipeline metrics and summary
        """
        if runs < 1:
            raise ValueError(f"runs must be >= 1, got {runs}")
        params = get_profile(profile)

        self.execution_count += 1
        start_time = datetime.now()

        if self.verbose:
            print("\n" + "=" * 80)
            print(f"RUNNING RDMPF DEMO - {case_name or 'Case ' + str(self.execution_count)}")
            print("=" * 80)
            print(f"Timestamp: {start_time.isoformat()}")
            print(f"Profile: {params.name} (p={params.p}, n={params.n}, sigma={params.sigma}, "
                  f"R={params.R}, kappa={params.kappa})")
            print("=" * 80 + "\n")

        results = {
            'metadata': {
                'case_name': case_name or f"rdmpf_{params.name}",
                'execution_id': self.execution_count,
                'timestamp': start_time.isoformat(),
                'profile': params.model_dump(),
                'runs': runs,
                'merkle_height': self.height,
            },
            'kem_results': [],
            'dsa_results': [],
            'pipeline_metrics': {},
            'summary': {},
            'errors': [],
        }

        kem_report = BenchReport(protocol="kem", profile=params.name, ops=KEM_OPS)
        dsa_report = BenchReport(protocol="dsa", profile=params.name, ops=DSA_OPS)

        for run in range(1, runs + 1):
            if self.verbose:
                print("═" * 80)
                print(f"RUN {run}/{runs}")
                print("═" * 80)

            kem_result = self._execute_stage(
                'kem', results, lambda: self._run_kem(params, run, kem_report))
            results['kem_results'].append(kem_result)

            dsa_result = self._execute_stage(
                'dsa', results, lambda: self._run_dsa(params, run, dsa_report))
            results['dsa_results'].append(dsa_result)

        duration = (datetime.now() - start_time).total_seconds()
        results['pipeline_metrics'] = self._calculate_pipeline_metrics(kem_report, dsa_report, duration)
        results['summary'] = self._summarize(results)

        if self.verbose:
            self._print_summary(results['summary'])

        return results

    # ========================================================================
    # STAGES
    # ========================================================================

    def _execute_stage(self, name: str, results: Dict[str, Any],
                       stage: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        """Ejecuta una etapa; los errores quedan en results['errors'] sin abortar el run"""
        if self.verbose:
            print(f"▶ {name.upper()} pipeline...")
        try:
            result = stage()
            if self.verbose:
                print(f"  ✓ Completed in {result['total_seconds']:.4f}s\n")
            return result
        except (RdmpfError, ValueError) as e:
            error_msg = f"Error in {name}: {e}"
            if self.verbose:
                print(f"  ✗ {error_msg}\n")
            results['errors'].append(error_msg)
            return {'stage': name, 'error': str(e), 'timestamp': datetime.now().isoformat()}

    def _run_kem(self, params: Params, run: int, report: BenchReport) -> Dict[str, Any]:
        outcome = bench.run_kem(params, report, run)
        key_a, key_b, key_rej = outcome.key_a, outcome.key_b, outcome.key_rejected

        if self.verbose:
            print(f"    Sender key:    {key_a.hex()[:KEY_DISPLAY_HEX]}")
            print(f"    Receiver key:  {key_b.hex()[:KEY_DISPLAY_HEX]}")
            print(f"    Tampered key:  {key_rej.hex()[:KEY_DISPLAY_HEX]}")

        timings = outcome.timings
        return {
            'run': run,
            'keys_match': outcome.keys_match,
            'tamper_rejected': key_rej != key_a,
            'key_a': key_a.hex()[:KEY_DISPLAY_HEX],
            'key_b': key_b.hex()[:KEY_DISPLAY_HEX],
            'timings': timings,
            'total_seconds': timings['KeyGen'] + timings['Encaps'] + timings['Decaps'],
        }

    def _run_dsa(self, params: Params, run: int, report: BenchReport) -> Dict[str, Any]:
        outcome = bench.run_dsa(params, report, run, self.height)
        original, rejected = outcome.outcome, outcome.rejected

        if self.verbose:
            print(f"    Original message: {original.label}")
            print(f"    Tampered message: {rejected.label}")

        timings = outcome.timings
        return {
            'run': run,
            'original': original.label,
            'tampered': rejected.label,
            'placeholder': rejected.placeholder.hex() if rejected.placeholder else None,
            'timings': timings,
            'total_seconds': timings['Sign'] + timings['Verify'],
        }

    # ========================================================================
    # METRICS AND SUMMARY
    # ========================================================================

    def _calculate_pipeline_metrics(self, kem_report: BenchReport, dsa_report: BenchReport,
                                    duration: float) -> Dict[str, Any]:
        metrics = {'total_duration_seconds': round(duration, 4)}
        for name, report in (('kem', kem_report), ('dsa', dsa_report)):
            if not report.records:
                continue
            stats = {}
            for op in report.ops:
                mean, stderr = mean_and_stderr(report.column(op))
                stats[op] = {'mean': mean, 'stderr': stderr}
            mean, stderr = mean_and_stderr(report.totals())
            stats['Total'] = {'mean': mean, 'stderr': stderr}
            metrics[name] = stats
            metrics[f'{name}_table'] = report.format_table()
        return metrics

    def _summarize(self, results: Dict[str, Any]) -> Dict[str, str]:
        kem_ok = [r for r in results['kem_results'] if 'error' not in r]
        dsa_ok = [r for r in results['dsa_results'] if 'error' not in r]

        keys_match = bool(kem_ok) and all(r['keys_match'] for r in kem_ok)
        tamper_passed = bool(kem_ok) and all(r['tamper_rejected'] for r in kem_ok)
        original = bool(dsa_ok) and all(r['original'] == "accept" for r in dsa_ok)
        tampered = bool(dsa_ok) and all(r['tampered'] == "reject*" for r in dsa_ok)

        success = keys_match and tamper_passed and original and tampered and not results['errors']
        return {
            'Session Keys Match': "YES" if keys_match else "NO",
            'Tampering Test': "PASSED" if tamper_passed else "FAILED",
            'Verification (original)': "ACCEPTED" if original else "REJECTED*",
            'Verification (tampered)': "REJECTED*" if tampered else "ACCEPTED",
            'Protocol Status': "SUCCESS" if success else "FAILURE",
        }

    def _print_summary(self, summary: Dict[str, str]):
        print("\n" + "=" * 80)
        print("DEMO COMPLETED")
        print("=" * 80)
        for key, value in summary.items():
            print(f"{key}: {value}")
        print("=" * 80 + "\n")

    # ========================================================================
    # EXPORT
    # ========================================================================

    def export_results(self, results: Dict[str, Any], output_dir: str = ".",
                       format: str = "json") -> str:
        """
        Export results to a file.

        Args:
            results: Output of process()
            output_dir: Target directory
            format: 'json' or 'txt'

        Returns:
            Path of the written file
        """
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        case_name = results['metadata'].get('case_name') or 'rdmpf_demo'
        safe_name = "".join(c for c in case_name if c.isalnum() or c in (' ', '-', '_')).rstrip()
        safe_name = safe_name.replace(' ', '_')

        if format == "json":
            filepath = Path(output_dir) / f"{safe_name}_{timestamp}.json"
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(results, f, indent=2, ensure_ascii=False)
        elif format == "txt":
            filepath = Path(output_dir) / f"{safe_name}_{timestamp}.txt"
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(self._format_txt_report(results))
        else:
            raise ValueError(f"Unsupported format: {format}")

        if self.verbose:
            print(f"\n✓ Results exported: {filepath}")

        return str(filepath)

    def _format_txt_report(self, results: Dict[str, Any]) -> str:
        meta = results['metadata']
        lines = []
        lines.append("=" * 80)
        lines.append("RDMPF DEMO REPORT")
        lines.append("=" * 80)
        lines.append(f"\nCase: {meta.get('case_name', 'N/A')}")
        lines.append(f"Timestamp: {meta['timestamp']}")
        lines.append(f"Execution ID: {meta['execution_id']}")
        lines.append(f"Profile: {meta['profile']['name']}")
        lines.append(f"Runs: {meta['runs']}")

        metrics = results['pipeline_metrics']
        for name, title in (('kem', "FO-RDMPF-KEM"), ('dsa', "FO-DS-IR")):
            lines.append("\n" + "=" * 80)
            lines.append(title)
            lines.append("=" * 80)
            lines.append(metrics.get(f'{name}_table', "no successful runs"))

        lines.append("\n" + "=" * 80)
        lines.append("SUMMARY")
        lines.append("=" * 80)
        for key, value in results['summary'].items():
            lines.append(f"{key}: {value}")
        for error in results['errors']:
            lines.append(f"ERROR: {error}")
        lines.append(f"Total duration: {metrics['total_duration_seconds']}s")
        lines.append("=" * 80)
        return "\n".join(lines)

    def get_metrics(self) -> Dict[str, Any]:
        return {
            'total_executions': self.execution_count,
            'merkle_height': self.height,
            'profiles': ["toy-997", "l5-n7", "micro"],
        }


# CLI Interface (uso directo sin la API)
if __name__ == "__main__":
    if sys.platform == 'win32':
        sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')

    if len(sys.argv) > 1 and sys.argv[1] in ("-h", "--help"):
        print("=" * 80)
        print("RDMPF ORCHESTRATOR - KEM and signature demo")
        print("=" * 80)
        print(f"\nUsage: python {os.path.basename(__file__)} [profile] [runs]")
        print("\nExample:")
        print(f"  python {os.path.basename(__file__)} toy-997 10")
        print("\nResults are exported as JSON and TXT")
        print("=" * 80)
        sys.exit(0)

    profile_name = sys.argv[1] if len(sys.argv) > 1 else "toy-997"
    run_count = int(sys.argv[2]) if len(sys.argv) > 2 else 1

    orchestrator = RdmpfOrchestrator(verbose=True)
    results = orchestrator.process(profile_name, run_count)

    json_file = orchestrator.export_results(results, format="json")
    txt_file = orchestrator.export_results(results, format="txt")

    print("\n" + "=" * 80)
    print("GENERATED FILES:")
    print("=" * 80)
    print(f"JSON: {json_file}")
    print(f"TXT:  {txt_file}")
    print("=" * 80)

    sys.exit(0 if results['summary']['Protocol Status'] == "SUCCESS" else 1)
