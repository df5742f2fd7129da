"""
Security estimator and brute-force oracle.

The estimator counts the unknowns an exhaustive attacker faces: n^2 for W
plus (n-1)^2 free values for each of the two rank-deficient secrets, i.e.
3n^2 - 4n + 2, each a 32-bit value. Grover halves the bit count.

The oracle recovers an equivalent secret (U', V') at micro scale by trying
every coefficient vector, and is used to show that any pair reproducing TB
decapsulates like the planted key.
"""

import itertools
import logging
import secrets
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import kem
from .algebra import ExponentMatrix, poly_eval_matrix, rdmpf
from .errors import ParameterError, SearchSpaceError
from .params import Params

logger = logging.getLogger(__name__)

TABLE_DIMENSIONS = (3, 5, 7, 10, 15, 20)
MAX_SEARCH_SPACE = 1 << 24

# NIST categories by post-quantum bit security
_NIST_BRACKETS = ((256, 5), (192, 3), (128, 1))


@dataclass(frozen=True)
class SecurityEstimate:
    n: int
    unknowns: int
    bits_per_entry: int
    bits_classical: int
    bits_quantum: int
    nist_level: int


def unknown_count(n: int) -> int:
    return 3 * n * n - 4 * n + 2


def security_estimate(n: int, bits_per_entry: int = 32) -> SecurityEstimate:
    """Closed-form brute-force estimate for dimension n"""
    if n < 2:
        raise ParameterError(f"Dimension must be >= 2, got {n}")
    unknowns = unknown_count(n)
    classical = bits_per_entry * unknowns
    quantum = classical // 2

    if classical >= 512:
        level = 5
    else:
        level = next((lvl for bits, lvl in _NIST_BRACKETS if quantum >= bits), 0)

    return SecurityEstimate(
        n=n,
        unknowns=unknowns,
        bits_per_entry=bits_per_entry,
        bits_classical=classical,
        bits_quantum=quantum,
        nist_level=level,
    )


def format_security_table(dimensions=TABLE_DIMENSIONS) -> str:
    """Tab-separated security table, one row per dimension"""
    lines = [
        "Matrix dimension (n)\tUnknown values\tUnknown value bit size\t"
        "Total bit security\tNIST PQC classical security level\tQuantum bits (Grover)"
    ]
    for n in dimensions:
        e = security_estimate(n)
        lines.append(
            f"{e.n}\t{e.unknowns}\t{e.bits_per_entry}\t{e.bits_classical}\t"
            f"{e.nist_level}\t{e.bits_quantum}"
        )
    return "\n".join(lines)


# ============================================================================
# BRUTE-FORCE ORACLE
# ============================================================================

@dataclass
class RecoveryReport:
    found: bool
    search_space: int
    candidates_tried: int
    seconds: float
    coefficients: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)
    rounds: Tuple[Tuple[ExponentMatrix, ExponentMatrix], ...] = ()


def _coefficient_vectors(params: Params) -> List[Tuple[int, ...]]:
    return [
        c for c in itertools.product(range(params.exp_max + 1), repeat=params.d)
        if any(c)
    ]


def search_space_size(params: Params) -> int:
    per_matrix = (params.exp_max + 1) ** params.d - 1
    return params.R * per_matrix * per_matrix


def brute_force_recover(pk: kem.KemPublicKey, micro_params: Optional[Params] = None) -> RecoveryReport:
    """
    Enumerate U = q(A), V = q'(B) until RDMPF(U, W, V) = TB_r for every round.

    Refuses profiles whose search space exceeds MAX_SEARCH_SPACE.
    """
    params = micro_params or pk.params
    if params != pk.params:
        raise ParameterError(f"Public key belongs to {pk.params.name}, not {params.name}")
    size = search_space_size(params)
    if size > MAX_SEARCH_SPACE:
        raise SearchSpaceError(
            f"Search space {size} exceeds the desk-scale guard {MAX_SEARCH_SPACE} "
            f"for profile {params.name}"
        )

    start = time.perf_counter()
    vectors = _coefficient_vectors(params)
    lefts = [(c, poly_eval_matrix(c, pk.A)) for c in vectors]
    rights = [(c, poly_eval_matrix(c, pk.B)) for c in vectors]

    tried = 0
    coefficients, rounds = [], []
    for r, target in enumerate(pk.TB, start=1):
        hit = None
        for (cu, U), (cv, V) in itertools.product(lefts, rights):
            tried += 1
            if rdmpf(U, pk.W, V, params) == target:
                hit = (cu, U, cv, V)
                break
        if hit is None:
            logger.warning("Round %d: no candidate reproduces TB", r)
            return RecoveryReport(False, size, tried, time.perf_counter() - start)
        coefficients.append((hit[0], hit[2]))
        rounds.append((hit[1], hit[3]))

    elapsed = time.perf_counter() - start
    logger.info("Recovered an equivalent key after %d of %d candidates", tried, size)
    return RecoveryReport(True, size, tried, elapsed, coefficients, tuple(rounds))


def check_equivalence(pk: kem.KemPublicKey, report: RecoveryReport, trials: int = 10) -> int:
    """Number of fresh honest ciphertexts the recovered key decapsulates correctly"""
    if not report.found:
        return 0
    dummy_z = bytes(32)
    matches = 0
    for _ in range(trials):
        ct, K = kem.encaps(pk, secrets.token_bytes(pk.params.kappa_bytes))
        matches += kem.decaps_expanded(pk, report.rounds, dummy_z, ct) == K
    return matches
