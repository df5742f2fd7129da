"""
FO-RDMPF-KEM
============

Key encapsulation over the rank-deficient matrix power function with the
Fujisaki-Okamoto transform and implicit rejection.

KeyGen:  singular public bases A (1.A = 0) and B (B.1^T = 0), a public group
         matrix W, and per round secret U_r = q_r(A), V_r = q'_r(B) from the
         seed; TB_r = RDMPF(U_r, W, V_r).
Encaps:  message m -> (X_r, Y_r) as polynomials in the same bases, so X_r
         commutes with U_r and Y_r with V_r; the shared RDMPF value is
         RDMPF(X_r, TB_r, Y_r) = RDMPF(U_r, TA_r, V_r).
Decaps:  re-encrypts m' and compares; on any mismatch the key comes from the
         fallback secret z instead. Both keys are always computed.
"""

import logging
import secrets
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

from . import codec
from .algebra import (
    LEFT,
    RIGHT,
    ExponentMatrix,
    GroupMatrix,
    gen_singular_base,
    poly_eval_matrix,
    rdmpf,
    sample_coefficients,
    sample_group_matrix,
)
from .codec import Ciphertext
from .consttime import ct_equal, ct_select, xor_bytes
from .errors import FramingError, ParameterError
from .hashing import SECRET_BITS, XofReader, h1, h2, kdf, xof
from .params import Params

logger = logging.getLogger(__name__)

SEED_BYTES = codec.SEED_BYTES

SharedKey = bytes
RoundSecrets = Tuple[Tuple[ExponentMatrix, ExponentMatrix], ...]

ACCEPT_SUFFIX = b"\x00"
REJECT_SUFFIX = b"\x01"
FALLBACK_SUFFIX = b"\xff"


@dataclass(frozen=True)
class PublicBases:
    """Output of Setup: the public singular bases and W"""

    A: ExponentMatrix
    B: ExponentMatrix
    W: GroupMatrix


@dataclass(frozen=True)
class KemPublicKey:
    params: Params
    A: ExponentMatrix
    B: ExponentMatrix
    W: GroupMatrix
    TB: Tuple[GroupMatrix, ...]
    encoded: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "TB", tuple(self.TB))
        object.__setattr__(self, "encoded", codec.encode_pk(self))


@dataclass(frozen=True)
class KemSecretKey:
    seed: bytes = field(repr=False)
    z: bytes = field(repr=False)
    pk: KemPublicKey


def _check_seed(seed: bytes):
    if len(seed) != SEED_BYTES:
        raise ParameterError(f"Seed must be {SEED_BYTES} bytes, got {len(seed)}")


def _round_index(r: int) -> bytes:
    return r.to_bytes(2, "big")


def _coefficient_pair(label: bytes, data: bytes, params: Params) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Two non-zero coefficient vectors; a counter is appended on resampling"""
    attempt = 0
    while True:
        suffix = attempt.to_bytes(2, "big") if attempt else b""
        stream = XofReader(label, data + suffix)
        cu = sample_coefficients(stream, params)
        cv = sample_coefficients(stream, params)
        if any(cu) and any(cv):
            return cu, cv
        attempt += 1
        logger.debug("All-zero %s coefficients, resampling (attempt %d)", label.decode(), attempt)


def _poly_pair(label: bytes, data: bytes, A: ExponentMatrix, B: ExponentMatrix,
               params: Params) -> Tuple[ExponentMatrix, ExponentMatrix]:
    cu, cv = _coefficient_pair(label, data, params)
    return poly_eval_matrix(cu, A), poly_eval_matrix(cv, B)


# ============================================================================
# KEY GENERATION
# ============================================================================

def setup(seed: bytes, params: Params) -> PublicBases:
    """Derive the public bases A, B and the group matrix W from the seed"""
    _check_seed(seed)
    A = gen_singular_base(seed, LEFT, params, label=b"Agen")
    B = gen_singular_base(seed, RIGHT, params, label=b"Bgen")
    W = sample_group_matrix(XofReader(b"Wgen", seed), params)
    return PublicBases(A=A, B=B, W=W)


def expand_rounds(seed: bytes, A: ExponentMatrix, B: ExponentMatrix, params: Params) -> RoundSecrets:
    """(U_r, V_r) for r = 1..R, re-derived from the seed"""
    return tuple(
        _poly_pair(b"UVgen", seed + _round_index(r), A, B, params)
        for r in range(1, params.R + 1)
    )


def expand_secret(sk: KemSecretKey) -> RoundSecrets:
    return expand_rounds(sk.seed, sk.pk.A, sk.pk.B, sk.pk.params)


def keygen(rng_seed: bytes, params: Params) -> Tuple[KemPublicKey, KemSecretKey]:
    """Deterministic key pair from a 32-byte seed"""
    bases = setup(rng_seed, params)
    rounds = expand_rounds(rng_seed, bases.A, bases.B, params)
    TB = tuple(rdmpf(U, bases.W, V, params) for U, V in rounds)

    pk = KemPublicKey(params=params, A=bases.A, B=bases.B, W=bases.W, TB=TB)
    z = xof(b"zsec", rng_seed, SECRET_BITS)
    logger.debug("Generated %s key pair (R=%d)", params.name, params.R)
    return pk, KemSecretKey(seed=rng_seed, z=z, pk=pk)


def keygen_random(params: Params) -> Tuple[KemPublicKey, KemSecretKey]:
    return keygen(secrets.token_bytes(SEED_BYTES), params)


def secret_fallback(sk: KemSecretKey) -> bytes:
    """The stored fallback secret z"""
    return sk.z


# ============================================================================
# ENCAPSULATION
# ============================================================================

def map_to_xy(m: bytes, pk: KemPublicKey) -> RoundSecrets:
    """(X_r, Y_r) for r = 1..R as polynomials in A and B, deterministic in (m, pk)"""
    params = pk.params
    if len(m) != params.kappa_bytes:
        raise ParameterError(f"Message must be {params.kappa_bytes} bytes, got {len(m)}")
    return tuple(
        _poly_pair(b"XY", m + pk.encoded + _round_index(r), pk.A, pk.B, params)
        for r in range(1, params.R + 1)
    )


def _mask(Z: bytes, ta_enc: bytes, pk: KemPublicKey) -> bytes:
    params = pk.params
    return h1(Z + ta_enc + pk.encoded, b"mask", params.kappa)[:params.kappa_bytes]


def _tag(m: bytes, ta_enc: bytes, pk: KemPublicKey) -> bytes:
    return h2(m + ta_enc + pk.encoded, b"tag")


def _ta_enc(xy: RoundSecrets, pk: KemPublicKey) -> bytes:
    return codec.encode_matrices([rdmpf(X, pk.W, Y, pk.params) for X, Y in xy])


def encaps(pk: KemPublicKey, coins: bytes) -> Tuple[Ciphertext, SharedKey]:
    """Derandomized encapsulation: (ct, K) is a function of (pk, coins)"""
    params = pk.params
    m = coins
    xy = map_to_xy(m, pk)

    ta_enc = _ta_enc(xy, pk)
    s_enc = codec.encode_matrices(
        [rdmpf(X, TB, Y, params) for (X, Y), TB in zip(xy, pk.TB)]
    )
    Z = kdf(s_enc, params.kappa)

    c_mask = xor_bytes(m, _mask(Z, ta_enc, pk))
    tag = _tag(m, ta_enc, pk)
    ct = Ciphertext(ta_enc=ta_enc, c_mask=c_mask, tag=tag)

    K = kdf(Z + ct.to_bytes() + ACCEPT_SUFFIX, params.kappa)
    return ct, K


def encaps_random(pk: KemPublicKey) -> Tuple[Ciphertext, SharedKey]:
    return encaps(pk, secrets.token_bytes(pk.params.kappa_bytes))


# ============================================================================
# DECAPSULATION
# ============================================================================

def _as_ciphertext(ct: Union[Ciphertext, bytes], params: Params) -> Ciphertext:
    if isinstance(ct, (bytes, bytearray)):
        return codec.decode_ct(bytes(ct), params)
    if (
        len(ct.ta_enc) != codec.matrices_length(params)
        or len(ct.c_mask) != params.kappa_bytes
        or len(ct.tag) != codec.TAG_BYTES
    ):
        raise FramingError(f"Ciphertext fields do not match profile {params.name}")
    return ct


def decaps_expanded(pk: KemPublicKey, rounds: Sequence[Tuple[ExponentMatrix, ExponentMatrix]],
                    z: bytes, ct: Union[Ciphertext, bytes]) -> SharedKey:
    """Decapsulate with explicit round secrets (U_r, V_r) and fallback z"""
    params = pk.params
    ct = _as_ciphertext(ct, params)
    ct_bytes = ct.to_bytes()

    TA, well_formed = codec.decode_matrices(ct.ta_enc, params)
    s_enc = codec.encode_matrices(
        [rdmpf(U, TA_r, V, params) for (U, V), TA_r in zip(rounds, TA)]
    )
    Z = kdf(s_enc, params.kappa)
    m = xor_bytes(ct.c_mask, _mask(Z, ct.ta_enc, pk))

    ta_again = _ta_enc(map_to_xy(m, pk), pk)
    tag = _tag(m, ct.ta_enc, pk)

    ok = ct_equal(ta_again, ct.ta_enc) & ct_equal(tag, ct.tag) & int(well_formed)

    k_accept = kdf(Z + ct_bytes + ACCEPT_SUFFIX, params.kappa)
    rho = h1(z + ct_bytes + FALLBACK_SUFFIX, b"rej")
    k_reject = kdf(rho + ct_bytes + REJECT_SUFFIX, params.kappa)
    return ct_select(ok, k_accept, k_reject)


def decaps(sk: KemSecretKey, ct: Union[Ciphertext, bytes]) -> SharedKey:
    """Shared key for ct; a pseudorandom key (never an error) if ct is invalid"""
    return decaps_expanded(sk.pk, expand_secret(sk), secret_fallback(sk), ct)


def tamper(ct: Ciphertext, position: int, xor: int = 0x01) -> Ciphertext:
    """Copy of ct with one byte flipped (tests, bench and demos)"""
    raw = bytearray(ct.to_bytes())
    raw[position] ^= xor
    split_a = len(ct.ta_enc)
    split_b = split_a + len(ct.c_mask)
    raw = bytes(raw)
    return Ciphertext(ta_enc=raw[:split_a], c_mask=raw[split_a:split_b], tag=raw[split_b:])
