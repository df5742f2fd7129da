"""
Codec - bit-exact wire formats
==============================

Matrices are row-major, big-endian, ceil(bits(p)/8) bytes per entry, rounds
concatenated in order. Fixed layouts:

    pk    = params-id || A || B || W || TB_1..R
    sk    = params-id || seed (32) || z (32)
    ct    = TA_enc || c_mask (kappa/8) || tag (32)
    sig   = len(sigma_0) (4) || sigma_0 || t (32)
    ds pk = scheme-id || inner public key
    ds sk = scheme-id || height || seed (32) || z (32)

Every decoder validates the total length and raises FramingError otherwise.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .algebra import ExponentMatrix, GroupMatrix
from .errors import FramingError
from .hashing import TAG_BITS
from .params import Params, get_profile_by_id

SEED_BYTES = 32
Z_BYTES = 32
TAG_BYTES = TAG_BITS // 8
SIGMA0_PREFIX_BYTES = 4

# Inner signature schemes known on the wire
SCHEME_IDS = {"merkle-lamport": 1}


@dataclass(frozen=True)
class Ciphertext:
    """ct = (TA_enc, c_mask, tag)"""

    ta_enc: bytes
    c_mask: bytes
    tag: bytes

    def to_bytes(self) -> bytes:
        return self.ta_enc + self.c_mask + self.tag


@dataclass(frozen=True)
class Signature:
    """sigma = (sigma_0, t)"""

    sigma0: bytes
    t: bytes


# ============================================================================
# MATRICES
# ============================================================================

def _encode_rows(rows, width: int) -> bytes:
    return b"".join(v.to_bytes(width, "big") for row in rows for v in row)


def entry_width(p: int) -> int:
    """Bytes per entry: ceil(bits(p) / 8)"""
    return (p.bit_length() + 7) // 8


def encode_matrices(ms: Sequence[GroupMatrix]) -> bytes:
    """Concatenate the matrices row-major, big-endian"""
    if not ms:
        return b""
    n, p = ms[0].dim, ms[0].p
    if any(m.dim != n or m.p != p for m in ms):
        raise FramingError("All matrices must share dimension and modulus")
    width = entry_width(p)
    return b"".join(_encode_rows(m.entries, width) for m in ms)


def matrices_length(params: Params, count: int = None) -> int:
    count = params.R if count is None else count
    return count * params.n * params.n * params.entry_bytes


def _split_entries(b: bytes, params: Params, count: int) -> List[List[List[int]]]:
    n, width = params.n, params.entry_bytes
    if len(b) != matrices_length(params, count):
        raise FramingError(
            f"Expected {matrices_length(params, count)} bytes for {count} matrices, got {len(b)}"
        )
    values = [int.from_bytes(b[k:k + width], "big") for k in range(0, len(b), width)]
    per = n * n
    return [
        [values[c * per + i * n:c * per + (i + 1) * n] for i in range(n)]
        for c in range(count)
    ]


def decode_matrices(b: bytes, params: Params, count: int = None) -> Tuple[List[GroupMatrix], bool]:
    """
    Parse count (default R) group matrices.

    Out-of-range entries are folded into [1, p-1] (v mod p, 0 -> 1) and the
    validity flag drops to False; only a wrong length raises.
    """
    count = params.R if count is None else count
    p = params.p
    valid = 1
    matrices = []
    for raw in _split_entries(b, params, count):
        rows = []
        for row in raw:
            fixed = []
            for v in row:
                ok = int(1 <= v < p)
                valid &= ok
                r = v % p
                fixed.append(r + int(r == 0))
            rows.append(tuple(fixed))
        matrices.append(GroupMatrix(tuple(rows), p))
    return matrices, bool(valid)


def _decode_exponents(b: bytes, params: Params) -> ExponentMatrix:
    raw = _split_entries(b, params, 1)[0]
    try:
        return ExponentMatrix(tuple(tuple(r) for r in raw), params.order)
    except ValueError as e:
        raise FramingError(f"Invalid exponent matrix: {e}") from e


def _decode_strict_groups(b: bytes, params: Params, count: int) -> List[GroupMatrix]:
    matrices, valid = decode_matrices(b, params, count)
    if not valid:
        raise FramingError("Public key carries group entries outside [1, p-1]")
    return matrices


def _read_header(b: bytes, params: Params = None) -> Params:
    if not b:
        raise FramingError("Empty buffer")
    try:
        found = get_profile_by_id(b[0])
    except ValueError as e:
        raise FramingError(str(e)) from e
    if params is not None and found.profile_id != params.profile_id:
        raise FramingError(f"Profile mismatch: expected {params.name}, found {found.name}")
    return found


# ============================================================================
# KEM KEYS AND CIPHERTEXTS
# ============================================================================

def pk_length(params: Params) -> int:
    block = params.n * params.n * params.entry_bytes
    return 1 + block * (3 + params.R)


def sk_length(params: Params) -> int:
    return 1 + SEED_BYTES + Z_BYTES


def ct_length(params: Params) -> int:
    return matrices_length(params) + params.kappa_bytes + TAG_BYTES


def encode_pk(pk) -> bytes:
    params = pk.params
    width = params.entry_bytes
    return (
        bytes([params.profile_id])
        + _encode_rows(pk.A.entries, width)
        + _encode_rows(pk.B.entries, width)
        + _encode_rows(pk.W.entries, width)
        + encode_matrices(pk.TB)
    )


def decode_pk(b: bytes, params: Params = None):
    from .kem import KemPublicKey

    params = _read_header(b, params)
    if len(b) != pk_length(params):
        raise FramingError(f"Public key must be {pk_length(params)} bytes, got {len(b)}")

    block = params.n * params.n * params.entry_bytes
    body = b[1:]
    A = _decode_exponents(body[:block], params)
    B = _decode_exponents(body[block:2 * block], params)
    W = _decode_strict_groups(body[2 * block:3 * block], params, 1)[0]
    TB = _decode_strict_groups(body[3 * block:], params, params.R)
    if not A.is_left_null() or not B.is_right_null():
        raise FramingError("Public bases are not singular")
    return KemPublicKey(params=params, A=A, B=B, W=W, TB=tuple(TB))


def encode_sk(sk) -> bytes:
    return bytes([sk.pk.params.profile_id]) + sk.seed + sk.z


def decode_sk(b: bytes, params: Params = None):
    from dataclasses import replace

    from .kem import keygen

    params = _read_header(b, params)
    if len(b) != sk_length(params):
        raise FramingError(f"Secret key must be {sk_length(params)} bytes, got {len(b)}")
    seed, z = b[1:1 + SEED_BYTES], b[1 + SEED_BYTES:]
    _, sk = keygen(seed, params)
    return replace(sk, z=z)


def encode_ct(ct: Ciphertext) -> bytes:
    return ct.to_bytes()


def decode_ct(b: bytes, params: Params) -> Ciphertext:
    if len(b) != ct_length(params):
        raise FramingError(f"Ciphertext must be {ct_length(params)} bytes, got {len(b)}")
    split_a = matrices_length(params)
    split_b = split_a + params.kappa_bytes
    return Ciphertext(ta_enc=b[:split_a], c_mask=b[split_a:split_b], tag=b[split_b:])


# ============================================================================
# SIGNATURES AND DSA KEYS
# ============================================================================

def encode_sig(sig: Signature) -> bytes:
    if len(sig.t) != TAG_BYTES:
        raise FramingError(f"Tag must be {TAG_BYTES} bytes, got {len(sig.t)}")
    return len(sig.sigma0).to_bytes(SIGMA0_PREFIX_BYTES, "big") + sig.sigma0 + sig.t


def split_sig(b: bytes, sigma0_length: int) -> Tuple[Signature, bool]:
    """Split a signature of the right total length; the flag reports whether its prefix matched"""
    expected = SIGMA0_PREFIX_BYTES + sigma0_length + TAG_BYTES
    if len(b) != expected:
        raise FramingError(f"Signature must be {expected} bytes, got {len(b)}")
    declared = int.from_bytes(b[:SIGMA0_PREFIX_BYTES], "big")
    body = b[SIGMA0_PREFIX_BYTES:]
    return Signature(sigma0=body[:sigma0_length], t=body[sigma0_length:]), declared == sigma0_length


def decode_sig(b: bytes, sigma0_length: int) -> Signature:
    sig, prefix_ok = split_sig(b, sigma0_length)
    if not prefix_ok:
        declared = int.from_bytes(b[:SIGMA0_PREFIX_BYTES], "big")
        raise FramingError(f"sigma_0 length prefix {declared} != {sigma0_length}")
    return sig


def encode_ds_pk(pk_ds) -> bytes:
    return bytes([SCHEME_IDS[pk_ds.scheme.name]]) + pk_ds.ipk


def decode_ds_pk(b: bytes):
    from .dsa import DsPublicKey, get_inner_scheme

    scheme_name = _scheme_name(b)
    ipk = b[1:]
    try:
        scheme = get_inner_scheme(scheme_name, height=ipk[0] if ipk else None)
    except ValueError as e:
        raise FramingError(str(e)) from e
    if len(ipk) != scheme.public_key_length:
        raise FramingError(f"Inner public key must be {scheme.public_key_length} bytes, got {len(ipk)}")
    return DsPublicKey(scheme=scheme, ipk=ipk)


def encode_ds_sk(sk_ds) -> bytes:
    return (
        bytes([SCHEME_IDS[sk_ds.pk.scheme.name], sk_ds.pk.scheme.height])
        + sk_ds.seed
        + sk_ds.z
    )


def decode_ds_sk(b: bytes):
    from dataclasses import replace

    from .dsa import keygen_ds

    scheme_name = _scheme_name(b)
    if len(b) != 2 + SEED_BYTES + Z_BYTES:
        raise FramingError(f"DSA secret key must be {2 + SEED_BYTES + Z_BYTES} bytes, got {len(b)}")
    height = b[1]
    seed, z = b[2:2 + SEED_BYTES], b[2 + SEED_BYTES:]
    try:
        _, sk_ds = keygen_ds(seed, scheme=scheme_name, height=height)
    except ValueError as e:
        raise FramingError(str(e)) from e
    return replace(sk_ds, z=z)


def _scheme_name(b: bytes) -> str:
    if not b:
        raise FramingError("Empty buffer")
    for name, scheme_id in SCHEME_IDS.items():
        if scheme_id == b[0]:
            return name
    raise FramingError(f"Unknown inner scheme id: {b[0]}")
