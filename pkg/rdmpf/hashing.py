"""
Domain-separated hashing
========================

Every hash in the toolkit is one SHAKE256 call over the framed input

    len(label) || label || data

with a one-byte length prefix, so no two labels can collide by concatenation.
H1, H2 and the KDF are fixed-length views of that single XOF; XofReader turns
it into an unbounded stream for the samplers.
"""

import hashlib
from typing import Dict, Tuple

from .errors import UnknownLabelError

# Closed registry: label -> meaning
DOMAIN_LABELS: Dict[bytes, str] = {
    b"r": "DSA signing randomness (H1)",
    b"t": "DSA authentication tag (H2)",
    b"z": "DSA reject placeholder (H2)",
    b"XY": "KEM message to (X_r, Y_r) coefficients",
    b"mask": "KEM message mask (H1)",
    b"tag": "KEM ciphertext tag (H2)",
    b"key": "KEM key derivation (KDF)",
    b"rej": "KEM implicit-rejection secret (H1)",
    b"pkh": "Merkle leaf: hash of a one-time public key",
    b"Wgen": "KEM public group matrix W",
    b"Agen": "KEM left singular base A",
    b"Bgen": "KEM right singular base B",
    b"UVgen": "KEM secret (U_r, V_r) coefficients",
    b"zsec": "fallback secret z",
    b"otsk": "one-time signature secret expansion",
    b"otsh": "one-time signature public hash",
    b"node": "Merkle interior node",
    b"msgd": "message digest signed by a one-time key",
    b"kat": "known-answer-test seed derivation",
}

# Every protocol call-site and the label it hashes under
CALL_SITES: Dict[str, bytes] = {
    "kem.setup.A": b"Agen",
    "kem.setup.B": b"Bgen",
    "kem.setup.W": b"Wgen",
    "kem.keygen.UV": b"UVgen",
    "kem.keygen.z": b"zsec",
    "kem.map_to_xy": b"XY",
    "kem.kdf.Z": b"key",
    "kem.kdf.K": b"key",
    "kem.mask": b"mask",
    "kem.tag": b"tag",
    "kem.reject.rho": b"rej",
    "dsa.keygen.z": b"zsec",
    "dsa.sign.r": b"r",
    "dsa.tag": b"t",
    "dsa.reject.placeholder": b"z",
    "merkle.secret": b"otsk",
    "merkle.public": b"otsh",
    "merkle.leaf": b"pkh",
    "merkle.node": b"node",
    "merkle.digest": b"msgd",
    "kat.seed": b"kat",
}

H1_LABELS: Tuple[bytes, ...] = (b"mask", b"r", b"rej")
H2_LABELS: Tuple[bytes, ...] = (b"tag", b"t", b"z")

RHO_BITS = 256
TAG_BITS = 256
SECRET_BITS = 256


def _as_label(label) -> bytes:
    if isinstance(label, str):
        label = label.encode("ascii")
    if label not in DOMAIN_LABELS:
        raise UnknownLabelError(f"Unregistered domain label: {label!r}")
    return label


def frame(label, data: bytes) -> bytes:
    """Exact byte string fed to SHAKE256 for (label, data)"""
    label = _as_label(label)
    return bytes([len(label)]) + label + data


def xof(label, data: bytes, out_bits: int) -> bytes:
    """SHAKE256 over the framed input, out_bits / 8 bytes of output"""
    if out_bits <= 0 or out_bits % 8:
        raise ValueError(f"out_bits must be a positive multiple of 8, got {out_bits}")
    return hashlib.shake_256(frame(label, data)).digest(out_bits // 8)


def h1(data: bytes, label=b"mask", out_bits: int = RHO_BITS) -> bytes:
    """H1: randomness / mask derivation (mask family of labels)"""
    if _as_label(label) not in H1_LABELS:
        raise UnknownLabelError(f"Label {label!r} is not in the H1 family")
    return xof(label, data, max(out_bits, RHO_BITS))


def h2(data: bytes, label=b"tag") -> bytes:
    """H2: tags and reject placeholders, always TAG_BITS long"""
    if _as_label(label) not in H2_LABELS:
        raise UnknownLabelError(f"Label {label!r} is not in the H2 family")
    return xof(label, data, TAG_BITS)


def kdf(data: bytes, kappa: int) -> bytes:
    """Key derivation, kappa bits"""
    return xof(b"key", data, kappa)


class XofReader:
    """
    Deterministic, unbounded byte stream for one (label, data) pair.

    SHAKE256 output is prefix-consistent, so growing the squeeze length
    only appends bytes; the stream never changes under the caller.
    """

    def __init__(self, label, data: bytes, initial: int = 136):
        self._input = frame(label, data)
        self._buffer = hashlib.shake_256(self._input).digest(initial)
        self._pos = 0

    def read(self, size: int) -> bytes:
        end = self._pos + size
        if end > len(self._buffer):
            length = len(self._buffer)
            while length < end:
                length *= 2
            self._buffer = hashlib.shake_256(self._input).digest(length)
        chunk = self._buffer[self._pos:end]
        self._pos = end
        return chunk

    def uniform(self, bound: int) -> int:
        """Uniform integer in [0, bound) by masked rejection sampling"""
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        width = (bits + 7) // 8
        mask = (1 << bits) - 1
        while True:
            value = int.from_bytes(self.read(width), "big") & mask
            if value < bound:
                return value
