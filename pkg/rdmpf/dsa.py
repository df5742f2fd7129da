"""
FO-DS-IR - deterministic signatures with implicit rejection
===========================================================

Wraps any inner signature scheme Sign(sk, M; r):

    Sign:    r = H1('r' || M || pk); sigma_0 = Sign(sk, M; r);
             t = H2('t' || sigma_0 || M || pk); sigma = (sigma_0, t)
    Verify:  accept iff the inner check passes and t matches; otherwise
             reject* carrying the placeholder H2('z' || z || sigma_0 || M).

The inner check and the tag recomputation both run on every call.
"""

import logging
import secrets
from dataclasses import dataclass, field
from typing import Any, Optional, Tuple, Union

from . import codec, config
from .codec import Signature
from .consttime import ct_equal
from .errors import FramingError, ParameterError
from .hashing import SECRET_BITS, h1, h2, xof

logger = logging.getLogger(__name__)

SEED_BYTES = codec.SEED_BYTES


class InnerSignatureScheme:
    """
    Base class for the inner scheme Pi_SIG.

    Subclasses fix public_key_length and sigma0_length and implement the
    three operations; inner_sign must be deterministic in (isk, M, r).
    """

    name = "abstract"
    height = 0
    public_key_length = 0
    sigma0_length = 0

    def __eq__(self, other):
        if not isinstance(other, InnerSignatureScheme):
            return NotImplemented
        return (self.name, self.height) == (other.name, other.height)

    def __hash__(self):
        return hash((self.name, self.height))

    def inner_keygen(self, seed: bytes) -> Tuple[bytes, Any]:
        raise NotImplementedError

    def inner_sign(self, isk: Any, message: bytes, r: bytes) -> bytes:
        raise NotImplementedError

    def inner_verify(self, ipk: bytes, message: bytes, sigma0: bytes) -> bool:
        raise NotImplementedError


def get_inner_scheme(name: str = "merkle-lamport", height: Optional[int] = None) -> InnerSignatureScheme:
    """Factory for the registered inner schemes"""
    if name.lower() == "merkle-lamport":
        from .merkle_lamport import MerkleLamport
        return MerkleLamport(height if height is not None else config.MERKLE_HEIGHT)
    raise ValueError(f"Unknown inner scheme: {name}. Use 'merkle-lamport'")


@dataclass(frozen=True)
class DsPublicKey:
    scheme: InnerSignatureScheme
    ipk: bytes

    @property
    def encoded(self) -> bytes:
        return codec.encode_ds_pk(self)


@dataclass(frozen=True)
class DsSecretKey:
    seed: bytes = field(repr=False)
    isk: Any = field(repr=False)
    z: bytes = field(repr=False)
    pk: DsPublicKey


@dataclass(frozen=True)
class VerifyOutcome:
    """accept, or reject* with a tag-length pseudorandom placeholder"""

    accepted: bool
    placeholder: Optional[bytes] = None

    @property
    def label(self) -> str:
        return "accept" if self.accepted else "reject*"


@dataclass(frozen=True)
class VerifierContext:
    """Holder of the z used to derive reject placeholders"""

    z: bytes = field(repr=False)

    @classmethod
    def from_secret(cls, sk_ds: DsSecretKey) -> "VerifierContext":
        return cls(z=sk_ds.z)

    @classmethod
    def local(cls, seed: Optional[bytes] = None) -> "VerifierContext":
        """Verifier without the key pair's z: z' = xof('zsec', local seed)"""
        seed = secrets.token_bytes(SEED_BYTES) if seed is None else seed
        return cls(z=xof(b"zsec", seed, SECRET_BITS))


def keygen_ds(seed: bytes, scheme: Union[str, InnerSignatureScheme] = "merkle-lamport",
              height: Optional[int] = None) -> Tuple[DsPublicKey, DsSecretKey]:
    """Inner key pair plus the fixed secret z, all deterministic in seed"""
    if len(seed) != SEED_BYTES:
        raise ParameterError(f"Seed must be {SEED_BYTES} bytes, got {len(seed)}")
    if isinstance(scheme, str):
        scheme = get_inner_scheme(scheme, height)

    ipk, isk = scheme.inner_keygen(seed)
    pk = DsPublicKey(scheme=scheme, ipk=ipk)
    z = xof(b"zsec", seed, SECRET_BITS)
    logger.debug("Generated %r key pair", scheme)
    return pk, DsSecretKey(seed=seed, isk=isk, z=z, pk=pk)


def sign_ds(sk_ds: DsSecretKey, message: bytes) -> Signature:
    """Deterministic signature (sigma_0, t)"""
    pk = sk_ds.pk
    encoded = pk.encoded
    r = h1(message + encoded, b"r")
    sigma0 = pk.scheme.inner_sign(sk_ds.isk, message, r)
    t = h2(sigma0 + message + encoded, b"t")
    return Signature(sigma0=sigma0, t=t)


def _as_signature(sig: Union[Signature, bytes], scheme: InnerSignatureScheme) -> Tuple[Signature, int]:
    if isinstance(sig, (bytes, bytearray)):
        parsed, prefix_ok = codec.split_sig(bytes(sig), scheme.sigma0_length)
        return parsed, int(prefix_ok)
    if len(sig.sigma0) != scheme.sigma0_length or len(sig.t) != codec.TAG_BYTES:
        raise FramingError(
            f"Signature fields must be {scheme.sigma0_length} + {codec.TAG_BYTES} bytes"
        )
    return sig, 1


def verify_ds(pk_ds: DsPublicKey, message: bytes, sig: Union[Signature, bytes],
              context: VerifierContext) -> VerifyOutcome:
    """accept, or reject* with a deterministic placeholder; never raises on bad signatures"""
    # a wrong sigma_0 prefix at the right total length is a tamper, not a framing error
    sig, prefix_ok = _as_signature(sig, pk_ds.scheme)
    encoded = pk_ds.encoded

    valid = prefix_ok & int(bool(pk_ds.scheme.inner_verify(pk_ds.ipk, message, sig.sigma0)))
    t_prime = h2(sig.sigma0 + message + encoded, b"t")
    placeholder = h2(context.z + sig.sigma0 + message, b"z")

    if valid & ct_equal(t_prime, sig.t):
        return VerifyOutcome(accepted=True)
    return VerifyOutcome(accepted=False, placeholder=placeholder)
