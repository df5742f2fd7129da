"""
Merkle-Lamport inner signature scheme
=====================================

Lamport one-time keys at the 2^h leaves of a Merkle tree; the root is the
public key. Every hash comes from the domain-separated XOF.

sigma_0 = leaf index (4) || 256 revealed preimages || 256 complementary public
          hashes || authentication path (h nodes)

The complementary hashes let the verifier rebuild the full one-time public key
and so the leaf. The leaf index is r mod 2^h, which keeps signing stateless;
two messages can land on the same leaf, which is acceptable for tests and
demos only.
"""

import hmac
from dataclasses import dataclass, field
from typing import List, Tuple

from . import config
from .dsa import InnerSignatureScheme
from .errors import ParameterError
from .hashing import xof

HASH_BYTES = 32
DIGEST_BITS = 256
INDEX_BYTES = 4


def _h(label: bytes, data: bytes) -> bytes:
    return xof(label, data, HASH_BYTES * 8)


def _bits(digest: bytes) -> List[int]:
    return [(digest[i // 8] >> (7 - i % 8)) & 1 for i in range(DIGEST_BITS)]


@dataclass(frozen=True)
class MerkleSecretKey:
    seed: bytes = field(repr=False)
    levels: Tuple[Tuple[bytes, ...], ...] = field(repr=False)

    @property
    def root(self) -> bytes:
        return self.levels[-1][0]


class MerkleLamport(InnerSignatureScheme):
    """Hash-based inner scheme with a bounded number (2^h) of leaves"""

    name = "merkle-lamport"

    def __init__(self, height: int = 10):
        if not 1 <= height <= config.MAX_MERKLE_HEIGHT:
            raise ParameterError(
                f"Merkle height must be in [1, {config.MAX_MERKLE_HEIGHT}], got {height}")
        self.height = height
        self.public_key_length = 1 + HASH_BYTES
        self.sigma0_length = INDEX_BYTES + 2 * DIGEST_BITS * HASH_BYTES + height * HASH_BYTES

    def __repr__(self):
        return f"MerkleLamport(height={self.height})"

    # ------------------------------------------------------------------
    # one-time keys
    # ------------------------------------------------------------------

    def _leaf_secrets(self, seed: bytes, index: int) -> List[bytes]:
        """512 preimages: position b * 256 + i signs bit value b at index i"""
        blob = xof(b"otsk", seed + index.to_bytes(INDEX_BYTES, "big"),
                   2 * DIGEST_BITS * HASH_BYTES * 8)
        return [blob[k:k + HASH_BYTES] for k in range(0, len(blob), HASH_BYTES)]

    @staticmethod
    def _leaf_from_publics(publics: List[bytes]) -> bytes:
        return _h(b"pkh", b"".join(publics))

    def _leaf(self, seed: bytes, index: int) -> bytes:
        return self._leaf_from_publics([_h(b"otsh", s) for s in self._leaf_secrets(seed, index)])

    # ------------------------------------------------------------------
    # scheme interface
    # ------------------------------------------------------------------

    def inner_keygen(self, seed: bytes) -> Tuple[bytes, MerkleSecretKey]:
        level = tuple(self._leaf(seed, i) for i in range(1 << self.height))
        levels = [level]
        while len(level) > 1:
            level = tuple(
                _h(b"node", level[k] + level[k + 1]) for k in range(0, len(level), 2)
            )
            levels.append(level)
        isk = MerkleSecretKey(seed=seed, levels=tuple(levels))
        return bytes([self.height]) + isk.root, isk

    def _digest(self, root: bytes, message: bytes) -> List[int]:
        return _bits(_h(b"msgd", root + message))

    def inner_sign(self, isk: MerkleSecretKey, message: bytes, r: bytes) -> bytes:
        index = int.from_bytes(r, "big") % (1 << self.height)
        leaf_secrets = self._leaf_secrets(isk.seed, index)

        revealed, complement = [], []
        for i, bit in enumerate(self._digest(isk.root, message)):
            revealed.append(leaf_secrets[bit * DIGEST_BITS + i])
            complement.append(_h(b"otsh", leaf_secrets[(1 - bit) * DIGEST_BITS + i]))

        path = [isk.levels[lvl][(index >> lvl) ^ 1] for lvl in range(self.height)]
        return (
            index.to_bytes(INDEX_BYTES, "big")
            + b"".join(revealed)
            + b"".join(complement)
            + b"".join(path)
        )

    def inner_verify(self, ipk: bytes, message: bytes, sigma0: bytes) -> bool:
        if len(ipk) != self.public_key_length or ipk[0] != self.height:
            return False
        if len(sigma0) != self.sigma0_length:
            return False

        root = ipk[1:]
        index = int.from_bytes(sigma0[:INDEX_BYTES], "big")
        in_range = index < (1 << self.height)

        chunks = [
            sigma0[k:k + HASH_BYTES]
            for k in range(INDEX_BYTES, len(sigma0), HASH_BYTES)
        ]
        revealed = chunks[:DIGEST_BITS]
        complement = chunks[DIGEST_BITS:2 * DIGEST_BITS]
        path = chunks[2 * DIGEST_BITS:]

        publics = [b""] * (2 * DIGEST_BITS)
        for i, bit in enumerate(self._digest(root, message)):
            publics[bit * DIGEST_BITS + i] = _h(b"otsh", revealed[i])
            publics[(1 - bit) * DIGEST_BITS + i] = complement[i]

        node = self._leaf_from_publics(publics)
        for lvl, sibling in enumerate(path):
            if (index >> lvl) & 1:
                node = _h(b"node", sibling + node)
            else:
                node = _h(b"node", node + sibling)

        return hmac.compare_digest(node, root) and in_range
