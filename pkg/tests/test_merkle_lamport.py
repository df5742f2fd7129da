import pytest

from rdmpf import config
from rdmpf.dsa import get_inner_scheme
from rdmpf.errors import ParameterError
from rdmpf.merkle_lamport import DIGEST_BITS, HASH_BYTES, INDEX_BYTES, MerkleLamport

SEED = b"\x42" * 32
R = bytes(32)


@pytest.fixture(scope="module")
def scheme():
    return MerkleLamport(height=2)


@pytest.fixture(scope="module")
def keypair(scheme):
    return scheme.inner_keygen(SEED)


def test_sigma0_length_is_fixed(scheme):
    assert scheme.sigma0_length == INDEX_BYTES + 2 * DIGEST_BITS * HASH_BYTES + 2 * HASH_BYTES
    assert scheme.public_key_length == 33


def test_roundtrip(scheme, keypair):
    ipk, isk = keypair
    sigma0 = scheme.inner_sign(isk, b"msg", R)
    assert len(sigma0) == scheme.sigma0_length
    assert scheme.inner_verify(ipk, b"msg", sigma0)


def test_every_leaf_verifies(scheme, keypair):
    ipk, isk = keypair
    for leaf in range(4):
        r = leaf.to_bytes(32, "big")
        sigma0 = scheme.inner_sign(isk, b"msg", r)
        assert int.from_bytes(sigma0[:INDEX_BYTES], "big") == leaf
        assert scheme.inner_verify(ipk, b"msg", sigma0)


def test_flipped_preimage_rejects(scheme, keypair):
    ipk, isk = keypair
    sigma0 = bytearray(scheme.inner_sign(isk, b"msg", R))
    sigma0[INDEX_BYTES + 5] ^= 0x01
    assert not scheme.inner_verify(ipk, b"msg", bytes(sigma0))


def test_wrong_message_rejects(scheme, keypair):
    ipk, isk = keypair
    assert not scheme.inner_verify(ipk, b"other", scheme.inner_sign(isk, b"msg", R))


def test_out_of_range_index_rejects(scheme, keypair):
    ipk, isk = keypair
    sigma0 = scheme.inner_sign(isk, b"msg", R)
    forged = (4).to_bytes(INDEX_BYTES, "big") + sigma0[INDEX_BYTES:]
    assert not scheme.inner_verify(ipk, b"msg", forged)


def test_height_mismatch_rejects(keypair):
    ipk, isk = keypair
    taller = MerkleLamport(height=3)
    assert not taller.inner_verify(ipk, b"msg", bytes(taller.sigma0_length))


def test_deterministic_keygen(scheme, keypair):
    assert scheme.inner_keygen(SEED)[0] == keypair[0]


@pytest.mark.parametrize("height", [0, config.MAX_MERKLE_HEIGHT + 1])
def test_height_bounds(height):
    with pytest.raises(ParameterError):
        MerkleLamport(height)


def test_factory():
    assert get_inner_scheme("merkle-lamport", 4) == MerkleLamport(4)
    assert get_inner_scheme("Merkle-Lamport", 4).height == 4
