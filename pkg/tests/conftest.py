"""Shared fixtures: profiles, pinned seeds and pre-built key pairs"""

import pytest

from rdmpf import dsa, kem
from rdmpf.params import Params, get_profile

TOY_SEED = bytes(range(32))
DS_SEED = bytes(range(32, 64))
DS_HEIGHT = 3


def make_params(p: int, n: int, d: int = 2, exp_max: int = 5, sigma: int = 3) -> Params:
    """Ad-hoc profile for algebra tests (not registered)"""
    return Params(
        name=f"test-{p}-{n}", profile_id=0xF0,
        p=p, n=n, sigma=sigma, R=1, kappa=64, d=min(d, n), exp_max=exp_max,
    )


@pytest.fixture(scope="session")
def toy():
    return get_profile("toy-997")


@pytest.fixture(scope="session")
def micro():
    return get_profile("micro")


@pytest.fixture(scope="session")
def l5():
    return get_profile("l5-n7")


@pytest.fixture(scope="session")
def toy_keys(toy):
    return kem.keygen(TOY_SEED, toy)


@pytest.fixture(scope="session")
def ds_keys():
    return dsa.keygen_ds(DS_SEED, height=DS_HEIGHT)
