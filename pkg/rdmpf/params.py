"""
Parameter profiles for the RDMPF primitive and the protocols built on it.

Three named profiles are registered:
- toy-997: the small demo profile (GF(997), dim 5, sigma 3, kappa 64)
- l5-n7:   default production profile (largest 32-bit prime, dim 7)
- micro:   tiny profile for the brute-force oracle and exhaustive tests
"""

from typing import Dict

from pydantic import BaseModel, ConfigDict, model_validator

# Deterministic Miller-Rabin witnesses, exact for every n < 3.3e24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for profile-sized moduli"""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Params(BaseModel):
    """
    Public parameter profile.

    Fields:
        p:       prime modulus of the entry field GF(p)
        n:       matrix dimension (rows = cols)
        sigma:   public exponent multiplier
        R:       number of independent rounds
        kappa:   message / shared-secret length in bits
        d:       degree of the commuting-matrix polynomials
        exp_max: inclusive bound on sampled polynomial coefficients
    """

    model_config = ConfigDict(frozen=True)

    name: str
    profile_id: int
    p: int
    n: int
    sigma: int
    R: int
    kappa: int
    d: int
    exp_max: int

    @model_validator(mode="after")
    def _check_invariants(self) -> "Params":
        if not 0 <= self.profile_id <= 0xFF:
            raise ValueError(f"profile_id must fit in one byte, got {self.profile_id}")
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.p >= 1 << 32:
            raise ValueError(f"p must fit in 32 bits, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.R < 1:
            raise ValueError(f"R must be >= 1, got {self.R}")
        if not 1 <= self.sigma <= self.p - 2:
            raise ValueError(f"sigma must be in [1, p-2], got {self.sigma}")
        if self.kappa <= 0 or self.kappa % 8:
            raise ValueError(f"kappa must be a positive multiple of 8, got {self.kappa}")
        if not 1 <= self.d <= self.n:
            raise ValueError(f"d must be in [1, n], got {self.d}")
        if not 1 <= self.exp_max <= self.p - 2:
            raise ValueError(f"exp_max must be in [1, p-2], got {self.exp_max}")
        return self

    @property
    def order(self) -> int:
        """Modulus of the exponent ring Z_{p-1}"""
        return self.p - 1

    @property
    def entry_bytes(self) -> int:
        """Bytes per serialized matrix entry: ceil(bits(p) / 8)"""
        return (self.p.bit_length() + 7) // 8

    @property
    def kappa_bytes(self) -> int:
        return self.kappa // 8


PROFILES: Dict[str, Params] = {
    "toy-997": Params(
        name="toy-997", profile_id=1,
        p=997, n=5, sigma=3, R=1, kappa=64, d=3, exp_max=9,
    ),
    "l5-n7": Params(
        name="l5-n7", profile_id=2,
        p=(1 << 32) - 5, n=7, sigma=3, R=1, kappa=256, d=3, exp_max=(1 << 16) - 1,
    ),
    "micro": Params(
        name="micro", profile_id=3,
        p=11, n=2, sigma=3, R=1, kappa=64, d=1, exp_max=2,
    ),
}


def get_profile(name: str) -> Params:
    """Return a registered profile by name"""
    if name.lower() not in PROFILES:
        raise ValueError(f"Unknown profile: {name}. Use one of {', '.join(PROFILES)}")
    return PROFILES[name.lower()]


def get_profile_by_id(profile_id: int) -> Params:
    """Return the registered profile carrying a wire header id"""
    for params in PROFILES.values():
        if params.profile_id == profile_id:
            return params
    raise ValueError(f"Unknown profile id: {profile_id}")
