"""
RDMPF - Rank-Deficient Matrix Power Function toolkit
Post-quantum KEM and signatures over GF(p) matrix powers

Modules:
1. params    - Parameter profiles (toy-997, l5-n7, micro)
2. algebra   - Exponent/group matrices, RDMPF, commuting polynomials
3. hashing   - Domain-separated SHAKE256 (H1, H2, KDF, XOF streams)
4. codec     - Bit-exact wire formats
5. kem       - FO-RDMPF-KEM with implicit rejection
6. dsa       - FO-DS-IR wrapper over an inner signature scheme
7. security  - Brute-force estimator and micro-scale recovery oracle
8. bench     - Timing tables, CSV and the decaps timing check
9. kat       - Known-answer test files
"""

from .codec import Ciphertext, Signature
from .dsa import (
    DsPublicKey,
    DsSecretKey,
    VerifierContext,
    VerifyOutcome,
    get_inner_scheme,
    keygen_ds,
    sign_ds,
    verify_ds,
)
from .errors import (
    DimensionError,
    FramingError,
    ParameterError,
    RdmpfError,
    SearchSpaceError,
    UnknownLabelError,
    ZeroPolynomialError,
)
from .kem import KemPublicKey, KemSecretKey, decaps, encaps, encaps_random, keygen, setup
from .params import PROFILES, Params, get_profile

__version__ = "1.0.0"

__all__ = [
    "Params",
    "PROFILES",
    "get_profile",
    # KEM
    "KemPublicKey",
    "KemSecretKey",
    "Ciphertext",
    "setup",
    "keygen",
    "encaps",
    "encaps_random",
    "decaps",
    # DSA
    "DsPublicKey",
    "DsSecretKey",
    "Signature",
    "VerifierContext",
    "VerifyOutcome",
    "get_inner_scheme",
    "keygen_ds",
    "sign_ds",
    "verify_ds",
    # errors
    "RdmpfError",
    "ParameterError",
    "DimensionError",
    "ZeroPolynomialError",
    "UnknownLabelError",
    "FramingError",
    "SearchSpaceError",
]
