"""
Branch-free helpers for secret-dependent decisions.

CPython gives no hardware-level constant-time guarantee; these helpers only
remove the algorithmic channels (early exits and data-dependent branches).
"""

import hmac


def ct_equal(a: bytes, b: bytes) -> int:
    """1 if a == b else 0, without early exit"""
    return int(hmac.compare_digest(a, b))


def ct_select(flag: int, if_one: bytes, if_zero: bytes) -> bytes:
    """Pick if_one when flag == 1 and if_zero when flag == 0, byte-wise masked"""
    if len(if_one) != len(if_zero):
        raise ValueError("ct_select operands must have equal length")
    mask = -(flag & 1) & 0xFF
    inv = mask ^ 0xFF
    return bytes((x & mask) | (y & inv) for x, y in zip(if_one, if_zero))


def xor_bytes(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b, strict=True))
