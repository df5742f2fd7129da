"""
Error types for the RDMPF toolkit.

Semantically invalid ciphertexts and signatures never raise: they go through
implicit rejection. Only malformed inputs (wrong lengths, bad parameters,
unknown labels) end up here.
"""


class RdmpfError(Exception):
    """Base class for every error raised by the toolkit"""


class ParameterError(RdmpfError, ValueError):
    """Invalid parameter profile or argument outside its domain"""


class DimensionError(RdmpfError, ValueError):
    """Matrix shapes or moduli do not line up"""


class ZeroPolynomialError(RdmpfError, ValueError):
    """All-zero coefficient vector; the caller has to resample"""


class UnknownLabelError(RdmpfError, ValueError):
    """Hash domain label outside the registry"""


class FramingError(RdmpfError, ValueError):
    """Wire object with the wrong length, header or profile"""


class SearchSpaceError(RdmpfError):
    """Brute-force search space above the desk-scale guard"""
