"""
RDMPF algebra
=============

Arithmetic over GF(p) (matrix entries) and Z_{p-1} (exponents), the matrix
power function with the sigma variant, and the rank-deficient samplers.

    Q[i, j] = prod_{K, L} W[K, L] ^ (sigma * X[i, K] * Y[L, j] mod (p - 1))  mod p

Exponent matrices built by gen_singular_base carry the public null vector
1 = (1, ..., 1): 1 . A = 0 for left bases and B . 1^T = 0 for right bases
(mod p - 1). Zero-constant-term polynomials in a base keep that null vector.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import DimensionError, ZeroPolynomialError
from .hashing import XofReader
from .params import Params

Rows = Tuple[Tuple[int, ...], ...]

LEFT = "left"
RIGHT = "right"


def _as_rows(entries: Sequence[Sequence[int]]) -> Rows:
    rows = tuple(tuple(int(v) for v in row) for row in entries)
    if not rows or any(len(row) != len(rows) for row in rows):
        raise DimensionError(f"Matrix must be square and non-empty, got {len(rows)} rows")
    return rows


@dataclass(frozen=True)
class ExponentMatrix:
    """n x n matrix over the exponent ring Z_{p-1}; entries in [0, p-2]"""

    entries: Rows
    modulus: int

    def __post_init__(self):
        rows = _as_rows(self.entries)
        if any(not 0 <= v < self.modulus for row in rows for v in row):
            raise ValueError(f"Exponent entries must lie in [0, {self.modulus - 1}]")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def reduce(cls, entries: Sequence[Sequence[int]], modulus: int) -> "ExponentMatrix":
        return cls(tuple(tuple(v % modulus for v in row) for row in entries), modulus)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "ExponentMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), modulus)

    @classmethod
    def zeros(cls, n: int, modulus: int) -> "ExponentMatrix":
        return cls(tuple((0,) * n for _ in range(n)), modulus)

    def column_sums(self) -> Tuple[int, ...]:
        """1 . M (mod p-1): zero for left-singular matrices"""
        return tuple(sum(col) % self.modulus for col in zip(*self.entries))

    def row_sums(self) -> Tuple[int, ...]:
        """M . 1^T (mod p-1): zero for right-singular matrices"""
        return tuple(sum(row) % self.modulus for row in self.entries)

    def is_left_null(self) -> bool:
        return not any(self.column_sums())

    def is_right_null(self) -> bool:
        return not any(self.row_sums())


@dataclass(frozen=True)
class GroupMatrix:
    """n x n matrix with entries in [1, p-1] of GF(p)"""

    entries: Rows
    p: int

    def __post_init__(self):
        rows = _as_rows(self.entries)
        if any(not 1 <= v < self.p for row in rows for v in row):
            raise ValueError(f"Group entries must lie in [1, {self.p - 1}]")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def ones(cls, n: int, p: int) -> "GroupMatrix":
        return cls(tuple((1,) * n for _ in range(n)), p)


def mod_pow(base: int, exp: int, p: int) -> int:
    """base^exp mod p via the built-in three-argument pow; 0^0 = 1"""
    if exp < 0:
        raise ValueError(f"Exponent must be non-negative, got {exp}")
    return pow(base, exp, p)


def mat_mul_exp(a: ExponentMatrix, b: ExponentMatrix) -> ExponentMatrix:
    """Matrix product over Z_{p-1}"""
    if a.dim != b.dim or a.modulus != b.modulus:
        raise DimensionError(
            f"Cannot multiply {a.dim}x{a.dim} (mod {a.modulus}) "
            f"by {b.dim}x{b.dim} (mod {b.modulus})"
        )
    m = a.modulus
    cols = tuple(zip(*b.entries))
    return ExponentMatrix(
        tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % m for col in cols)
            for row in a.entries
        ),
        m,
    )


def _mat_add_scaled(acc: Rows, c: int, m: ExponentMatrix) -> Rows:
    mod = m.modulus
    return tuple(
        tuple((u + c * v) % mod for u, v in zip(acc_row, m_row))
        for acc_row, m_row in zip(acc, m.entries)
    )


def rdmpf(x: ExponentMatrix, w: GroupMatrix, y: ExponentMatrix, params: Params) -> GroupMatrix:
    """
    Rank-deficient matrix power function RDMPF(X, W, Y).

    Runs the four nested loops literally: every output entry is the product
    over (K, L) of W[K, L] raised to sigma * X[i, K] * Y[L, j] reduced mod p-1.
    """
    n, p, order = params.n, params.p, params.order
    for name, dim in (("X", x.dim), ("W", w.dim), ("Y", y.dim)):
        if dim != n:
            raise DimensionError(f"{name} is {dim}x{dim}, profile {params.name} needs {n}x{n}")
    if x.modulus != order or y.modulus != order or w.p != p:
        raise DimensionError(f"Matrices do not belong to profile {params.name}")

    sigma = params.sigma
    w_rows = w.entries
    y_cols = tuple(zip(*y.entries))

    out = []
    for i in range(n):
        sx = [sigma * v % order for v in x.entries[i]]
        row = []
        for j in range(n):
            yj = y_cols[j]
            pr = 1
            for k in range(n):
                a = sx[k]
                wk = w_rows[k]
                for l in range(n):
                    pr = pr * pow(wk[l], a * yj[l] % order, p) % p
            row.append(pr)
        out.append(tuple(row))
    return GroupMatrix(tuple(out), p)


def poly_eval_matrix(coeffs: Sequence[int], base: ExponentMatrix) -> ExponentMatrix:
    """c_1 * base + c_2 * base^2 + ... + c_d * base^d over Z_{p-1} (no constant term)"""
    if not any(coeffs):
        raise ZeroPolynomialError("Coefficient vector is all zero")

    n, mod = base.dim, base.modulus
    acc = ExponentMatrix.zeros(n, mod).entries
    power = base
    for idx, c in enumerate(coeffs):
        if idx:
            power = mat_mul_exp(power, base)
        acc = _mat_add_scaled(acc, c, power)
    return ExponentMatrix(acc, mod)


def gen_singular_base(seed: bytes, side: str, params: Params, label=None) -> ExponentMatrix:
    """
    Singular base matrix deterministic in seed.

    left:  free rows 1..n-1, last row = -(sum of the others), so 1 . A = 0
    right: free columns 1..n-1, last column = -(sum of the others), so B . 1^T = 0
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")
    if label is None:
        label = b"Agen" if side == LEFT else b"Bgen"

    n, order = params.n, params.order
    stream = XofReader(label, seed)
    free = [[stream.uniform(order) for _ in range(n)] for _ in range(n - 1)]
    closing = [(-sum(col)) % order for col in zip(*free)] if free else [0] * n
    rows = free + [closing]

    if side == RIGHT:
        rows = [list(col) for col in zip(*rows)]
    return ExponentMatrix(tuple(tuple(r) for r in rows), order)


def sample_coefficients(stream: XofReader, params: Params) -> Tuple[int, ...]:
    """d coefficients uniform in [0, exp_max]; may be all zero"""
    return tuple(stream.uniform(params.exp_max + 1) for _ in range(params.d))


def sample_group_matrix(stream: XofReader, params: Params) -> GroupMatrix:
    """Entries uniform in [1, p-1]"""
    n = params.n
    return GroupMatrix(
        tuple(tuple(1 + stream.uniform(params.p - 1) for _ in range(n)) for _ in range(n)),
        params.p,
    )
