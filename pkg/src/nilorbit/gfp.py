"""Dense exact linear algebra over a prime field GF(p).

Matrices are stored as numpy integer arrays holding residues in ``[0, p)``.
When ``(p - 1)**2 * n`` fits in a signed 64-bit integer the arrays use
``int64``; larger moduli fall back to Python integers in an object array so
results stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partitions import Partition, type_from_rank_profile

DEFAULT_PRIME = 65521
_INT64_LIMIT = 2**63 - 1


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A prime ``2 <= p < 2**31`` with scalar field operations."""

    p: int

    def __post_init__(self) -> None:
        p = int(self.p)
        if not 2 <= p < 2**31 or not _is_prime(p):
            raise FieldError(f"{self.p} is not a prime in [2, 2^31)")
        object.__setattr__(self, "p", p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, -1, self.p)

    def dtype_for(self, n: int):
        return np.int64 if (self.p - 1) ** 2 * max(n, 1) < _INT64_LIMIT else object


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class FieldMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("data", "modulus")

    def __init__(self, entries, p) -> None:
        mod = as_modulus(p)
        fast = isinstance(entries, np.ndarray) and entries.dtype.kind in "iu"
        arr = entries if fast else np.array(entries, dtype=object)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise FieldError("entries must form a 2-d array")
        dtype = mod.dtype_for(max(arr.shape))
        if fast and dtype is np.int64:
            arr = arr.astype(np.int64) % mod.p
        elif arr.size:
            arr = np.array(np.array(arr, dtype=object) % mod.p, dtype=dtype)
        else:
            arr = np.zeros(arr.shape, dtype=dtype)
        object.__setattr__(self, "data", _freeze(arr))
        object.__setattr__(self, "modulus", mod)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int, p) -> "FieldMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p) -> "FieldMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> list[int]:
        return [int(x) for x in self.data.ravel()]

    def __getitem__(self, key):
        return int(self.data[key])

    def to_array(self) -> np.ndarray:
        return self.data.copy()

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix(self.data[np.ix_(list(rows), list(cols))], self.modulus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.p, self.shape, tuple(self.entries)))

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"FieldMatrix({self.tolist()}, p={self.p})"


def mat_mul(X: FieldMatrix, Y: FieldMatrix) -> FieldMatrix:
    if X.p != Y.p:
        raise FieldError("modulus mismatch")
    if X.cols != Y.rows:
        raise FieldError(f"dimension mismatch {X.shape} @ {Y.shape}")
    return FieldMatrix((X.data @ Y.data) % X.p, X.modulus)


def mat_sub(X: FieldMatrix, Y: FieldMatrix) -> FieldMatrix:
    if X.p != Y.p or X.shape != Y.shape:
        raise FieldError("shape or modulus mismatch")
    return FieldMatrix((X.data - Y.data) % X.p, X.modulus)


def is_zero(X: FieldMatrix) -> bool:
    return not X.data.any()


def rank(X: FieldMatrix) -> int:
    """Row-echelon rank with first-nonzero pivoting."""
    p = X.p
    a = X.to_array()
    m, k = a.shape
    r = 0
    for c in range(k):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1 :, c]
        if below.any():
            f = (below * inv) % p
            a[r + 1 :] = (a[r + 1 :] - (f[:, None] * a[r]) % p) % p
        r += 1
    return r


def rank_by_columns(X: FieldMatrix) -> int:
    """Rank by column elimination, an independent path used as a cross-check."""
    p = X.p
    cols = [[int(v) for v in X.data[:, c]] for c in range(X.cols)]
    pivots: list[tuple[int, list[int]]] = []
    for col in cols:
        v = col[:]
        for row, pv in pivots:
            if v[row]:
                f = v[row] * pow(pv[row], -1, p) % p
                v = [(a - f * b) % p for a, b in zip(v, pv)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is not None:
            pivots.append((lead, v))
    return len(pivots)


def determinant(X: FieldMatrix) -> int:
    if X.rows != X.cols:
        raise FieldError("determinant of a non-square matrix")
    p = X.p
    a = X.to_array()
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = det * int(a[c, c]) % p
        inv = pow(int(a[c, c]), -1, p)
        f = (a[c + 1 :, c] * inv) % p
        a[c + 1 :] = (a[c + 1 :] - (f[:, None] * a[c]) % p) % p
    return det % p


@dataclass(frozen=True)
class RankSequence:
    ranks: tuple[int, ...]
    stabilized: bool

    def __iter__(self):
        return iter(self.ranks)

    def __len__(self):
        return len(self.ranks)

    def __getitem__(self, k):
        return self.ranks[k]


def rank_sequence(X: FieldMatrix) -> RankSequence:
    """``(rank X^0, rank X^1, ...)`` up to the first 0 or the first repeat.

    ``stabilized`` is true when the sequence stopped at a repeated nonzero
    rank, so X is not nilpotent.
    """
    if X.rows != X.cols:
        raise FieldError("rank sequence of a non-square matrix")
    ranks = [X.rows]
    power = X
    while ranks[-1] != 0:
        r = rank(power)
        if r == ranks[-1]:
            ranks.append(r)
            return RankSequence(tuple(ranks), True)
        ranks.append(r)
        power = mat_mul(power, X)
    return RankSequence(tuple(ranks), False)


def jordan_type(X: FieldMatrix) -> Partition:
    seq = rank_sequence(X)
    if seq.stabilized:
        raise FieldError("matrix is not nilpotent")
    return type_from_rank_profile(seq.ranks)


def nilpotency_index(X: FieldMatrix) -> int:
    seq = rank_sequence(X)
    if seq.stabilized:
        raise FieldError("matrix is not nilpotent")
    return max(len(seq.ranks) - 1, 1)


def jordan_block_matrix(B, p) -> FieldMatrix:
    """Direct sum of upper Jordan blocks (ones on the superdiagonal)."""
    parts = list(B)
    n = sum(parts)
    a = np.zeros((n, n), dtype=np.int64)
    start = 0
    for size in parts:
        for k in range(size - 1):
            a[start + k, start + k + 1] = 1
        start += size
    return FieldMatrix(a, p)


# Batched routines for the exhaustive oracle: arrays of shape (N, n, n).


def _inv_array(x: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse by Fermat exponentiation (zeros map to zero)."""
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def batch_rank(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices over GF(p), shape (N, m, k) -> (N,)."""
    a = np.array(a, dtype=np.int64) % p
    N, m, k = a.shape
    r = np.zeros(N, dtype=np.int64)
    rows = np.arange(m)
    idx = np.arange(N)
    for c in range(k):
        active = r < m
        if not active.any():
            break
        mask = (a[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        has = mask.any(axis=1) & active
        if not has.any():
            continue
        piv = np.argmax(mask, axis=1)
        b = idx[has]
        rb, pb = r[has], piv[has]
        top = a[b, rb].copy()
        a[b, rb] = a[b, pb]
        a[b, pb] = top
        prow = a[b, rb]
        inv = _inv_array(prow[:, c], p)
        f = (a[b, :, c] * inv[:, None]) % p
        f[rows[None, :] <= rb[:, None]] = 0
        a[b] = (a[b] - (f[:, :, None] * prow[:, None, :]) % p) % p
        r[has] += 1
    return r


def batch_rank_profiles(a: np.ndarray, p: int) -> np.ndarray:
    """Rows ``(rank A^0, rank A^1, ..., 0, ...)`` of width n + 1 for a nilpotent stack."""
    a = np.array(a, dtype=np.int64) % p
    N, n, _ = a.shape
    table = np.zeros((N, n + 1), dtype=np.int64)
    table[:, 0] = n
    power = a
    for m in range(1, n + 1):
        rk = batch_rank(power, p)
        table[:, m] = rk
        if not rk.any():
            break
        power = np.matmul(power, a) % p
    if table[:, n].any():
        raise FieldError("stack contains a non-nilpotent matrix")
    return table


def batch_jordan_types(a: np.ndarray, p: int) -> list[Partition]:
    """Jordan types of a stack of nilpotent matrices."""
    table = batch_rank_profiles(a, p)
    return [type_from_rank_profile([int(x) for x in row]) for row in table]
