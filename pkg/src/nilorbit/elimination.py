"""Leading-entry profiles and the eliminate-and-permute reduction.

For a strictly upper triangular matrix Y, ``Phi(i)`` is the column of the
first nonzero entry of row i (``n + 1`` for a zero row).  When Phi is
increasing wherever it is at most n, the Jordan type of Y can be read off
from Phi alone: ``rank Y^k`` is the number of rows with ``Phi^k(i) <= n``.

Otherwise a square submatrix U is selected (``find_star_submatrix``).  Its
interior rows form a consecutive staircase of leading entries directly below
an irregular row ``i(1)``.  A similarity transform clears row ``i(1)`` over
the staircase; the value left at the terminal column is ``F(U)``.  A cyclic
permutation then moves the cleared row under the staircase.  Repeating this
(``sigma_reduce``) ends in a profile of the regular kind.

``F(U)`` is defined by a row recursion and equals
``(-1)^p det(U_hat) / prod(u_22 .. u_{p-1,p-1})`` where ``U_hat`` drops the
first column and last row.  All indices in this module are 1-based to match
that notation; arrays are still indexed from 0 internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .gfp import FieldError, FieldMatrix, determinant
from .partitions import Partition, type_from_rank_profile


class StarError(ValueError):
    pass


# ---------------------------------------------------------------- F(U)


def _check_star(U: FieldMatrix) -> int:
    k = U.rows
    if U.cols != k or k < 2:
        raise StarError("U must be square of order at least 2")
    if np.tril(U.data, -1).any():
        raise StarError("U has nonzero entries below the diagonal")
    for i in range(1, k - 1):
        if U.data[i, i] == 0:
            raise StarError(f"interior diagonal entry u_{i + 1},{i + 1} is zero")
    return k


def _inv(x, p: int) -> int:
    return pow(int(x), -1, p)


def _row_tail_values(U: FieldMatrix) -> list[int]:
    """``F(U_(h))`` for h = 1 .. p-1 (index 0 unused)."""
    p, u = U.p, U.data
    k = U.rows
    F = [0] * k
    F[k - 1] = int(u[k - 2, k - 1])
    for h in range(k - 2, 0, -1):
        acc = int(u[h - 1, k - 1])
        for m in range(h + 1, k):
            acc -= int(u[h - 1, m - 1]) * _inv(u[m - 1, m - 1], p) * F[m]
        F[h] = acc % p
    return F


def _column_head_values(U: FieldMatrix) -> list[int]:
    """``F(U^(h))`` for h = 2 .. p (indices 0, 1 unused)."""
    p, u = U.p, U.data
    k = U.rows
    F = [0] * (k + 1)
    F[2] = int(u[0, 1])
    for h in range(3, k + 1):
        acc = int(u[0, h - 1])
        for m in range(2, h):
            acc -= int(u[m - 1, h - 1]) * _inv(u[m - 1, m - 1], p) * F[m]
        F[h] = acc % p
    return F


def f_u_recursive(U: FieldMatrix) -> int:
    """F(U) by the row recursion, starting from ``F(U_(p-1)) = u_{p-1,p}``."""
    k = _check_star(U)
    return _row_tail_values(U)[1] if k > 2 else int(U.data[0, 1])


def f_u_columnwise(U: FieldMatrix) -> int:
    """F(U) by the mirrored column recursion, starting from ``u_{1,2}``."""
    k = _check_star(U)
    return _column_head_values(U)[k]


def f_u_determinant(U: FieldMatrix) -> int:
    k = _check_star(U)
    p = U.p
    hat = FieldMatrix(U.data[: k - 1, 1:], U.modulus)
    denom = 1
    for i in range(1, k - 1):
        denom = denom * int(U.data[i, i]) % p
    return (-1) ** k * determinant(hat) * _inv(denom, p) % p


def f_u_upper(U: FieldMatrix) -> int:
    """Determinant form for any upper triangular U.

    The denominator runs over every nonzero diagonal entry; an all-zero
    diagonal gives 0 by convention.
    """
    k = U.rows
    if U.cols != k or k < 2:
        raise StarError("U must be square of order at least 2")
    if np.tril(U.data, -1).any():
        raise StarError("U is not upper triangular")
    p = U.p
    diag = [int(U.data[i, i]) for i in range(k)]
    if not any(diag):
        return 0
    denom = 1
    for d in diag:
        if d:
            denom = denom * d % p
    hat = FieldMatrix(U.data[: k - 1, 1:], U.modulus)
    return (-1) ** k * determinant(hat) * _inv(denom, p) % p


def f_u_coefficient(U: FieldMatrix, r: int, s: int) -> int:
    """Coefficient of ``u_{r,s}`` in F(U), from sub-values of F."""
    k = _check_star(U)
    if not 1 <= r < s <= k:
        raise StarError("need 1 <= r < s <= p")
    p = U.p
    if (r, s) == (1, k):
        return 1
    tail = _row_tail_values(U) if k > 2 else [0, int(U.data[0, 1])]
    head = _column_head_values(U)
    if s == k:
        return -_inv(U.data[r - 1, r - 1], p) * head[r] % p
    if r == 1:
        return -_inv(U.data[s - 1, s - 1], p) * tail[s] % p
    return _inv(U.data[r - 1, r - 1], p) * _inv(U.data[s - 1, s - 1], p) * tail[s] * head[r] % p


def monomial_paths(k: int) -> list[tuple[int, ...]]:
    """Index paths ``1 < k_1 < ... < k_m < p`` labelling the terms of F."""
    inner = range(2, k)
    return [(1, *c, k) for m in range(k - 1) for c in combinations(inner, m)]


def f_u_monomials(U: FieldMatrix) -> list[tuple[tuple[int, ...], int]]:
    """Value of each fractional monomial of F(U), keyed by its path."""
    _check_star(U)
    p, u = U.p, U.data
    out = []
    for path in monomial_paths(U.rows):
        val = (-1) ** (len(path) - 2)
        for a, b in zip(path, path[1:]):
            val *= int(u[a - 1, b - 1])
        for m in path[1:-1]:
            val *= _inv(u[m - 1, m - 1], p)
        out.append((path, val % p))
    return out


# ---------------------------------------------------------------- Phi maps


@dataclass(frozen=True)
class PhiMap:
    """``values[i - 1] = Phi(i)`` with ``i < Phi(i) <= n + 1``."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.n:
            raise ValueError("Phi must have n values")
        for i, v in enumerate(vals, start=1):
            if not i < v <= self.n + 1:
                raise ValueError(f"Phi({i}) = {v} out of range")
        object.__setattr__(self, "values", vals)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def is_monotone_regular(self) -> bool:
        end = self.n + 1
        return all(b == end or a < b for a, b in zip(self.values, self.values[1:]))

    def irregular_rows(self) -> list[int]:
        end = self.n + 1
        return [
            i
            for i, (a, b) in enumerate(zip(self.values, self.values[1:]), start=1)
            if b != end and a >= b
        ]


def phi_of(Y: FieldMatrix) -> PhiMap:
    if Y.rows != Y.cols:
        raise FieldError("Phi of a non-square matrix")
    if np.tril(Y.data).any():
        raise FieldError("matrix is not strictly upper triangular")
    n = Y.rows
    vals = []
    for row in Y.data:
        nz = np.flatnonzero(row)
        vals.append(int(nz[0]) + 1 if nz.size else n + 1)
    return PhiMap(n, tuple(vals))


def phi_power(phi: PhiMap, k: int) -> PhiMap:
    if k < 1:
        raise ValueError("k must be positive")
    end = phi.n + 1
    vals = []
    for i in range(1, phi.n + 1):
        x = i
        for _ in range(k):
            x = phi(x) if x != end else end
        vals.append(x)
    return PhiMap(phi.n, tuple(vals))


def monotone_generic_type(phi: PhiMap) -> Partition:
    """Jordan type shared by every matrix with a regular profile ``phi``."""
    if not phi.is_monotone_regular():
        raise ValueError("Phi is not monotone regular")
    end = phi.n + 1
    ranks = [phi.n]
    pos = list(range(1, phi.n + 1))
    while ranks[-1]:
        pos = [phi(x) if x != end else end for x in pos]
        ranks.append(sum(1 for x in pos if x != end))
    return type_from_rank_profile(ranks)


# ---------------------------------------------------------------- reduction


@dataclass(frozen=True)
class StarSubmatrix:
    """Rows ``i(1..p)`` and columns ``j(1..p)``, 1-based; ``j(p)`` may be n+1."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def terminal(self) -> int:
        return self.cols[-1]


def star_candidates(phi: PhiMap) -> list[StarSubmatrix]:
    """Valid selections, one per irregular starting row."""
    n, end = phi.n, phi.n + 1
    out = []
    for i1 in phi.irregular_rows():
        rows, cols = [i1 + 1], [phi(i1 + 1)]
        r = i1 + 2
        while r <= n and phi(r) <= n and phi(r) == cols[-1] + 1:
            rows.append(r)
            cols.append(phi(r))
            r += 1
        last_row, last_col = rows[-1] + 1, cols[-1] + 1
        if last_row > n:
            continue
        f = phi(last_row)
        if f > last_col or (f == end and last_col == end):
            out.append(
                StarSubmatrix((i1, *rows, last_row), (cols[0] - 1, *cols, last_col))
            )
    return out


def find_star_submatrix(Y: FieldMatrix | PhiMap) -> StarSubmatrix | None:
    """Selection with the smallest terminal column, ties to the smallest row."""
    phi = Y if isinstance(Y, PhiMap) else phi_of(Y)
    if phi.is_monotone_regular():
        return None
    cands = star_candidates(phi)
    if not cands:
        raise StarError(f"no admissible submatrix for irregular profile {phi.values}")
    return min(cands, key=lambda s: (s.terminal, s.rows[0]))


def star_matrix(Y: FieldMatrix, star: StarSubmatrix) -> FieldMatrix:
    """The submatrix U of ``[Y | 0]`` picked out by ``star``."""
    padded = np.concatenate([Y.data, np.zeros((Y.rows, 1), dtype=Y.data.dtype)], axis=1)
    U = padded[np.ix_([r - 1 for r in star.rows], [c - 1 for c in star.cols])]
    return FieldMatrix(U, Y.modulus)


@dataclass(frozen=True)
class SigmaStep:
    star: StarSubmatrix
    eliminated: int
    g: tuple[int, ...]
    cleared: FieldMatrix
    result: FieldMatrix


def sigma_step_detail(Y: FieldMatrix, star: StarSubmatrix | None = None) -> SigmaStep:
    star = star or find_star_submatrix(Y)
    if star is None:
        raise StarError("profile is already monotone regular")
    p, n = Y.p, Y.rows
    a = Y.to_array()
    rows = [r - 1 for r in star.rows]
    cols = [c - 1 for c in star.cols]
    i1 = rows[0]
    interior = range(1, star.p - 1)
    g: list[int] = []
    for h in interior:
        acc = int(a[i1, cols[h]])
        for k in range(1, h):
            acc -= int(a[rows[k], cols[h]]) * g[k - 1]
        g.append(acc * _inv(a[rows[h], cols[h]], p) % p)
    for h, gh in zip(interior, g):
        a[i1] = (a[i1] - gh * a[rows[h]]) % p
    for h, gh in zip(interior, g):
        a[:, rows[h]] = (a[:, rows[h]] + gh * a[:, i1]) % p
    cleared = FieldMatrix(a, Y.modulus)
    eliminated = int(a[i1, cols[-1]]) if cols[-1] < n else 0
    # sigma: i1 -> i(p-1) -> i(p-2) -> ... -> i(2) -> i1
    sigma = list(range(n))
    cycle = [rows[0]] + [rows[h] for h in range(star.p - 2, 0, -1)]
    for x, y in zip(cycle, cycle[1:] + cycle[:1]):
        sigma[x] = y
    perm = np.empty(n, dtype=np.int64)
    perm[sigma] = np.arange(n)
    result = FieldMatrix(a[np.ix_(perm, perm)], Y.modulus)
    return SigmaStep(star, eliminated, tuple(g), cleared, result)


def sigma_step(Y: FieldMatrix) -> FieldMatrix:
    return sigma_step_detail(Y).result


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[tuple[StarSubmatrix, int], ...]
    final_phi: PhiMap
    final: FieldMatrix

    @property
    def m(self) -> int:
        return len(self.steps)


def sigma_reduce(Y: FieldMatrix) -> ReductionTrace:
    n = Y.rows
    steps = []
    cap = max(n * n, 1)
    while True:
        star = find_star_submatrix(Y)
        if star is None:
            return ReductionTrace(tuple(steps), phi_of(Y), Y)
        if len(steps) >= cap:
            raise RuntimeError("reduction did not terminate within n^2 steps")
        detail = sigma_step_detail(Y, star)
        steps.append((star, detail.eliminated))
        Y = detail.result


# ---------------------------------------------------------------- masks


EXAMPLE_MASK_13 = {
    1: range(2, 14),
    2: range(3, 14),
    3: range(4, 14),
    4: [5, *range(7, 14)],
    5: [9, 11, 12, 13],
    6: range(7, 14),
    7: range(8, 14),
    8: range(9, 14),
    9: range(11, 14),
    10: range(11, 14),
    11: [12, 13],
    12: [13],
    13: [],
}


def mask_from_rows(n: int, rows: dict[int, Sequence[int]]) -> np.ndarray:
    """Boolean n x n mask from 1-based ``row -> nonzero columns``."""
    mask = np.zeros((n, n), dtype=bool)
    for r, cols in rows.items():
        for c in cols:
            mask[r - 1, c - 1] = True
    return mask


def example_mask_13() -> np.ndarray:
    return mask_from_rows(13, EXAMPLE_MASK_13)


def instantiate_mask(mask: np.ndarray, p: int, rng: np.random.Generator) -> tuple[FieldMatrix, bool]:
    """Fill a mask with uniform residues; report whether any masked draw was 0."""
    vals = rng.integers(0, p, size=mask.shape, dtype=np.int64)
    vals[~mask] = 0
    return FieldMatrix(vals, p), bool((vals[mask] == 0).any())


def generic_mask_instance(mask: np.ndarray, p: int, seed=0, max_tries: int = 100):
    """Masked matrix with every masked entry nonzero, plus the retry count."""
    ss = np.random.SeedSequence(seed)
    for tries, child in enumerate(ss.spawn(max_tries)):
        Y, degenerate = instantiate_mask(mask, p, np.random.default_rng(child))
        if not degenerate:
            return Y, tries
    raise RuntimeError("could not draw a generic instance")
