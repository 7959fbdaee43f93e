from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilorbit.gfp import (
    FieldError,
    FieldMatrix,
    PrimeModulus,
    batch_jordan_types,
    batch_rank,
    batch_rank_profiles,
    determinant,
    is_zero,
    jordan_block_matrix,
    jordan_type,
    mat_mul,
    mat_sub,
    nilpotency_index,
    rank,
    rank_by_columns,
    rank_sequence,
)
from nilorbit.partitions import Partition, rank_profile_of_partition
from strategies import partitions


def matrices(p: int, max_n: int = 6):
    return st.integers(1, max_n).flatmap(
        lambda r: st.integers(1, max_n).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


class TestModulus:
    def test_rejects_composites(self):
        for bad in (0, 1, 4, 65535, -7):
            with pytest.raises(FieldError):
                PrimeModulus(bad)

    def test_arithmetic(self):
        F = PrimeModulus(7)
        assert F.add(5, 4) == 2
        assert F.sub(2, 5) == 4
        assert F.mul(3, 5) == 1
        assert F.neg(3) == 4
        assert F.inv(3) == 5
        with pytest.raises(ZeroDivisionError):
            F.inv(0)

    def test_prime_range(self):
        assert PrimeModulus(2**31 - 1).p == 2**31 - 1
        with pytest.raises(FieldError):
            PrimeModulus(2**61 - 1)


class TestFieldMatrix:
    def test_reduces_entries(self):
        M = FieldMatrix([[8, -1], [0, 14]], 7)
        assert M.tolist() == [[1, 6], [0, 0]]

    def test_immutable(self):
        M = FieldMatrix([[1, 2]], 5)
        with pytest.raises((AttributeError, ValueError)):
            M.data[0, 0] = 3

    def test_products(self):
        A = FieldMatrix([[1, 2], [3, 4]], 5)
        B = FieldMatrix([[0, 1], [1, 0]], 5)
        assert (A @ B).tolist() == [[2, 1], [4, 3]]
        assert mat_mul(A, B) == A @ B
        assert is_zero(mat_sub(A, A))

    def test_mixed_primes_rejected(self):
        with pytest.raises(FieldError):
            FieldMatrix([[1]], 5) @ FieldMatrix([[1]], 7)

    def test_big_prime_uses_python_ints(self):
        p = 2**31 - 1
        A = FieldMatrix([[p - 1, p - 2], [3, p - 1]], p)
        assert (A @ A).tolist()[0][0] == ((p - 1) ** 2 + (p - 2) * 3) % p


class TestRank:
    def test_examples(self):
        assert rank(FieldMatrix([[1, 2], [2, 4]], 7)) == 1
        assert rank(FieldMatrix([[1, 2], [2, 4]], 2)) == 1
        assert rank(FieldMatrix([[1, 1], [1, 3]], 2)) == 1
        assert rank(FieldMatrix([[1, 1], [1, 3]], 3)) == 2
        assert rank(FieldMatrix.zeros(3, 4, 5)) == 0

    @settings(max_examples=200)
    @given(matrices(5))
    def test_rank_oracles_agree(self, rows):
        M = FieldMatrix(rows, 5)
        assert rank(M) == rank_by_columns(M)
        assert batch_rank(M.data[None], 5)[0] == rank(M)

    @settings(max_examples=100)
    @given(matrices(3, 5))
    def test_rank_is_transpose_invariant(self, rows):
        M = FieldMatrix(rows, 3)
        assert rank(M) == rank(FieldMatrix(M.data.T, 3))

    def test_determinant(self):
        assert determinant(FieldMatrix([[2, 5], [3, 4]], 101)) == (8 - 15) % 101
        assert determinant(FieldMatrix([[1, 2], [2, 4]], 7)) == 0
        assert determinant(FieldMatrix.identity(4, 11)) == 1
        with pytest.raises(FieldError):
            determinant(FieldMatrix([[1, 2]], 7))

    @settings(max_examples=100)
    @given(st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_determinant_vs_rank(self, rows):
        M = FieldMatrix(rows, 7)
        assert (determinant(M) != 0) == (rank(M) == M.rows)


class TestJordan:
    @given(partitions(max_n=12))
    def test_block_matrix_round_trip(self, B):
        J = jordan_block_matrix(B, 101)
        assert jordan_type(J) == B
        assert tuple(rank_sequence(J)) == rank_profile_of_partition(B)
        assert nilpotency_index(J) == B[0]

    def test_examples(self):
        assert jordan_type(FieldMatrix.zeros(3, 3, 5)).parts == (1, 1, 1)
        N = FieldMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 5)
        assert jordan_type(N).parts == (3,)
        assert jordan_type(FieldMatrix([[0, 1, 1], [0, 0, 0], [0, 0, 0]], 5)).parts == (2, 1)

    def test_similarity_invariance(self):
        rng = np.random.default_rng(3)
        p = 101
        J = jordan_block_matrix((4, 2, 1), p)
        while True:
            S = FieldMatrix(rng.integers(0, p, (7, 7)), p)
            if rank(S) == 7:
                break
        adj = np.array([[int(x) for x in row] for row in _inverse(S).tolist()])
        conj = S @ J @ FieldMatrix(adj, p)
        assert jordan_type(conj).parts == (4, 2, 1)

    def test_rejects_non_nilpotent(self):
        with pytest.raises(FieldError):
            jordan_type(FieldMatrix.identity(2, 5))

    def test_batch(self):
        p = 101
        stack = np.stack([jordan_block_matrix(B, p).data for B in [(3, 1), (2, 2), (1, 1, 1, 1)]])
        assert [t.parts for t in batch_jordan_types(stack, p)] == [(3, 1), (2, 2), (1, 1, 1, 1)]
        assert batch_rank_profiles(stack, p)[0].tolist() == [4, 2, 1, 0, 0]


def _inverse(S: FieldMatrix) -> FieldMatrix:
    """Gauss-Jordan inverse, used only to build similar matrices."""
    p, n = S.p, S.rows
    a = np.concatenate([S.to_array(), np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r, c])
        a[[c, piv]] = a[[piv, c]]
        a[c] = a[c] * pow(int(a[c, c]), -1, p) % p
        for r in range(n):
            if r != c and a[r, c]:
                a[r] = (a[r] - a[r, c] * a[c]) % p
    return FieldMatrix(a[:, n:], p)


def test_partition_type_is_returned():
    assert isinstance(jordan_type(jordan_block_matrix((2,), 7)), Partition)
