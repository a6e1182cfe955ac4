import random

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from groupeq.zlinalg import IntMatrix, det, left_kernel_vector, rank, rows_independent, snf

small = st.integers(-9, 9)
matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def unimodular(m: IntMatrix) -> bool:
    return abs(det(m)) == 1


def test_known_smith_form():
    a = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    s = snf(a)
    assert s.diagonal == [2, 6, 12]
    assert s.U @ a @ s.V == s.D


def test_zero_and_empty():
    assert rank(IntMatrix.zeros(3, 2)) == 0
    assert snf(IntMatrix.zeros(2, 3)).diagonal == [0, 0]
    assert rows_independent(IntMatrix.zeros(0, 3))


def test_left_kernel_vector():
    a = IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    v = left_kernel_vector(a)
    assert v is not None and any(v)
    assert all(sum(v[i] * a[i, j] for i in range(3)) == 0 for j in range(3))
    assert left_kernel_vector(IntMatrix.identity(3)) is None


@given(matrices)
def test_snf_matches_sympy(rows):
    a = IntMatrix(rows)
    s = snf(a)
    assert s.U @ a @ s.V == s.D
    assert unimodular(s.U) and unimodular(s.V)
    ref = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(s.diagonal) == ref_diag


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(IntMatrix(rows)) == sympy.Matrix(rows).rank()


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(IntMatrix(rows)) == sympy.Matrix(rows).det()


@pytest.mark.parametrize("seed", range(5))
def test_divisibility_chain(seed):
    rnd = random.Random(seed)
    a = IntMatrix([[rnd.choice([0, 2, 4, 6, 12]) * rnd.randint(-3, 3) for _ in range(5)]
                   for _ in range(4)])
    d = snf(a).invariant_factors
    assert all(b % a_ == 0 for a_, b in zip(d, d[1:]))
