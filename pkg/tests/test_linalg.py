import random
from fractions import Fraction

import numpy as np
import pytest

from clifflab import linalg


def test_rref_identity():
    a = linalg.to_fractions([[1, 0], [0, 1]])
    red, pivots = linalg.rref(a)
    assert pivots == [0, 1]
    assert red == a


def test_rank_and_nullspace():
    a = linalg.to_fractions([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert linalg.rank(a) == 2
    basis = linalg.nullspace(a)
    assert len(basis) == 1
    v = basis[0]
    for row in a:
        assert sum(x * y for x, y in zip(row, v)) == 0


def test_solve_consistent_and_inconsistent():
    a = linalg.to_fractions([[2, 0], [0, 4]])
    x = linalg.solve(a, [Fraction(1), Fraction(2)])
    assert x == [Fraction(1, 2), Fraction(1, 2)]
    bad = linalg.to_fractions([[1, 1], [1, 1]])
    assert linalg.solve(bad, [Fraction(0), Fraction(1)]) is None


def test_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 6)
        while True:
            a = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
            if linalg.rank(a) == n:
                break
        inv = linalg.inverse(a)
        prod = linalg.frac_matmul(a, inv)
        assert prod == linalg.to_fractions(np.eye(n, dtype=np.int64))


def test_inverse_singular_raises():
    with pytest.raises(ValueError):
        linalg.inverse([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]])


def test_rank_mod_p_matches_rational_rank_on_small_ints():
    rng = random.Random(5)
    for _ in range(20):
        a = np.array(
            [[rng.randint(-3, 3) for _ in range(6)] for _ in range(5)], dtype=np.int64
        )
        assert linalg.rank_mod_p(a) == linalg.rank(a)


def test_signed_permutation_predicate():
    assert linalg.is_signed_permutation(np.array([[0, -1], [1, 0]], dtype=np.int64))
    assert not linalg.is_signed_permutation(np.array([[1, 1], [0, 1]], dtype=np.int64))


def test_trace_product():
    a = np.array([[0, -1], [1, 0]], dtype=np.int64)
    assert linalg.trace_product(a, a) == -2
