import itertools
import random
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wildquot.gf import FieldTower, prime_field
from wildquot.linalg import (
    is_negative_definite,
    leading_minors,
    matmul,
    nullspace,
    rank,
    rank_mod_p,
    rational_rank,
    solve,
    solve_rational,
)


def _dot(F, r, v):
    acc = 0
    for a, b in zip(r, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def test_nullspace_matches_enumeration_over_f4():
    F = FieldTower(2, 2).base
    rng = random.Random(1)
    for _ in range(20):
        A = [[rng.randrange(4) for _ in range(4)] for _ in range(3)]
        ns = nullspace(F, A, 4)
        count = sum(1 for v in itertools.product(range(4), repeat=4) if all(_dot(F, r, v) == 0 for r in A))
        assert 4 ** len(ns) == count
        for v in ns:
            assert all(_dot(F, r, v) == 0 for r in A)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_mod_p_agrees(rows):
    F = prime_field(7)
    assert rank(F, rows) == rank_mod_p(np.array(rows), 7)


def test_solve_and_matmul():
    F = prime_field(5)
    A = [[1, 2], [3, 4]]
    x = solve(F, A, [1, 1])
    assert matmul(F, A, [[v] for v in x]) == [[1], [1]]
    assert solve(F, [[1, 1], [2, 2]], [1, 3]) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_negative_definite_matches_eigenvalues(n, seed):
    rng = random.Random(seed)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = -rng.randint(1, 4)
        for j in range(i):
            M[i][j] = M[j][i] = rng.choice([0, 0, 1, 1, 2])
    eig = np.linalg.eigvalsh(np.array(M, dtype=float))
    if abs(eig).min() > 1e-9:
        assert is_negative_definite(M) == bool((eig < 0).all())


def test_leading_minors_match_determinants():
    M = [[-2, 1, 0], [1, -2, 1], [0, 1, -3]]
    dets = [round(np.linalg.det(np.array(M)[:k, :k])) for k in (1, 2, 3)]
    assert [int(x) for x in leading_minors(M)] == dets


def test_solve_rational_exact():
    M = [[-2, 1], [1, -3]]
    x = solve_rational(M, [1, 1])
    assert [sum(Fraction(M[i][j]) * x[j] for j in range(2)) for i in range(2)] == [1, 1]
    assert rational_rank([[1, 2], [2, 4]]) == 1
