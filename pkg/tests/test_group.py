import json
from math import comb

import numpy as np
import pytest
from hypothesis import given

from riordan.fps import Fps, compose, recip
from riordan.group import (
    DiagonalPattern, F0Nonzero, F1Zero, G0Zero, RiordanPair, commutator, conjugate,
    diagonal_entry, diagonal_pattern, identity, in_commutator_subgroup, inverse, involution_m,
    make_pair, multiply, scalar, to_matrix,
)
from riordan.involutions import is_involution

from conftest import N, pairs

t = Fps.var(N)
PASCAL = RiordanPair(recip(1 - t), t / (1 - t))
M = involution_m(1, N)
I = identity(N)


def test_make_pair_validation():
    assert make_pair(PASCAL.g, PASCAL.f) == PASCAL
    with pytest.raises(G0Zero):
        make_pair(t, t)
    with pytest.raises(F1Zero):
        make_pair(Fps.const(1, N), t * t)
    with pytest.raises(F0Nonzero):
        make_pair(Fps.const(1, N), 1 + t)


def test_multiply_examples():
    assert multiply(PASCAL, PASCAL) == RiordanPair(recip(1 - 2 * t), t / (1 - 2 * t))
    assert multiply(PASCAL, I) == PASCAL
    assert multiply(M, M) == I


def test_inverse_examples():
    assert inverse(PASCAL) == RiordanPair(recip(1 + t), t / (1 + t))
    assert inverse(I) == I and inverse(M) == M


def binomial_rows(k):
    return [[comb(n, j) for j in range(k)] for n in range(k)]


def test_matrix_examples():
    assert to_matrix(PASCAL, 4).entries.tolist() == binomial_rows(4)
    assert to_matrix(M, 4).entries.tolist() == np.diag([1, -1, 1, -1]).tolist()
    assert to_matrix(I, 3).entries.tolist() == np.eye(3, dtype=int).tolist()
    with pytest.raises(ValueError):
        to_matrix(PASCAL, N + 2)


def test_pascal_matrix_against_binomials():
    assert to_matrix(PASCAL, 12).entries.tolist() == binomial_rows(12)


def test_catalan_triangle_first_column():
    # g = C(t) satisfies C = 1 + t C^2; column 0 are Catalan numbers by convolution
    cat = [1]
    for n in range(N):
        cat.append(sum(cat[i] * cat[n - i] for i in range(n + 1)))
    c = Fps(cat)
    assert c == 1 + t * c * c
    m = to_matrix(RiordanPair(c, t * c), 8)
    assert [m.entries[n, 0] for n in range(8)] == cat[:8]


def test_matrix_renderings():
    m = to_matrix(PASCAL, 3)
    assert m.to_text() == "1\n1  1\n1  2  1\n"
    assert m.to_csv() == "1,0,0\n1,1,0\n1,2,1\n"
    assert json.loads(m.to_json()) == [["1", "0", "0"], ["1", "1", "0"], ["1", "2", "1"]]
    half = to_matrix(RiordanPair(Fps.const("1/2", N), t), 2)
    assert half.to_csv() == "1/2,0\n0,1/2\n"


def test_conjugate_examples():
    assert conjugate(PASCAL, I) == PASCAL
    assert conjugate(I, PASCAL) == I
    J = conjugate(M, PASCAL)
    assert is_involution(J)
    assert diagonal_pattern(J) is DiagonalPattern.ALTERNATING_PLUS_FIRST


def test_commutator_examples():
    assert commutator(PASCAL, PASCAL) == I
    assert commutator(PASCAL, I) == I


def test_diagonal_examples():
    assert diagonal_pattern(PASCAL) is DiagonalPattern.ALL_ONES
    assert diagonal_pattern(M) is DiagonalPattern.ALTERNATING_PLUS_FIRST
    assert diagonal_pattern(scalar(2, N)) is DiagonalPattern.OTHER
    assert diagonal_pattern(involution_m(-1, N)) is DiagonalPattern.ALTERNATING_MINUS_FIRST
    assert diagonal_pattern(scalar(-1, N)) is DiagonalPattern.ALL_MINUS_ONES
    assert in_commutator_subgroup(PASCAL) and not in_commutator_subgroup(M)


def test_fact1_witness_identity(rng):
    from riordan.sampling import random_pair

    for _ in range(5):
        R1, R2 = random_pair(rng, N), random_pair(rng, N)
        lhs = commutator(conjugate(M, R1), multiply(inverse(R1), R2))
        assert lhs == multiply(conjugate(M, R1), conjugate(M, R2))


@given(pairs(), pairs(), pairs())
def test_group_axioms(P, Q, R):
    assert multiply(multiply(P, Q), R) == multiply(P, multiply(Q, R))
    assert multiply(P, I) == P == multiply(I, P)
    assert multiply(P, inverse(P)) == I == multiply(inverse(P), P)


@given(pairs(), pairs())
def test_matrix_homomorphism(P, Q):
    K = 10
    assert to_matrix(multiply(P, Q), K) == to_matrix(P, K) @ to_matrix(Q, K)


@given(pairs(), pairs())
def test_diagonal_multiplicative(P, Q):
    PQ = multiply(P, Q)
    for n in range(6):
        assert diagonal_entry(PQ, n) == diagonal_entry(P, n) * diagonal_entry(Q, n)


@given(pairs(), pairs())
def test_commutators_have_unit_diagonal(P, Q):
    assert in_commutator_subgroup(commutator(P, Q))


@given(pairs(), pairs())
def test_conjugation_keeps_diagonal(P, X):
    C = conjugate(P, X)
    assert (C.g[0], C.f[1]) == (P.g[0], P.f[1])
    assert diagonal_pattern(C) is diagonal_pattern(P)


def test_matrix_column_generating_functions(rng):
    from riordan.sampling import random_pair

    P = random_pair(rng, N)
    m = to_matrix(P, 9)
    col = P.g
    for k in range(9):
        assert [m.entries[n, k] for n in range(k, 9)] == list(col.coeffs[k:9])
        col = col * P.f
    assert compose(P.g, t) == P.g
