from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cmkit import CMQuadruple, Matrix


def rand_fraction(rng: random.Random, span: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def rand_matrix(rng: random.Random, rows: int, cols: int, span: int = 5) -> Matrix:
    return Matrix.from_rows(
        [[rand_fraction(rng, span) for _ in range(cols)] for _ in range(rows)]
    )


def rand_invertible(rng: random.Random, n: int) -> Matrix:
    from cmkit import rank

    while True:
        g = rand_matrix(rng, n, n, span=3)
        if rank(g) == n:
            return g


def rand_quadruple(rng: random.Random, n: int, r: int = 1) -> CMQuadruple:
    return CMQuadruple(
        rand_matrix(rng, n, n),
        rand_matrix(rng, n, n),
        rand_matrix(rng, n, r),
        rand_matrix(rng, r, n),
    )


@pytest.fixture
def flagship() -> CMQuadruple:
    """The standard two-particle CM point with X = diag(0, 1)."""
    return CMQuadruple(
        Matrix.from_rows([[0, 0], [0, 1]]),
        Matrix.from_rows([[0, -1], [1, 0]]),
        Matrix.column([1, 1]),
        Matrix.row_vector([1, 1]),
    )
