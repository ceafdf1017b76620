"""Shared helpers: random matrices, random braids, independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from kirbycalc.braid import BraidWord, closure_components


def random_symmetric(rng: random.Random, n: int, lo: int = -5, hi: int = 5):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(lo, hi)
    return m


def exact_rank(matrix) -> int:
    """Rank over Q by fraction Gauss elimination (test-side oracle)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    rank = 0
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col] / a[row][col]
                for c in range(n):
                    a[r][c] -= f * a[row][c]
        rank += 1
        row += 1
    return rank


def signature_float_oracle(matrix) -> int:
    """Eigenvalue sign count with an exact-rank zero split and a gap guard.

    Independent of the package's exact elimination: zeros are identified
    by exact rank, and the guard insists the smallest kept eigenvalue is
    well separated from the discarded ones.
    """
    import numpy as np

    n = len(matrix)
    if n == 0:
        return 0
    eigs = sorted(np.linalg.eigvalsh(np.array(matrix, dtype=float)), key=abs)
    zeros = n - exact_rank(matrix)
    if zeros:
        biggest_zero = abs(eigs[zeros - 1])
        smallest_kept = abs(eigs[zeros]) if zeros < n else 1.0
        assert biggest_zero < 1e-6 and (
            zeros == n or smallest_kept > 10 * max(biggest_zero, 1e-12)
        ), "perturbation guard tripped; eigenvalue split ambiguous"
    return sum(1 if e > 0 else -1 for e in eigs[zeros:])


def random_unimodular(rng: random.Random, n: int, ops: int = 12):
    e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for col in range(n):
                e[i][col] += c * e[j][col]
        elif kind == 1:
            e[i], e[j] = e[j], e[i]
        else:
            e[i] = [-x for x in e[i]]
    return e


def congruent(matrix, e):
    """E^T M E with exact integers."""
    n = len(matrix)
    me = [[sum(matrix[i][k] * e[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(e[k][i] * me[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_braid(rng: random.Random, strands: int, length: int) -> BraidWord:
    letters = tuple(
        (rng.randint(1, strands - 1), rng.choice([1, -1])) for _ in range(length)
    )
    return BraidWord(strands, letters)


def random_knot_braid(
    rng: random.Random, max_strands: int = 4, max_length: int = 12, tries: int = 500
) -> BraidWord:
    """A random braid (n <= max_strands, length <= max_length) closing to a knot."""
    for _ in range(tries):
        strands = rng.randint(2, max_strands)
        length = rng.randint(strands - 1, max_length)
        word = random_braid(rng, strands, length)
        if closure_components(word).count == 1:
            return word
    raise RuntimeError("could not find a knot braid; widen the search")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
