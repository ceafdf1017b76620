"""Exact signature of a symmetric integer matrix.

The signature feeds the obstruction margin, so it must be bit-exact: the
computation runs in rational arithmetic by symmetric elimination.  A
nonzero diagonal pivot contributes its sign; a zero diagonal entry with a
nonzero off-diagonal partner is a hyperbolic pair contributing 0; both are
eliminated by the corresponding Schur complement and the procedure
recurses on the rest.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def exact_signature(matrix: list[list[int]]) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError(f"matrix not symmetric at ({i}, {j})")

    a = [[Fraction(x) for x in row] for row in matrix]
    active = list(range(n))
    sig = 0
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is not None:
            sig += 1 if a[pivot][pivot] > 0 else -1
            active.remove(pivot)
            d = a[pivot][pivot]
            for i in active:
                ci = a[i][pivot]
                if ci == 0:
                    continue
                for j in active:
                    a[i][j] -= ci * a[pivot][j] / d
            continue
        pair = None
        for i in active:
            for j in active:
                if j != i and a[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break  # remaining block is zero
        i, j = pair
        b = a[i][j]
        active.remove(i)
        active.remove(j)
        # Schur complement of the hyperbolic block [[0, b], [b, 0]].
        for k in active:
            cki, ckj = a[k][i], a[k][j]
            if cki == 0 and ckj == 0:
                continue
            for l in active:
                a[k][l] -= (cki * a[j][l] + ckj * a[i][l]) / b
    return sig
