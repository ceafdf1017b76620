"""Characteristic sublinks: the affine GF(2) solution set of L x = diag(L).

A sublink L' of a framed link with linking matrix L is characteristic when
every component's framing is congruent mod 2 to its total linking with L'.
In coordinates that is L x = diag(L) over GF(2).  For symmetric L the
system is always consistent, so the solution set is a nonempty affine
subspace: one particular solution plus the mod-2 kernel of L.

Sublinks are encoded as bitmasks (bit i set = component i in the sublink).
"""

from __future__ import annotations

from dataclasses import dataclass


def _check_symmetric(matrix: list[list[int]]) -> int:
    m = len(matrix)
    for row in matrix:
        if len(row) != m:
            raise ValueError("matrix must be square")
    for i in range(m):
        for j in range(i + 1, m):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError(f"matrix not symmetric at ({i}, {j})")
    return m


@dataclass(frozen=True)
class CharacteristicSolutions:
    """All characteristic sublinks of a linking matrix.

    ``particular`` is one solution; the full set is particular XOR every
    GF(2) span of ``kernel_basis``.  Never empty for symmetric input.
    """

    size: int
    particular: int
    kernel_basis: tuple[int, ...]

    @property
    def count(self) -> int:
        return 1 << len(self.kernel_basis)

    def __iter__(self):
        for pick in range(self.count):
            mask = self.particular
            k = pick
            idx = 0
            while k:
                if k & 1:
                    mask ^= self.kernel_basis[idx]
                k >>= 1
                idx += 1
            yield mask

    def as_set(self) -> set[int]:
        return set(self)

    def contains(self, mask: int) -> bool:
        """Membership test by Gaussian reduction against the kernel basis."""
        pivots: dict[int, int] = {}
        for vec in self.kernel_basis:
            v = vec
            while v:
                bit = v.bit_length() - 1
                if bit in pivots:
                    v ^= pivots[bit]
                else:
                    pivots[bit] = v
                    break
        residue = mask ^ self.particular
        while residue:
            bit = residue.bit_length() - 1
            if bit not in pivots:
                return False
            residue ^= pivots[bit]
        return True


def characteristic_sublinks(matrix: list[list[int]]) -> CharacteristicSolutions:
    """Solve L x = diag(L) over GF(2) for a symmetric integer matrix L."""
    m = _check_symmetric(matrix)
    rows = []
    for i in range(m):
        bits = 0
        for j in range(m):
            if matrix[i][j] & 1:
                bits |= 1 << j
        rhs = matrix[i][i] & 1
        rows.append(bits | (rhs << m))  # augmented column at bit m

    pivots: list[tuple[int, int]] = []  # (column, row-index into reduced)
    reduced: list[int] = []
    for row in rows:
        for col, r in pivots:
            if row & (1 << col):
                row ^= reduced[r]
        low = row & ((1 << m) - 1)
        if low:
            col = (low & -low).bit_length() - 1
            # normalize so earlier pivot columns are cleared in existing rows
            for k, (c, r) in enumerate(pivots):
                if reduced[r] & (1 << col):
                    reduced[r] ^= row
            pivots.append((col, len(reduced)))
            reduced.append(row)
        elif row >> m:
            raise AssertionError(
                "inconsistent characteristic system for a symmetric matrix"
            )

    pivot_cols = {col for col, _ in pivots}
    particular = 0
    for col, r in pivots:
        if reduced[r] >> m:
            particular |= 1 << col
    basis = []
    for free in range(m):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, r in pivots:
            if reduced[r] & (1 << free):
                vec |= 1 << col
        basis.append(vec)
    return CharacteristicSolutions(m, particular, tuple(basis))


def is_characteristic(matrix: list[list[int]], mask: int) -> bool:
    """Direct congruence check: (L x)_i = L_ii mod 2 for every i."""
    m = len(matrix)
    for i in range(m):
        total = sum(matrix[i][j] for j in range(m) if mask & (1 << j))
        if (total - matrix[i][i]) % 2 != 0:
            return False
    return True
