"""Exact knot invariants used as cross-checks on the move engine.

The Alexander polynomial is computed from the reduced Burau representation
of the braid word, normalized so that Delta(t) = Delta(1/t) and
Delta(1) = 1; the determinant is |Delta(-1)| and the Arf invariant follows
from Murasugi's congruence (Delta(-1) = +-1 mod 8 iff Arf = 0, a standard
fact).  An independent Seifert-matrix route, built combinatorially from
the Bennequin surface of the closure, serves as the test oracle.
"""

from __future__ import annotations

from .braid import BraidWord, closure_components
from .laurent import LaurentPolynomial, geometric_sum, laurent_det
from .state import ARF_CONSISTENT, ARF_INCONSISTENT, ObstructionReport


class KnotInputError(ValueError):
    """The braid closure is not a knot (or another precondition failed)."""


def _require_knot(word: BraidWord) -> None:
    count = closure_components(word).count
    if count != 1:
        raise KnotInputError(f"closure has {count} components; need a knot")


def _burau_letter_columns(n: int, index: int, sign: int):
    """Nonzero entries of column ``index`` of the reduced Burau matrix.

    The reduced Burau representation sends s_i to the identity except in
    column i:  t in row i-1, -t in row i, 1 in row i+1 (rows that exist);
    the inverse has 1 in row i-1, -1/t in row i, 1/t in row i+1.
    """
    t = LaurentPolynomial.t
    if sign > 0:
        entries = {index: t(1, -1)}
        if index >= 2:
            entries[index - 1] = t(1)
        if index <= n - 2:
            entries[index + 1] = LaurentPolynomial.one()
    else:
        entries = {index: t(-1, -1)}
        if index >= 2:
            entries[index - 1] = LaurentPolynomial.one()
        if index <= n - 2:
            entries[index + 1] = t(-1)
    return entries


def reduced_burau(word: BraidWord) -> list[list[LaurentPolynomial]]:
    """The reduced Burau matrix of the word, (n-1) x (n-1) over Z[t, 1/t]."""
    n = word.strand_count
    size = n - 1
    zero = LaurentPolynomial.zero()
    one = LaurentPolynomial.one()
    m = [[one if r == c else zero for c in range(size)] for r in range(size)]
    for index, sign in word.letters:
        entries = _burau_letter_columns(n, index, sign)
        col = index - 1
        for r in range(size):
            acc = zero
            for k, poly in entries.items():
                cell = m[r][k - 1]
                if not cell.is_zero:
                    acc = acc + cell * poly
            m[r][col] = acc
    return m


def alexander_polynomial(word: BraidWord) -> LaurentPolynomial:
    """Alexander polynomial of the knot closure, exactly.

    Delta(t) is det(B(word) - I) * (1 - t) / (1 - t^n) up to units; the
    division is exact in Z[t, 1/t] and the result is normalized to the
    symmetric representative with Delta(1) = 1.
    """
    _require_knot(word)
    n = word.strand_count
    if n == 1:
        return LaurentPolynomial.one()
    m = reduced_burau(word)
    one = LaurentPolynomial.one()
    for i in range(n - 1):
        m[i][i] = m[i][i] - one
    det = laurent_det(m)
    quotient = det.divide_exact(geometric_sum(n))
    return normalize_alexander(quotient)


def normalize_alexander(poly: LaurentPolynomial) -> LaurentPolynomial:
    """Scale by +-t^k so the result is symmetric under t -> 1/t with value 1 at 1."""
    if poly.is_zero:
        raise KnotInputError("Alexander polynomial vanished; input was not a knot")
    lo, hi = poly.min_exp(), poly.max_exp()
    if (lo + hi) % 2 != 0:
        raise AssertionError("Alexander polynomial has odd exponent span")
    centered = poly.shift(-(lo + hi) // 2)
    if centered.mirror() != centered:
        raise AssertionError("Alexander polynomial is not palindromic")
    at_one = centered(1)
    if at_one not in (1, -1):
        raise AssertionError(f"Alexander polynomial has |Delta(1)| = {abs(at_one)}")
    return centered if at_one == 1 else centered.scale(-1)


def determinant(word: BraidWord) -> int:
    """|Delta(-1)|; always odd for a knot."""
    value = abs(alexander_polynomial(word)(-1))
    if value % 2 == 0:
        raise AssertionError(f"knot determinant came out even ({value})")
    return value


def arf(word: BraidWord) -> int:
    """Arf invariant via Murasugi: Delta(-1) = +-1 mod 8 iff Arf = 0."""
    residue = determinant(word) % 8
    if residue in (1, 7):
        return 0
    if residue in (3, 5):
        return 1
    raise AssertionError(f"determinant {residue} mod 8 is even; not a knot?")


def arf_consistency(report: ObstructionReport, arf_value: int) -> str:
    """Check sigma = 8 * Arf (mod 16) for a spin-state report.

    The signature of any spin filling of (0-surgery, s1) is 8*Arf mod 16,
    so in particular it must be a multiple of 8; any violation is reported
    as inconsistent.
    """
    if arf_value not in (0, 1):
        raise ValueError(f"Arf invariant must be 0 or 1, got {arf_value}")
    if report.sigma % 8 != 0:
        return ARF_INCONSISTENT
    if (report.sigma - 8 * arf_value) % 16 == 0:
        return ARF_CONSISTENT
    return ARF_INCONSISTENT


def seifert_matrix_oracle(word: BraidWord) -> list[list[int]]:
    """Seifert matrix of the Bennequin surface of the knot closure.

    One H1 generator per consecutive pair of occurrences of the same
    braid generator.  Entries follow the classical braid-surface rules:
    self-pairing -(e1+e2)/2 from the two band signs, a single off-diagonal
    unit between loops sharing a band, and a unit for properly interleaved
    loops on adjacent strand circles.  Used as an independent oracle for
    the Burau route.
    """
    _require_knot(word)
    occurrences: dict[int, list[int]] = {}
    for pos, (index, _) in enumerate(word.letters):
        occurrences.setdefault(index, []).append(pos)
    loops = []  # (index, first occurrence pos, second occurrence pos)
    for index in sorted(occurrences):
        positions = occurrences[index]
        for k in range(len(positions) - 1):
            loops.append((index, positions[k], positions[k + 1]))
    signs = {pos: sign for pos, (_, sign) in enumerate(word.letters)}
    rank = len(loops)
    v = [[0] * rank for _ in range(rank)]
    for a, (ia, a0, a1) in enumerate(loops):
        v[a][a] = -(signs[a0] + signs[a1]) // 2
        for b in range(a + 1, rank):
            ib, b0, b1 = loops[b]
            if ib == ia and b0 == a1:
                # consecutive loops sharing the middle band
                if signs[a1] > 0:
                    v[a][b] = 1
                else:
                    v[b][a] = -1
            elif ib == ia + 1:
                # loops on adjacent circles link only when properly
                # interleaved; the sign records which started first
                if a0 < b0 < a1 < b1:
                    v[a][b] = 1
                elif b0 < a0 < b1 < a1:
                    v[a][b] = -1
    return v


def alexander_from_seifert(v: list[list[int]]) -> LaurentPolynomial:
    """det(V - t V^T), normalized; the Seifert-route Alexander polynomial."""
    rank = len(v)
    if rank == 0:
        return LaurentPolynomial.one()
    t = LaurentPolynomial.t(1)
    rows = [
        [
            LaurentPolynomial.constant(v[i][j]) - t.scale(v[j][i])
            for j in range(rank)
        ]
        for i in range(rank)
    ]
    return normalize_alexander(laurent_det(rows))
