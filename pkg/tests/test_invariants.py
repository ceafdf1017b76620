"""Alexander polynomial (Burau vs Seifert oracle), determinant, Arf."""

import pytest

from kirbycalc.braid import BraidWord, parse_braid_word, torus_braid
from kirbycalc.invariants import (
    KnotInputError,
    alexander_from_seifert,
    alexander_polynomial,
    arf,
    arf_consistency,
    determinant,
    seifert_matrix_oracle,
)
from kirbycalc.laurent import LaurentPolynomial
from kirbycalc.state import ARF_CONSISTENT, ARF_INCONSISTENT, obstruction_verdict

from conftest import random_knot_braid

TREFOIL = "s1^3"
FIG8 = "(s1 s2^-1)^2"


def poly(d):
    return LaurentPolynomial.from_dict(d)


def test_unknot_polynomial_is_one():
    assert alexander_polynomial(BraidWord(1, ())).is_one
    # stabilized unknots too
    assert alexander_polynomial(parse_braid_word("s1", 2)).is_one
    assert alexander_polynomial(parse_braid_word("s1 s2", 3)).is_one


def test_trefoil_polynomial():
    assert alexander_polynomial(parse_braid_word(TREFOIL, 2)) == poly({1: 1, 0: -1, -1: 1})


def test_figure_eight_polynomial():
    assert alexander_polynomial(parse_braid_word(FIG8, 3)) == poly({1: -1, 0: 3, -1: -1})


def test_rejects_multi_component():
    with pytest.raises(KnotInputError):
        alexander_polynomial(parse_braid_word("s1^2", 2))
    with pytest.raises(KnotInputError):
        seifert_matrix_oracle(BraidWord(2, ()))


def test_normalization_symmetric_and_one_at_one(rng):
    for _ in range(25):
        word = random_knot_braid(rng, 4, 12)
        delta = alexander_polynomial(word)
        assert delta.mirror() == delta
        assert delta(1) == 1


def test_seifert_matrix_trefoil():
    v = seifert_matrix_oracle(parse_braid_word(TREFOIL, 2))
    assert v == [[-1, 1], [0, -1]]
    assert alexander_from_seifert(v) == poly({1: 1, 0: -1, -1: 1})


def test_seifert_matrix_empty_word():
    assert seifert_matrix_oracle(BraidWord(1, ())) == []
    assert alexander_from_seifert([]).is_one


def test_seifert_matrix_figure_eight():
    v = seifert_matrix_oracle(parse_braid_word(FIG8, 3))
    assert len(v) == 2
    assert alexander_from_seifert(v) == poly({1: -1, 0: 3, -1: -1})


def _int_det(matrix):
    from fractions import Fraction

    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    assert det.denominator == 1
    return int(det)


def test_seifert_form_is_symplectic(rng):
    """det(V - V^T) = 1 for every knot closure tested."""
    for _ in range(25):
        word = random_knot_braid(rng, 4, 12)
        v = seifert_matrix_oracle(word)
        form = [[v[i][j] - v[j][i] for j in range(len(v))] for i in range(len(v))]
        assert _int_det(form) == 1, f"det(V - V^T) != 1 for {word}"


def test_burau_equals_seifert_oracle(rng):
    for _ in range(30):
        word = random_knot_braid(rng, 4, 12)
        burau = alexander_polynomial(word)
        seifert = alexander_from_seifert(seifert_matrix_oracle(word))
        assert burau == seifert, f"disagreement on {word}"


def test_determinants():
    assert determinant(BraidWord(1, ())) == 1
    assert determinant(parse_braid_word(TREFOIL, 2)) == 3
    assert determinant(parse_braid_word(FIG8, 3)) == 5


def test_determinant_odd_for_knots(rng):
    for _ in range(20):
        word = random_knot_braid(rng, 4, 10)
        assert determinant(word) % 2 == 1


def test_arf_values():
    assert arf(BraidWord(1, ())) == 0
    assert arf(parse_braid_word(FIG8, 3)) == 1  # det 5 = -3 mod 8
    assert arf(parse_braid_word(TREFOIL, 2)) == 1
    assert arf(torus_braid(3, 5)) == 0  # det(T(3,5)) = 1


def test_arf_consistency():
    fig8_like = obstruction_verdict(11, 8)
    assert arf_consistency(fig8_like, 1) == ARF_CONSISTENT
    assert arf_consistency(fig8_like, 0) == ARF_INCONSISTENT
    slice16 = obstruction_verdict(21, 16)
    assert arf_consistency(slice16, 0) == ARF_CONSISTENT
    assert arf_consistency(obstruction_verdict(10, 4), 0) == ARF_INCONSISTENT  # not 0 mod 8
    with pytest.raises(ValueError):
        arf_consistency(fig8_like, 2)
