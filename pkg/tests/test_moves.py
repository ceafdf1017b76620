"""Move engine: the paper's pipelines, per-move contracts, undo/replay."""

import random

import pytest

from kirbycalc.braid import BraidWord, parse_braid_word, torus_braid
from kirbycalc.moves import (
    AssertUnknot,
    BlowDown,
    BlowUpCoherent,
    BlowUpDeclared,
    BlowUpMeridian,
    Endgame,
    MoveError,
    PieceDecl,
    ReplacePieceAsserted,
    SlideAbstract,
    apply_move,
    assert_unknot,
    blow_down,
    blow_up_coherent,
    blow_up_declared,
    blow_up_meridian,
    connected_sum,
    endgame,
    init_from_knot,
    init_from_pieces,
    replace_piece_asserted,
    replay_matches,
    session_from_doc,
    session_to_doc,
    slide_abstract,
    undo,
)
from kirbycalc.signature import exact_signature
from kirbycalc.state import UNKNOT_UNKNOWN, UNKNOT_VERIFIED, obstruction_verdict

FIG8 = "(s1 s2^-1)^2"


# -- construction -----------------------------------------------------------


def test_init_from_torus_word():
    session = init_from_knot(torus_braid(3, 8))
    assert session.framed.linking == [[0]]
    assert session.framed.mask_ids() == ["K"]
    assert (session.framed.b2, session.framed.sigma) == (1, 0)


def test_init_rejects_links():
    with pytest.raises(MoveError) as err:
        init_from_knot(parse_braid_word("s1^2", 2))
    assert err.value.reason == "multi_component"


def test_init_from_pieces_full_mode_computes_signature():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", -1, True), PieceDecl("B", "unknot", -1, True)]
    )
    assert session.framed.mode == "full"
    assert (session.framed.b2, session.framed.sigma) == (2, -2)


def test_init_from_pieces_rejects_broken_congruence():
    # a single odd-framed piece with no characteristic mark
    with pytest.raises(Exception):
        init_from_pieces([PieceDecl("A", "unknot", 1, False)])


# -- coherent blow-ups -------------------------------------------------------


def test_torus_blow_ups_match_paper():
    session = init_from_knot(torus_braid(3, 8))
    for _ in range(3):
        session = blow_up_coherent(session, -1, 1, 3)
    framed = session.framed
    assert framed.component("K").framing == -27
    circles = [c for c in framed.components if c.id != "K"]
    assert [c.framing for c in circles] == [-1, -1, -1]
    assert all(not c.characteristic for c in circles)  # p = 3 is odd
    assert (framed.b2, framed.sigma) == (4, -3)
    session.check(full_signature=True)


def test_blow_up_on_stale_piece_rejected():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    session = blow_up_declared(session, -1, {"K": 0})
    with pytest.raises(MoveError) as err:
        blow_up_coherent(session, -1, 1, 3)
    assert err.value.reason == "piece_stale"


def test_blow_up_bad_locus():
    session = init_from_knot(torus_braid(3, 8))
    with pytest.raises(MoveError) as err:
        blow_up_coherent(session, -1, 1, 4)
    assert err.value.reason == "bad_locus"


def test_blow_up_changes_signature_by_sign():
    session = init_from_knot(torus_braid(3, 8))
    for sign in (1, -1, -1, 1):
        before = exact_signature(session.framed.linking)
        session = blow_up_coherent(session, sign, 1, 2)
        after = exact_signature(session.framed.linking)
        assert after - before == sign


# -- declared blow-ups -------------------------------------------------------


def test_declared_zero_linking_circle_joins_mask():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    session = blow_up_declared(session, -1, {"K": 0})
    framed = session.framed
    assert framed.component("K").framing == 0
    circle = framed.component("c1")
    assert circle.framing == -1 and circle.characteristic
    assert session.piece("K").stale  # the curve touched K's strands


def test_fig8_declared_route_reaches_trefoil_stage():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    session = blow_up_declared(session, -1, {"K": 0})
    session = blow_up_declared(session, -1, {"K": 0})
    assert (session.framed.b2, session.framed.sigma) == (3, -2)
    session = slide_abstract(session, "c1", "c2", +1)
    framed = session.framed
    assert framed.mask_ids() == ["K", "c1"]
    assert framed.component("c1").framing == -2
    assert framed.component("c1").unknot == UNKNOT_VERIFIED
    assert (framed.b2, framed.sigma) == (3, -2)
    session.check(full_signature=True)


def test_declared_matches_coherent_matrix_effect():
    base = init_from_knot(torus_braid(3, 8))
    via_coherent = blow_up_coherent(base, -1, 1, 3)
    via_declared = blow_up_declared(base, -1, {"K": 3})
    assert via_coherent.framed.linking == via_declared.framed.linking
    assert via_coherent.framed.mask_ids() == via_declared.framed.mask_ids()


def test_split_blow_up_then_blow_down_is_identity():
    session = init_from_knot(torus_braid(3, 8))
    session = blow_up_coherent(session, -1, 1, 3)
    before_matrix = [row[:] for row in session.framed.linking]
    before_counters = (session.framed.b2, session.framed.sigma)
    stepped = blow_up_declared(session, 1, {})
    circle = stepped.framed.components[-1].id
    stepped = blow_down(stepped, circle)
    assert stepped.framed.linking == before_matrix
    assert (stepped.framed.b2, stepped.framed.sigma) == before_counters


# -- meridians ----------------------------------------------------------------


def test_meridian_example_framing_minus2():
    session = init_from_pieces([PieceDecl("U", "unknot", -2, True)], counters=(1, 0))
    session = blow_up_meridian(session, +1, "U")
    framed = session.framed
    assert framed.component("U").framing == -1
    circle = framed.components[-1]
    assert not circle.characteristic  # links the mask once, odd
    assert circle.unknot == UNKNOT_VERIFIED


def test_meridian_eight_times():
    session = init_from_pieces([PieceDecl("U", "unknot", -9, True)], counters=(1, 0))
    session = blow_up_meridian(session, +1, "U", times=8)
    assert session.framed.component("U").framing == -1
    assert (session.framed.b2, session.framed.sigma) == (9, 8)
    assert session.log[-1].delta_b2 == 8 and session.log[-1].delta_sigma == 8


def test_meridian_of_non_characteristic_warns_and_joins():
    session = init_from_knot(torus_braid(3, 8))
    session = blow_up_coherent(session, -1, 1, 3)  # c1 not characteristic
    session = blow_up_meridian(session, +1, "c1")
    circle = session.framed.components[-1]
    assert circle.characteristic
    assert session.warnings and "meridian" in session.warnings[0]


def test_meridian_bad_times():
    session = init_from_knot(torus_braid(3, 8))
    with pytest.raises(MoveError) as err:
        blow_up_meridian(session, 1, "K", times=0)
    assert err.value.reason == "bad_times"


# -- blow-downs ---------------------------------------------------------------


def test_blow_down_split_negative_unknot():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", -1, True), PieceDecl("B", "unknot", 0, False)],
        counters=(5, -2),
    )
    session = blow_down(session, "A")
    assert (session.framed.b2, session.framed.sigma) == (4, -1)
    assert session.framed.mask_ids() == []


def test_blow_down_pair_from_13_6():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", -1, True), PieceDecl("B", "unknot", -1, True)],
        counters=(13, 6),
    )
    session = blow_down(session, "A")
    session = blow_down(session, "B")
    assert (session.framed.b2, session.framed.sigma) == (11, 8)


def test_blow_down_rejects_non_unit_framing():
    session = init_from_pieces([PieceDecl("U", "unknot", -2, True)], counters=(1, 0))
    with pytest.raises(MoveError) as err:
        blow_down(session, "U")
    assert err.value.reason == "framing_not_unit"


def test_blow_down_rejects_unknown_unknot_status():
    session = init_from_knot(parse_braid_word("s1^3 s1^-2", 2))  # trefoil-ish word
    session = blow_up_meridian(session, +1, "K")  # framing 1 now
    with pytest.raises(MoveError) as err:
        blow_down(session, "K")
    assert err.value.reason == "unknot_status_unknown"


def test_blow_down_twists_linked_components():
    # two +1 circles each meeting A once; blowing the first down twists A
    # but leaves the second circle's linking with A intact
    session = init_from_pieces([PieceDecl("A", "unknot", 0, False)], counters=(1, 0))
    session = blow_up_declared(session, +1, {"A": 1})
    session = blow_up_declared(session, +1, {"A": 1})
    session = blow_down(session, "c1")
    framed = session.framed
    assert framed.component("A").framing == 1  # 0 +1 +1 -1
    a, c2 = framed.index_of("A"), framed.index_of("c2")
    assert framed.linking[a][c2] == 1
    assert framed.component("c2").framing == 1
    assert (framed.b2, framed.sigma) == (2, 1)


# -- slides -------------------------------------------------------------------


def test_slide_diag11_is_unimodular_congruence():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", 1, True), PieceDecl("B", "unknot", 1, True)],
        counters=None,
    )
    assert session.framed.sigma == 2
    session = slide_abstract(session, "A", "B", +1)
    framed = session.framed
    assert framed.component("A").framing == 2  # n1 + n2 + 2 lk = 1 + 1 + 0
    assert framed.linking == [[2, 1], [1, 1]]
    assert exact_signature(framed.linking) == 2 == framed.sigma


def test_slide_then_inverse_slide_restores_matrix():
    session = init_from_knot(torus_braid(3, 8))
    session = blow_up_coherent(session, -1, 1, 3)
    session = blow_up_coherent(session, -1, 1, 2)
    matrix = [row[:] for row in session.framed.linking]
    session = slide_abstract(session, "c1", "c2", +1)
    session = slide_abstract(session, "c1", "c2", -1)
    assert session.framed.linking == matrix


def test_slide_rejects_self():
    session = init_from_knot(torus_braid(3, 8))
    with pytest.raises(MoveError) as err:
        slide_abstract(session, "K", "K")
    assert err.value.reason == "self_slide"


def test_slide_mask_transport_i_only():
    # moving characteristic, over non-characteristic: over joins the mask
    session = init_from_pieces(
        [PieceDecl("A", "unknot", 0, True), PieceDecl("B", "unknot", 2, False)],
        counters=(2, 0),
    )
    # congruence: row A: lk(A,A)=0 = mask sum lk(A,A) -> ok; row B: lk(B,B)=2 even, lk(B,A)=0
    session = slide_abstract(session, "A", "B", +1)
    framed = session.framed
    assert framed.component("A").characteristic
    assert framed.component("B").characteristic  # joined to preserve the class
    framed.check()


def test_slide_unknot_status_unknown_when_linked():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", 0, False), PieceDecl("B", "unknot", 0, False)],
        counters=(2, 0),
    )
    session = blow_up_declared(session, +1, {"A": 1, "B": 1})
    session = slide_abstract(session, "c1", "A", +1)  # lk(c1, A) = 1 != 0
    assert session.framed.component("c1").unknot == UNKNOT_UNKNOWN


# -- replace / assert ---------------------------------------------------------


def test_replace_swaps_word_and_logs_trust_point():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    session = blow_up_declared(session, -1, {"K": 0})
    assert session.piece("K").stale
    session = replace_piece_asserted(
        session, "K", parse_braid_word("(s1 s2)^2", 3), 0, label="trefoil"
    )
    piece = session.piece("K")
    assert not piece.stale
    assert len(session.trust_points) == 1
    assert session.trust_points[0].kind == "isotopy"
    assert session.trust_points[0].label == "trefoil"


def test_replace_framing_mismatch():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    with pytest.raises(MoveError) as err:
        replace_piece_asserted(session, "K", parse_braid_word("(s1 s2)^2", 3), -6)
    assert err.value.reason == "framing_mismatch"


def test_replace_component_count_mismatch():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    with pytest.raises(MoveError) as err:
        replace_piece_asserted(session, "K", parse_braid_word("s1^2", 2), 0)
    assert err.value.reason == "component_count_mismatch"


def test_replace_verified_unknot_by_empty_braid_is_free():
    session = init_from_knot(BraidWord(1, ()))
    assert session.framed.component("K").unknot == UNKNOT_VERIFIED
    session = replace_piece_asserted(session, "K", BraidWord(1, ()), 0)
    assert session.trust_points == []


def test_assert_unknot_records_trust_point():
    session = init_from_knot(parse_braid_word("s1^3", 2))
    session = assert_unknot(session, "K")
    assert session.framed.component("K").unknot == "asserted"
    assert len(session.trust_points) == 1
    # idempotent
    session = assert_unknot(session, "K")
    assert len(session.trust_points) == 1


# -- endgame ------------------------------------------------------------------


def test_endgame_example_fig8_framings():
    session = init_from_pieces(
        [PieceDecl("T", "unknot", -9, True), PieceDecl("U", "unknot", -2, True)],
        counters=(4, -3),
    )
    session, report = endgame(session)
    assert (report.b2, report.sigma) == (11, 8)
    assert report.verdict == "not_smoothly_slice"


def test_endgame_example_framings_minus2_minus16():
    session = init_from_pieces(
        [PieceDecl("A", "unknot", -2, True), PieceDecl("B", "unknot", -16, True)],
        counters=(7, -2),
    )
    session, report = endgame(session)
    assert (report.b2, report.sigma, report.margin) == (21, 16, -8)


@pytest.mark.parametrize("p,k", [(3, 1), (3, 3), (5, 2), (7, 1)])
def test_endgame_closed_form_single_unknot(p, k):
    session = init_from_pieces(
        [PieceDecl("C", "unknot", -k * p * p, True)], counters=(1 + k, -k)
    )
    session, report = endgame(session)
    assert (report.b2, report.sigma) == (k * p * p + k - 1, k * p * p - k)


def test_endgame_positive_and_zero_framings():
    session = init_from_pieces(
        [PieceDecl("P", "unknot", 3, True), PieceDecl("Z", "unknot", 0, False)],
        counters=(3, 1),
    )
    # congruence: P odd framing in mask ok; Z even not in mask ok
    session, report = endgame(session)
    # f=3: two negative meridians + blow down: db2 = 1, dsigma = -3
    assert (report.b2, report.sigma) == (4, -2)


def test_endgame_zero_framed_characteristic():
    session = init_from_pieces([PieceDecl("Z", "unknot", 0, True)], counters=(1, 0))
    session, report = endgame(session)
    assert (report.b2, report.sigma) == (1, 0)
    assert report.verdict == "inconclusive"


def test_endgame_rejects_linked_characteristic_pair():
    session = init_from_pieces([PieceDecl("A", "unknot", 0, False)], counters=(1, 0))
    session = blow_up_declared(session, +1, {"A": 2})  # c1 joins the mask
    session = blow_up_declared(session, +1, {"c1": 2})  # c2 joins too, linked to c1
    framed = session.framed
    assert framed.component("c1").characteristic and framed.component("c2").characteristic
    assert framed.linking[framed.index_of("c1")][framed.index_of("c2")] == 2
    with pytest.raises(MoveError) as err:
        apply_move(session, Endgame())
    assert err.value.reason == "char_not_split"


def test_endgame_rejects_unknown_unknot():
    session = init_from_knot(parse_braid_word("s1^3", 2))  # trefoil, framing 0, char
    with pytest.raises(MoveError) as err:
        apply_move(session, Endgame())
    assert err.value.reason == "unknot_status_unknown"
    assert "K" in str(err.value)


def test_endgame_resolves_unknot_from_live_word():
    # the word only reveals the unknot after free reduction + destabilization
    session = init_from_knot(parse_braid_word("(s1 s2)^-1", 3))
    session, report = endgame(session)
    assert (report.b2, report.sigma) == (1, 0)


# -- connected sums -----------------------------------------------------------


def test_connected_sum_formulas():
    fig8 = obstruction_verdict(11, 8)
    total = connected_sum(fig8, fig8)
    assert (total.b2, total.sigma, total.margin) == (23, 16, 0)
    assert total.verdict == "inconclusive"


def test_connected_sum_with_unknot_state():
    report = connected_sum(obstruction_verdict(11, 8), obstruction_verdict(1, 0))
    assert (report.b2, report.sigma) == (13, 8)


def test_connected_sum_accumulates_trust_points():
    from kirbycalc.state import TrustPoint

    a = obstruction_verdict(21, 16, trust_points=(TrustPoint("isotopy", "K", "4_1"),))
    b = obstruction_verdict(11, 8)
    total = connected_sum(a, b)
    assert len(total.trust_points) == 1
    assert (total.b2, total.sigma, total.margin) == (33, 24, 0)
    assert total.verdict == "inconclusive"


def test_endgame_equals_hand_executed_constituents():
    """The composite's totals re-derived by running the meridian and
    blow-down moves one at a time."""
    decls = [
        PieceDecl("A", "unknot", -5, True),
        PieceDecl("B", "unknot", 2, False),
        PieceDecl("C", "unknot", 3, True),
    ]
    composite, report = endgame(init_from_pieces(decls, counters=(4, -1)))

    manual = init_from_pieces(decls, counters=(4, -1))
    manual = blow_up_meridian(manual, +1, "A", times=4)  # -5 -> -1
    manual = blow_down(manual, "A")
    manual = blow_up_meridian(manual, -1, "C", times=2)  # 3 -> 1
    manual = blow_down(manual, "C")
    assert (manual.framed.b2, manual.framed.sigma) == (report.b2, report.sigma)
    assert manual.framed.linking == composite.framed.linking
    assert manual.framed.mask_ids() == [] == composite.framed.mask_ids()
    # and the per-component closed forms: f<0 gives (|f|-2, |f|), f>0 gives (f-2, -f)
    assert report.b2 == 4 + (5 - 2) + (3 - 2)
    assert report.sigma == -1 + 5 - 3


# -- log, undo, replay --------------------------------------------------------


def test_undo_restores_digest():
    session = init_from_knot(torus_braid(3, 8))
    initial = session.digest()
    stepped = blow_up_coherent(session, -1, 1, 3)
    assert undo(stepped).digest() == initial


def test_undo_endgame_is_single_composite():
    session = init_from_pieces([PieceDecl("U", "unknot", -2, True)], counters=None)
    pre = session.digest()
    stepped, _ = endgame(session)
    assert len(stepped.log) == 1
    assert undo(stepped).digest() == pre


def test_undo_empty_log():
    session = init_from_knot(torus_braid(3, 8))
    with pytest.raises(MoveError) as err:
        undo(session)
    assert err.value.reason == "empty_log"


def test_log_deltas_sum_to_counter_change():
    session = init_from_knot(torus_braid(3, 8))
    session = blow_up_coherent(session, -1, 1, 3)
    session = blow_up_meridian(session, +1, "K", times=4)
    session = blow_up_declared(session, -1, {})
    assert sum(e.delta_b2 for e in session.log) == session.framed.b2 - 1
    assert sum(e.delta_sigma for e in session.log) == session.framed.sigma - 0


def test_session_doc_round_trip():
    session = init_from_knot(parse_braid_word(FIG8, 3))
    session = blow_up_declared(session, -1, {"K": 0})
    session = slide_abstract(session, "c1", "K", +1)
    doc = session_to_doc(session)
    back = session_from_doc(doc)
    assert back.digest() == session.digest()
    assert session_to_doc(back) == doc


# -- randomized move-algebra properties (small; the big run is acceptance) ----


def _random_session_walk(rng: random.Random, moves: int):
    session = init_from_knot(torus_braid(3, rng.choice([4, 5, 7, 8])))
    for _ in range(moves):
        live = [p for p in session.pieces if p.word is not None and not p.stale]
        ids = [c.id for c in session.framed.components]
        choices = ["declared", "meridian"]
        if live:
            choices.append("coherent")
        if len(ids) >= 2:
            choices.append("slide")
        kind = rng.choice(choices)
        before_sig = exact_signature(session.framed.linking)
        if kind == "coherent":
            piece = rng.choice(live)
            n = piece.word.strand_count
            lo = rng.randint(1, n)
            hi = rng.randint(lo, n)
            sign = rng.choice([1, -1])
            session = blow_up_coherent(session, sign, lo, hi, piece=piece.id)
            expected_delta = sign
        elif kind == "declared":
            sign = rng.choice([1, -1])
            vec = {cid: rng.randint(-2, 2) for cid in rng.sample(ids, rng.randint(0, len(ids)))}
            session = blow_up_declared(session, sign, vec)
            expected_delta = sign
        elif kind == "meridian":
            sign = rng.choice([1, -1])
            session = blow_up_meridian(session, sign, rng.choice(ids))
            expected_delta = sign
        else:
            moving, over = rng.sample(ids, 2)
            session = slide_abstract(session, moving, over, rng.choice([1, -1]))
            expected_delta = 0
        after_sig = exact_signature(session.framed.linking)
        assert after_sig - before_sig == expected_delta
        assert after_sig == session.framed.sigma
        session.framed.check()
    return session


def test_random_walks_keep_invariants(rng):
    for _ in range(40):
        session = _random_session_walk(rng, rng.randint(1, 6))
        assert replay_matches(session)
