"""The Kirby move engine.

A session tracks geometric braid pieces alongside the abstract framed
state, applies typed moves (blow-ups of several flavors, blow-downs,
handle slides, asserted replacements), transports the characteristic
mask, keeps (b2, sigma) exactly, and logs every move with a pre-state
digest so the whole derivation can be replayed, undone, and exported.

Counter bookkeeping is the paper-style count of blow-ups and blow-downs
with signs; in full mode the linking matrix of the whole diagram is held
too, so the exact signature is available as an internal oracle for the
incremental counters.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

from .braid import (
    BraidWord,
    TwistLocus,
    closure_components,
    format_braid_word,
    insert_full_twist,
    parse_braid_word,
    simplify_and_detect_unknot,
    strands_at,
)
from .braid import UNKNOT_VERIFIED as WORD_VERIFIED
from .state import (
    MODE_FULL,
    MODE_REDUCED,
    ORIGIN_BLOWUP,
    ORIGIN_INITIAL,
    ORIGIN_REPLACEMENT,
    ORIGIN_SLIDE,
    UNKNOT_ASSERTED,
    UNKNOT_UNKNOWN,
    UNKNOT_VERIFIED,
    Component,
    FramedLinkState,
    ObstructionReport,
    TrustPoint,
    is_spin,
    obstruction_verdict,
)


class MoveError(ValueError):
    """A move precondition failed; ``reason`` is a machine-readable code."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _cindex(framed: FramedLinkState, component_id: str) -> int:
    try:
        return framed.index_of(component_id)
    except KeyError:
        raise MoveError(
            "unknown_component", f"no component named {component_id!r}"
        ) from None


# ---------------------------------------------------------------------------
# Moves


@dataclass(frozen=True)
class BlowUpCoherent:
    sign: int
    piece: str
    lo: int
    hi: int
    at: object = "end"  # "start" | "end" | letter index
    reversed_form: bool = False


@dataclass(frozen=True)
class BlowUpDeclared:
    sign: int
    linking: tuple[tuple[str, int], ...]  # (component id, declared linking)


@dataclass(frozen=True)
class BlowUpMeridian:
    sign: int
    component: str
    times: int = 1


@dataclass(frozen=True)
class BlowDown:
    component: str


@dataclass(frozen=True)
class SlideAbstract:
    moving: str
    over: str
    orientation: int = 1


@dataclass(frozen=True)
class ReplacePieceAsserted:
    component: str
    strand_count: int
    word: str
    framing: int
    label: str | None = None


@dataclass(frozen=True)
class AssertUnknot:
    component: str


@dataclass(frozen=True)
class Endgame:
    pass


@dataclass(frozen=True)
class ConnectedSum:
    summand: dict  # ObstructionReport document of the other side
    source: str | None = None  # script path, for export


_MOVE_TYPES = {
    "blowup_coherent": BlowUpCoherent,
    "blowup_declared": BlowUpDeclared,
    "blowup_meridian": BlowUpMeridian,
    "blowdown": BlowDown,
    "slide": SlideAbstract,
    "replace": ReplacePieceAsserted,
    "assert_unknot": AssertUnknot,
    "endgame": Endgame,
    "sum": ConnectedSum,
}


def move_to_doc(move) -> dict:
    if isinstance(move, BlowUpCoherent):
        return {
            "type": "blowup_coherent",
            "sign": move.sign,
            "piece": move.piece,
            "strands": [move.lo, move.hi],
            "at": move.at,
            "reversed": move.reversed_form,
        }
    if isinstance(move, BlowUpDeclared):
        return {
            "type": "blowup_declared",
            "sign": move.sign,
            "linking": {cid: v for cid, v in move.linking},
        }
    if isinstance(move, BlowUpMeridian):
        return {
            "type": "blowup_meridian",
            "sign": move.sign,
            "component": move.component,
            "times": move.times,
        }
    if isinstance(move, BlowDown):
        return {"type": "blowdown", "component": move.component}
    if isinstance(move, SlideAbstract):
        return {
            "type": "slide",
            "moving": move.moving,
            "over": move.over,
            "orientation": move.orientation,
        }
    if isinstance(move, ReplacePieceAsserted):
        return {
            "type": "replace",
            "component": move.component,
            "strands": move.strand_count,
            "word": move.word,
            "framing": move.framing,
            "label": move.label,
        }
    if isinstance(move, AssertUnknot):
        return {"type": "assert_unknot", "component": move.component}
    if isinstance(move, Endgame):
        return {"type": "endgame"}
    if isinstance(move, ConnectedSum):
        return {"type": "sum", "summand": move.summand, "source": move.source}
    raise TypeError(f"not a move: {move!r}")


def move_from_doc(doc: dict):
    kind = doc.get("type")
    if kind == "blowup_coherent":
        lo, hi = doc["strands"]
        return BlowUpCoherent(
            sign=doc["sign"],
            piece=doc.get("piece"),
            lo=lo,
            hi=hi,
            at=doc.get("at", "end"),
            reversed_form=doc.get("reversed", False),
        )
    if kind == "blowup_declared":
        return BlowUpDeclared(
            sign=doc["sign"],
            linking=tuple(sorted(doc.get("linking", {}).items())),
        )
    if kind == "blowup_meridian":
        return BlowUpMeridian(
            sign=doc["sign"], component=doc["component"], times=doc.get("times", 1)
        )
    if kind == "blowdown":
        return BlowDown(component=doc["component"])
    if kind == "slide":
        return SlideAbstract(
            moving=doc["moving"],
            over=doc["over"],
            orientation=doc.get("orientation", 1),
        )
    if kind == "replace":
        return ReplacePieceAsserted(
            component=doc["component"],
            strand_count=doc["strands"],
            word=doc["word"],
            framing=doc["framing"],
            label=doc.get("label"),
        )
    if kind == "assert_unknot":
        return AssertUnknot(component=doc["component"])
    if kind == "endgame":
        return Endgame()
    if kind == "sum":
        return ConnectedSum(summand=doc["summand"], source=doc.get("source"))
    raise MoveError("unknown_move", f"unknown move type {kind!r}")


# ---------------------------------------------------------------------------
# Session state


@dataclass
class Piece:
    """A geometric braid piece presenting one closure component.

    ``stale`` means the stored word is no longer a certified presentation
    (a declared-locus move or slide touched the component); the abstract
    data stays exact but word-based checks are disabled until an asserted
    replacement refreshes it.
    """

    id: str
    strand_count: int
    word: BraidWord | None
    component_id: str
    stale: bool = False

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "strands": self.strand_count,
            "word": format_braid_word(self.word) if self.word is not None else None,
            "component": self.component_id,
            "stale": self.stale,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Piece":
        word = None
        if doc["word"] is not None:
            word = parse_braid_word(doc["word"], doc["strands"])
        return Piece(
            id=doc["id"],
            strand_count=doc["strands"],
            word=word,
            component_id=doc["component"],
            stale=doc["stale"],
        )


@dataclass(frozen=True)
class PieceDecl:
    """Setup declaration of one piece (a braid closure or a literal unknot)."""

    id: str
    kind: str  # "braid" | "unknot"
    framing: int
    characteristic: bool
    strand_count: int = 1
    word: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "framing": self.framing,
            "characteristic": self.characteristic,
            "strands": self.strand_count,
            "word": self.word,
        }

    @staticmethod
    def from_doc(doc: dict) -> "PieceDecl":
        return PieceDecl(
            id=doc["id"],
            kind=doc["kind"],
            framing=doc["framing"],
            characteristic=doc["characteristic"],
            strand_count=doc.get("strands", 1),
            word=doc.get("word", ""),
        )


@dataclass(frozen=True)
class Setup:
    """The initial declaration a session was built from (replay anchor)."""

    kind: str  # "knot" | "pieces"
    strand_count: int = 0
    word: str = ""
    pieces: tuple[PieceDecl, ...] = ()
    counters: tuple[int, int] | None = None

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "strands": self.strand_count,
            "word": self.word,
            "pieces": [p.to_doc() for p in self.pieces],
            "counters": list(self.counters) if self.counters else None,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Setup":
        counters = doc.get("counters")
        return Setup(
            kind=doc["kind"],
            strand_count=doc.get("strands", 0),
            word=doc.get("word", ""),
            pieces=tuple(PieceDecl.from_doc(p) for p in doc.get("pieces", [])),
            counters=tuple(counters) if counters else None,
        )


@dataclass
class LogEntry:
    move: object
    pre_digest: str
    delta_b2: int
    delta_sigma: int

    def to_doc(self) -> dict:
        return {
            "move": move_to_doc(self.move),
            "pre_digest": self.pre_digest,
            "delta_b2": self.delta_b2,
            "delta_sigma": self.delta_sigma,
        }


@dataclass
class SessionState:
    setup: Setup
    framed: FramedLinkState
    pieces: list[Piece]
    log: list[LogEntry] = field(default_factory=list)
    trust_points: list[TrustPoint] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    circle_counter: int = 0
    report: ObstructionReport | None = None

    # -- structure ---------------------------------------------------------

    def copy(self) -> "SessionState":
        return SessionState(
            setup=self.setup,
            framed=self.framed.copy(),
            pieces=[replace(p) for p in self.pieces],
            log=list(self.log),
            trust_points=list(self.trust_points),
            warnings=list(self.warnings),
            circle_counter=self.circle_counter,
            report=self.report,
        )

    def piece_for_component(self, component_id: str) -> Piece | None:
        for piece in self.pieces:
            if piece.component_id == component_id:
                return piece
        return None

    def piece(self, piece_id: str) -> Piece:
        for piece in self.pieces:
            if piece.id == piece_id:
                return piece
        raise MoveError("unknown_piece", f"no piece named {piece_id!r}")

    def next_circle_id(self) -> str:
        self.circle_counter += 1
        return f"c{self.circle_counter}"

    def state_doc(self) -> dict:
        doc = self.framed.to_doc()
        doc["pieces"] = [p.to_doc() for p in self.pieces]
        doc["trust_points"] = [t.to_doc() for t in self.trust_points]
        doc["warnings"] = list(self.warnings)
        doc["circle_counter"] = self.circle_counter
        doc["report"] = self.report.to_doc() if self.report else None
        return doc

    def digest(self) -> str:
        blob = json.dumps(self.state_doc(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def check(self, full_signature: bool = False) -> None:
        self.framed.check(full_signature=full_signature)


# ---------------------------------------------------------------------------
# Session construction


def init_from_knot(word: BraidWord, component_id: str = "K") -> SessionState:
    """Session for a 0-framed knot: the single 2-handle picture.

    The knot itself is the characteristic link (the spin structure that
    does not extend over the handle), so the state starts with mask {K},
    b2 = 1, sigma = 0, in full mode.
    """
    partition = closure_components(word)
    if partition.count != 1:
        raise MoveError(
            "multi_component",
            f"initial braid closure has {partition.count} components; need a knot",
        )
    unknot = UNKNOT_VERIFIED if word.strand_count == 1 and not word.letters else UNKNOT_UNKNOWN
    component = Component(
        id=component_id,
        framing=0,
        characteristic=True,
        unknot=unknot,
        origin=ORIGIN_INITIAL,
    )
    framed = FramedLinkState(
        components=[component], linking=[[0]], b2=1, sigma=0, mode=MODE_FULL
    )
    setup = Setup(kind="knot", strand_count=word.strand_count, word=format_braid_word(word))
    session = SessionState(
        setup=setup,
        framed=framed,
        pieces=[Piece(component_id, word.strand_count, word, component_id)],
    )
    session.check()
    return session


def init_from_pieces(
    decls: list[PieceDecl], counters: tuple[int, int] | None = None
) -> SessionState:
    """Session from declared split pieces, optionally with ambient counters.

    With counters the state is reduced-mode (part of the diagram is not
    tracked); without, the declared pieces are the whole diagram and the
    state is full-mode with sigma computed exactly.
    """
    from .signature import exact_signature

    components: list[Component] = []
    pieces: list[Piece] = []
    seen: set[str] = set()
    for decl in decls:
        if decl.id in seen:
            raise MoveError("duplicate_piece", f"piece {decl.id!r} declared twice")
        seen.add(decl.id)
        if decl.kind == "unknot":
            components.append(
                Component(
                    id=decl.id,
                    framing=decl.framing,
                    characteristic=decl.characteristic,
                    unknot=UNKNOT_VERIFIED,
                    origin=ORIGIN_INITIAL,
                    round_circle=True,
                )
            )
            pieces.append(Piece(decl.id, 1, None, decl.id))
        else:
            word = parse_braid_word(decl.word, decl.strand_count)
            partition = closure_components(word)
            if partition.count != 1:
                raise MoveError(
                    "multi_component",
                    f"piece {decl.id!r} closure has {partition.count} components",
                )
            unknot = (
                UNKNOT_VERIFIED
                if word.strand_count == 1 and not word.letters
                else UNKNOT_UNKNOWN
            )
            components.append(
                Component(
                    id=decl.id,
                    framing=decl.framing,
                    characteristic=decl.characteristic,
                    unknot=unknot,
                    origin=ORIGIN_INITIAL,
                )
            )
            pieces.append(Piece(decl.id, decl.strand_count, word, decl.id))
    m = len(components)
    linking = [[0] * m for _ in range(m)]
    for i, c in enumerate(components):
        linking[i][i] = c.framing
    if counters is None:
        b2 = m
        sigma = exact_signature(linking)
        mode = MODE_FULL
    else:
        b2, sigma = counters
        mode = MODE_REDUCED
    framed = FramedLinkState(
        components=components, linking=linking, b2=b2, sigma=sigma, mode=mode
    )
    setup = Setup(kind="pieces", pieces=tuple(decls), counters=counters)
    session = SessionState(setup=setup, framed=framed, pieces=pieces)
    session.check()
    return session


def session_from_setup(setup: Setup) -> SessionState:
    if setup.kind == "knot":
        return init_from_knot(parse_braid_word(setup.word, setup.strand_count))
    return init_from_pieces(list(setup.pieces), setup.counters)


# ---------------------------------------------------------------------------
# Internal mutators (shared by single moves and the endgame composite)


def _append_circle(
    framed: FramedLinkState,
    circle_id: str,
    sign: int,
    linkvec: list[int],
) -> Component:
    """Append a blow-up circle with the given linking row; returns it.

    Mask membership follows the parity rule: the circle joins iff its
    total linking with the current characteristic link is even.
    """
    mask = framed.mask_indices()
    parity = sum(linkvec[i] for i in mask) % 2
    circle = Component(
        id=circle_id,
        framing=sign,
        characteristic=(parity == 0),
        unknot=UNKNOT_VERIFIED,
        origin=ORIGIN_BLOWUP,
        round_circle=True,
    )
    m = len(framed.components)
    for i in range(m):
        framed.linking[i].append(linkvec[i])
    framed.linking.append(linkvec + [sign])
    framed.components.append(circle)
    framed.b2 += 1
    framed.sigma += sign
    return circle


def _blow_up_vector(session: SessionState, sign: int, linkvec: list[int]) -> Component:
    """Common matrix effect of a blow-up with linking row ``linkvec``."""
    framed = session.framed
    m = len(framed.components)
    for i in range(m):
        if linkvec[i] == 0:
            continue
        for j in range(m):
            if linkvec[j] == 0:
                continue
            framed.linking[i][j] += sign * linkvec[i] * linkvec[j]
    for i in range(m):
        framed.components[i].framing = framed.linking[i][i]
    return _append_circle(framed, session.next_circle_id(), sign, linkvec)


def _blow_down_mut(session: SessionState, component_id: str) -> None:
    framed = session.framed
    u = _cindex(framed, component_id)
    comp = framed.components[u]
    eps = comp.framing
    if eps not in (1, -1):
        raise MoveError(
            "framing_not_unit",
            f"cannot blow down {component_id}: framing {eps} is not +-1",
        )
    if comp.unknot not in (UNKNOT_VERIFIED, UNKNOT_ASSERTED):
        raise MoveError(
            "unknot_status_unknown",
            f"cannot blow down {component_id}: unknot status is unknown",
        )
    m = len(framed.components)
    row = framed.linking[u]
    for i in range(m):
        if i == u or row[i] == 0:
            continue
        piece = session.piece_for_component(framed.components[i].id)
        if piece is not None and piece.word is not None:
            piece.stale = True
    for i in range(m):
        if i == u:
            continue
        for j in range(m):
            if j == u:
                continue
            framed.linking[i][j] -= eps * row[i] * row[j]
    del framed.linking[u]
    for r in framed.linking:
        del r[u]
    del framed.components[u]
    for i, c in enumerate(framed.components):
        c.framing = framed.linking[i][i]
    session.pieces = [p for p in session.pieces if p.component_id != component_id]
    framed.b2 -= 1
    framed.sigma -= eps


def _blow_up_meridian_mut(
    session: SessionState, sign: int, component_id: str, times: int
) -> None:
    if times <= 0:
        raise MoveError("bad_times", f"meridian repeat count must be >= 1, got {times}")
    framed = session.framed
    for _ in range(times):
        c = _cindex(framed, component_id)
        target = framed.components[c]
        was_characteristic = target.characteristic
        framed.linking[c][c] += sign
        target.framing = framed.linking[c][c]
        linkvec = [0] * len(framed.components)
        linkvec[c] = 1
        circle = _append_circle(framed, session.next_circle_id(), sign, linkvec)
        if circle.characteristic and not was_characteristic:
            session.warnings.append(
                f"meridian blow-up of non-characteristic {component_id}: "
                f"circle {circle.id} joined the characteristic link"
            )


# ---------------------------------------------------------------------------
# Move application


def apply_move(session: SessionState, move) -> SessionState:
    """Apply one move, returning the new session; the input is unchanged."""
    pre_digest = session.digest()
    new = session.copy()
    b2_before, sigma_before = new.framed.b2, new.framed.sigma
    _dispatch(new, move)
    new.check()
    new.log.append(
        LogEntry(
            move=move,
            pre_digest=pre_digest,
            delta_b2=new.framed.b2 - b2_before,
            delta_sigma=new.framed.sigma - sigma_before,
        )
    )
    return new


def _dispatch(session: SessionState, move) -> None:
    if isinstance(move, BlowUpCoherent):
        _do_blow_up_coherent(session, move)
    elif isinstance(move, BlowUpDeclared):
        _do_blow_up_declared(session, move)
    elif isinstance(move, BlowUpMeridian):
        _cindex(session.framed, move.component)
        _blow_up_meridian_mut(session, move.sign, move.component, move.times)
    elif isinstance(move, BlowDown):
        _blow_down_mut(session, move.component)
    elif isinstance(move, SlideAbstract):
        _do_slide(session, move)
    elif isinstance(move, ReplacePieceAsserted):
        _do_replace(session, move)
    elif isinstance(move, AssertUnknot):
        _do_assert_unknot(session, move)
    elif isinstance(move, Endgame):
        _do_endgame(session)
    elif isinstance(move, ConnectedSum):
        _do_connected_sum(session, move)
    else:
        raise MoveError("unknown_move", f"unknown move {move!r}")


def _do_blow_up_coherent(session: SessionState, move: BlowUpCoherent) -> None:
    if move.sign not in (1, -1):
        raise MoveError("bad_sign", f"blow-up sign must be +-1, got {move.sign}")
    piece_id = move.piece
    if piece_id is None:
        live = [p for p in session.pieces if p.word is not None]
        if len(live) != 1:
            raise MoveError(
                "unknown_piece",
                "coherent blow-up needs an explicit piece when several are live",
            )
        piece = live[0]
    else:
        piece = session.piece(piece_id)
    if piece.word is None or piece.stale:
        raise MoveError(
            "piece_stale",
            f"piece {piece.id!r} has no certified word; use a declared blow-up "
            "or replace the piece first",
        )
    word = piece.word
    if not 1 <= move.lo <= move.hi <= word.strand_count:
        raise MoveError(
            "bad_locus",
            f"interval [{move.lo}, {move.hi}] outside [1, {word.strand_count}]",
        )
    locus = TwistLocus(move.lo, move.hi, move.at)
    try:
        occupants = strands_at(word, move.at)
    except ValueError as err:
        raise MoveError("bad_locus", str(err)) from None
    captured = occupants[move.lo - 1 : move.hi]
    # every captured strand belongs to this piece's single closure component
    framed = session.framed
    linkvec = [0] * len(framed.components)
    linkvec[_cindex(framed, piece.component_id)] = len(captured)
    piece.word = insert_full_twist(word, locus, move.sign, move.reversed_form)
    _blow_up_vector(session, move.sign, linkvec)


def _do_blow_up_declared(session: SessionState, move: BlowUpDeclared) -> None:
    if move.sign not in (1, -1):
        raise MoveError("bad_sign", f"blow-up sign must be +-1, got {move.sign}")
    framed = session.framed
    linkvec = [0] * len(framed.components)
    for cid, value in move.linking:
        linkvec[_cindex(framed, cid)] = value
        # the declared curve interacts with every listed component, so its
        # geometric presentation is no longer certified even at linking 0
        piece = session.piece_for_component(cid)
        if piece is not None and piece.word is not None:
            piece.stale = True
    _blow_up_vector(session, move.sign, linkvec)


def _do_slide(session: SessionState, move: SlideAbstract) -> None:
    if move.moving == move.over:
        raise MoveError("self_slide", "cannot slide a component over itself")
    if move.orientation not in (1, -1):
        raise MoveError("bad_sign", f"orientation must be +-1, got {move.orientation}")
    framed = session.framed
    i = _cindex(framed, move.moving)
    j = _cindex(framed, move.over)
    eta = move.orientation
    lk_before = framed.linking[i][j]
    comp_i, comp_j = framed.components[i], framed.components[j]

    # basis change e_i <- e_i + eta e_j on the linking form
    new_framing = comp_i.framing + comp_j.framing + 2 * eta * lk_before
    m = len(framed.components)
    new_row = [framed.linking[i][k] + eta * framed.linking[j][k] for k in range(m)]
    new_row[i] = new_framing
    for k in range(m):
        framed.linking[i][k] = new_row[k]
        framed.linking[k][i] = new_row[k]
    comp_i.framing = new_framing

    # mask transport: the class sum is preserved, so j's membership flips
    # iff i was characteristic (both-in -> the slid component replaces them)
    if comp_i.characteristic:
        comp_j.characteristic = not comp_j.characteristic

    # the slid component is an engine-chosen band sum; it is a verified
    # unknot when both inputs were split round circles, unknown otherwise
    if comp_i.round_circle and comp_j.round_circle and lk_before == 0:
        comp_i.unknot = UNKNOT_VERIFIED
    else:
        comp_i.unknot = UNKNOT_UNKNOWN
    comp_i.round_circle = False
    comp_i.origin = ORIGIN_SLIDE

    piece = session.piece_for_component(move.moving)
    if piece is not None and piece.word is not None:
        piece.stale = True


def _do_replace(session: SessionState, move: ReplacePieceAsserted) -> None:
    framed = session.framed
    idx = _cindex(framed, move.component)
    comp = framed.components[idx]
    word = parse_braid_word(move.word, move.strand_count)
    partition = closure_components(word)
    if partition.count != 1:
        raise MoveError(
            "component_count_mismatch",
            f"replacement closure has {partition.count} components; the piece has 1",
        )
    if move.framing != comp.framing:
        raise MoveError(
            "framing_mismatch",
            f"replacement framing {move.framing} != current framing {comp.framing}",
        )
    verifiable = (
        comp.unknot == UNKNOT_VERIFIED
        and word.strand_count == 1
        and not word.letters
    )
    piece = session.piece_for_component(move.component)
    if piece is None:
        piece = Piece(move.component, word.strand_count, word, move.component)
        session.pieces.append(piece)
    piece.word = word
    piece.strand_count = word.strand_count
    piece.stale = False
    if not verifiable:
        session.trust_points.append(
            TrustPoint(
                kind="isotopy",
                component=move.component,
                label=move.label,
                detail=format_braid_word(word),
            )
        )
        comp.unknot = (
            UNKNOT_VERIFIED
            if word.strand_count == 1 and not word.letters
            else UNKNOT_UNKNOWN
        )
        comp.round_circle = False
        comp.origin = ORIGIN_REPLACEMENT


def _do_assert_unknot(session: SessionState, move: AssertUnknot) -> None:
    comp = session.framed.components[_cindex(session.framed, move.component)]
    if comp.unknot == UNKNOT_VERIFIED:
        return
    if comp.unknot != UNKNOT_ASSERTED:
        comp.unknot = UNKNOT_ASSERTED
        session.trust_points.append(
            TrustPoint(kind="unknot", component=move.component)
        )


def _resolve_unknot_status(session: SessionState, component_id: str) -> None:
    """Try to upgrade unknown -> verified from the live braid word."""
    comp = session.framed.component(component_id)
    if comp.unknot != UNKNOT_UNKNOWN:
        return
    piece = session.piece_for_component(component_id)
    if piece is None or piece.word is None or piece.stale:
        return
    _, status = simplify_and_detect_unknot(piece.word)
    if status == WORD_VERIFIED:
        comp.unknot = UNKNOT_VERIFIED


def _do_endgame(session: SessionState) -> None:
    """Drive every characteristic framing to +-1 by meridian blow-ups and
    blow the component down; deterministic, logged as one composite move."""
    framed = session.framed
    mask_ids = framed.mask_ids()
    for cid in mask_ids:
        _resolve_unknot_status(session, cid)
    for a in range(len(framed.components)):
        for b in range(a + 1, len(framed.components)):
            ca, cb = framed.components[a], framed.components[b]
            if ca.characteristic and cb.characteristic and framed.linking[a][b] != 0:
                raise MoveError(
                    "char_not_split",
                    f"characteristic components {ca.id} and {cb.id} have "
                    f"linking {framed.linking[a][b]}; split them first",
                )
    for cid in mask_ids:
        comp = framed.component(cid)
        if comp.unknot not in (UNKNOT_VERIFIED, UNKNOT_ASSERTED):
            raise MoveError(
                "unknot_status_unknown",
                f"characteristic component {cid} is not known to be an unknot",
            )
    for cid in mask_ids:
        f = framed.component(cid).framing
        if f < 0:
            if -f - 1 > 0:
                _blow_up_meridian_mut(session, +1, cid, -f - 1)
        elif f > 0:
            if f - 1 > 0:
                _blow_up_meridian_mut(session, -1, cid, f - 1)
        else:
            _blow_up_meridian_mut(session, +1, cid, 1)
        _blow_down_mut(session, cid)
    if not is_spin(session.framed):
        raise AssertionError("endgame finished with a nonempty characteristic mask")
    session.report = obstruction_verdict(
        framed.b2,
        framed.sigma,
        trust_points=tuple(session.trust_points),
        warnings=tuple(session.warnings),
    )


def _do_connected_sum(session: SessionState, move: ConnectedSum) -> None:
    if session.report is None:
        raise MoveError(
            "no_report",
            "connected sum needs a certified report on this session; run endgame first",
        )
    other = ObstructionReport.from_doc(move.summand)
    summed = connected_sum(session.report, other)
    framed = session.framed
    framed.components = []
    framed.linking = []
    framed.b2 = summed.b2
    framed.sigma = summed.sigma
    framed.mode = MODE_REDUCED
    session.pieces = []
    session.trust_points = list(summed.trust_points)
    session.report = summed


def connected_sum(
    report1: ObstructionReport, report2: ObstructionReport
) -> ObstructionReport:
    """Boundary-sum bookkeeping: b2 adds plus one, sigma adds.

    Both inputs must be certified for the non-extending spin structure;
    trust points accumulate and the verdict is recomputed.
    """
    report = obstruction_verdict(
        report1.b2 + report2.b2 + 1,
        report1.sigma + report2.sigma,
        trust_points=report1.trust_points + report2.trust_points,
        warnings=report1.warnings + report2.warnings,
    )
    return report


# ---------------------------------------------------------------------------
# Convenience wrappers mirroring the move vocabulary


def blow_up_coherent(
    session: SessionState,
    sign: int,
    lo: int,
    hi: int,
    piece: str | None = None,
    at: object = "end",
    reversed_form: bool = False,
) -> SessionState:
    return apply_move(
        session,
        BlowUpCoherent(sign=sign, piece=piece, lo=lo, hi=hi, at=at, reversed_form=reversed_form),
    )


def blow_up_declared(session: SessionState, sign: int, linking: dict[str, int]) -> SessionState:
    return apply_move(
        session, BlowUpDeclared(sign=sign, linking=tuple(sorted(linking.items())))
    )


def blow_up_meridian(
    session: SessionState, sign: int, component: str, times: int = 1
) -> SessionState:
    return apply_move(session, BlowUpMeridian(sign=sign, component=component, times=times))


def blow_down(session: SessionState, component: str) -> SessionState:
    return apply_move(session, BlowDown(component=component))


def slide_abstract(
    session: SessionState, moving: str, over: str, orientation: int = 1
) -> SessionState:
    return apply_move(
        session, SlideAbstract(moving=moving, over=over, orientation=orientation)
    )


def replace_piece_asserted(
    session: SessionState,
    component: str,
    word: BraidWord,
    framing: int,
    label: str | None = None,
) -> SessionState:
    return apply_move(
        session,
        ReplacePieceAsserted(
            component=component,
            strand_count=word.strand_count,
            word=format_braid_word(word),
            framing=framing,
            label=label,
        ),
    )


def assert_unknot(session: SessionState, component: str) -> SessionState:
    return apply_move(session, AssertUnknot(component=component))


def endgame(session: SessionState) -> tuple[SessionState, ObstructionReport]:
    new = apply_move(session, Endgame())
    assert new.report is not None
    return new, new.report


def undo(session: SessionState) -> SessionState:
    """Pop the last move by replaying the log; digest-checked."""
    if not session.log:
        raise MoveError("empty_log", "nothing to undo")
    target_digest = session.log[-1].pre_digest
    new = replay(session.setup, [entry.move for entry in session.log[:-1]])
    if new.digest() != target_digest:
        raise AssertionError("undo replay did not reproduce the pre-move digest")
    return new


def replay(setup: Setup, moves: list) -> SessionState:
    session = session_from_setup(setup)
    for move in moves:
        session = apply_move(session, move)
    return session


def replay_matches(session: SessionState) -> bool:
    """Replaying the log from the initial state reproduces the state exactly."""
    fresh = replay(session.setup, [entry.move for entry in session.log])
    return fresh.digest() == session.digest()


# ---------------------------------------------------------------------------
# Whole-session serialization (service documents, snapshots)


def session_to_doc(session: SessionState) -> dict:
    return {
        "setup": session.setup.to_doc(),
        "state": session.state_doc(),
        "history": [entry.to_doc() for entry in session.log],
    }


def session_from_doc(doc: dict) -> SessionState:
    state_doc = doc["state"]
    framed = FramedLinkState.from_doc(state_doc)
    report = state_doc.get("report")
    session = SessionState(
        setup=Setup.from_doc(doc["setup"]),
        framed=framed,
        pieces=[Piece.from_doc(p) for p in state_doc["pieces"]],
        log=[
            LogEntry(
                move=move_from_doc(h["move"]),
                pre_digest=h["pre_digest"],
                delta_b2=h["delta_b2"],
                delta_sigma=h["delta_sigma"],
            )
            for h in doc.get("history", [])
        ],
        trust_points=[TrustPoint.from_doc(t) for t in state_doc["trust_points"]],
        warnings=list(state_doc["warnings"]),
        circle_counter=state_doc["circle_counter"],
        report=ObstructionReport.from_doc(report) if report else None,
    )
    session.check()
    return session
