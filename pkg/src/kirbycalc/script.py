"""The .kmove move-script language: parser, printer, and interpreter.

Scripts are straight-line derivation records: declare the starting
presentation (a knot braid, a torus knot, or split pieces with ambient
counters), apply moves, assert checkpoints with ``expect``, and request
the final ``verdict``.  ``sum`` runs another script in isolation and
combines the two reports by the connected-sum formulas.

Syntax summary (``#`` starts a comment)::

    knot braid 9 "(s8 s7 ... s1)^8 ..."
    knot torus(3, 8)
    piece T braid 3 "(s1 s2)^2" framing 0 char
    piece U unknot framing -2 char
    counters b2 3 sigma -2
    blowup - strands 1..3 of T at end rev times 3
    blowup - declared { K: 0 }
    meridian + of U times 8
    blowdown U
    slide c1 over c2 +
    replace K braid 3 "(s1 s2^-1)^2" framing -7 assert-isotopy "4_1"
    assert-unknot K
    endgame
    sum "other.kmove"
    expect b2 11 sigma 8 margin -8 framing T -9
    verdict
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .braid import BraidWord, parse_braid_word, torus_braid
from .moves import (
    AssertUnknot,
    BlowDown,
    BlowUpCoherent,
    BlowUpDeclared,
    BlowUpMeridian,
    ConnectedSum,
    Endgame,
    MoveError,
    PieceDecl,
    ReplacePieceAsserted,
    SessionState,
    SlideAbstract,
    apply_move,
    init_from_knot,
    init_from_pieces,
)
from .state import ObstructionReport, obstruction_verdict


class ScriptSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class ScriptRunError(ValueError):
    """A move precondition failed while running a script."""

    def __init__(self, message: str, line: int, reason: str = "run_error"):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = reason


class ExpectFailure(AssertionError):
    """An ``expect`` checkpoint did not match; carries the diff."""

    def __init__(self, line: int, diffs: list[str]):
        super().__init__(f"expect failed at line {line}: " + "; ".join(diffs))
        self.line = line
        self.diffs = diffs


# ---------------------------------------------------------------------------
# Tokens


@dataclass(frozen=True)
class _Token:
    kind: str  # word | number | string | punct
    value: str
    line: int
    col: int


_PUNCT_TWO = ("..",)
_PUNCT_ONE = "(){}:,+-^"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            i += 1
            col += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n and text[i + 1] in '"\\':
                    buf.append(text[i + 1])
                    i += 2
                    col += 2
                    continue
                if text[i] == "\n":
                    raise ScriptSyntaxError("unterminated string", start_line, start_col)
                buf.append(text[i])
                i += 1
                col += 1
            if i >= n:
                raise ScriptSyntaxError("unterminated string", start_line, start_col)
            i += 1
            col += 1
            tokens.append(_Token("string", "".join(buf), start_line, start_col))
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            # absorb the dash in assert-isotopy / assert-unknot
            if word == "assert" and j < n and text[j] == "-":
                k = j + 1
                while k < n and (text[k].isalnum() or text[k] == "_"):
                    k += 1
                word = text[i:k]
                j = k
            tokens.append(_Token("word", word, start_line, start_col))
            col += j - i
            i = j
            continue
        two = text[i : i + 2]
        if two in _PUNCT_TWO:
            tokens.append(_Token("punct", two, start_line, start_col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT_ONE:
            tokens.append(_Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise ScriptSyntaxError(f"unexpected character {ch!r}", line, col)
    return tokens


# ---------------------------------------------------------------------------
# Statements


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class KnotBraidStmt:
    strands: int
    word: str
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"knot braid {self.strands} {_quote(self.word)}"


@dataclass(frozen=True)
class KnotTorusStmt:
    p: int
    q: int
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"knot torus({self.p}, {self.q})"


@dataclass(frozen=True)
class PieceStmt:
    id: str
    kind: str  # braid | unknot
    framing: int
    characteristic: bool
    strands: int = 1
    word: str = ""
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        if self.kind == "braid":
            body = f"piece {self.id} braid {self.strands} {_quote(self.word)}"
        else:
            body = f"piece {self.id} unknot"
        body += f" framing {self.framing}"
        if self.characteristic:
            body += " char"
        return body


@dataclass(frozen=True)
class CountersStmt:
    b2: int
    sigma: int
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"counters b2 {self.b2} sigma {self.sigma}"


@dataclass(frozen=True)
class BlowupStrandsStmt:
    sign: int
    lo: int
    hi: int
    piece: str | None = None
    at: object = "end"
    reversed_form: bool = False
    times: int = 1
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        body = f"blowup {'+' if self.sign > 0 else '-'} strands {self.lo}..{self.hi}"
        if self.piece is not None:
            body += f" of {self.piece}"
        body += f" at {self.at}"
        if self.reversed_form:
            body += " rev"
        if self.times != 1:
            body += f" times {self.times}"
        return body


@dataclass(frozen=True)
class BlowupDeclaredStmt:
    sign: int
    linking: tuple[tuple[str, int], ...]
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        inner = ", ".join(f"{cid}: {v}" for cid, v in self.linking)
        return f"blowup {'+' if self.sign > 0 else '-'} declared {{ {inner} }}"


@dataclass(frozen=True)
class MeridianStmt:
    sign: int
    component: str
    times: int = 1
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        body = f"meridian {'+' if self.sign > 0 else '-'} of {self.component}"
        if self.times != 1:
            body += f" times {self.times}"
        return body


@dataclass(frozen=True)
class BlowdownStmt:
    component: str
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"blowdown {self.component}"


@dataclass(frozen=True)
class SlideStmt:
    moving: str
    over: str
    orientation: int = 1
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return (
            f"slide {self.moving} over {self.over} "
            f"{'+' if self.orientation > 0 else '-'}"
        )


@dataclass(frozen=True)
class ReplaceStmt:
    component: str
    strands: int
    word: str
    framing: int
    label: str | None = None
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        body = (
            f"replace {self.component} braid {self.strands} {_quote(self.word)} "
            f"framing {self.framing} assert-isotopy"
        )
        if self.label is not None:
            body += f" {_quote(self.label)}"
        return body


@dataclass(frozen=True)
class AssertUnknotStmt:
    component: str
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"assert-unknot {self.component}"


@dataclass(frozen=True)
class EndgameStmt:
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return "endgame"


@dataclass(frozen=True)
class SumStmt:
    path: str | None = None
    inline: str | None = None  # JSON report document, for API-made sums
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        if self.inline is not None:
            return f"sum inline {_quote(self.inline)}"
        return f"sum {_quote(self.path or '')}"


@dataclass(frozen=True)
class ExpectStmt:
    checks: tuple[tuple[str, str | None, int], ...]  # (kind, id, value)
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        parts = ["expect"]
        for kind, cid, value in self.checks:
            if kind == "framing":
                parts.append(f"framing {cid} {value}")
            else:
                parts.append(f"{kind} {value}")
        return " ".join(parts)


@dataclass(frozen=True)
class VerdictStmt:
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return "verdict"


@dataclass(frozen=True)
class Script:
    statements: tuple

    def render(self) -> str:
        return "\n".join(s.render() for s in self.statements) + "\n"


# ---------------------------------------------------------------------------
# Parser


class _Cursor:
    def __init__(self, tokens: list[_Token], text_len: int):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("word", "", 1, 1)
            raise ScriptSyntaxError("unexpected end of script", last.line, last.col)
        self.pos += 1
        return tok

    def expect_word(self, *values: str) -> _Token:
        tok = self.next()
        if tok.kind != "word" or (values and tok.value not in values):
            want = " or ".join(repr(v) for v in values) if values else "identifier"
            raise ScriptSyntaxError(f"expected {want}, got {tok.value!r}", tok.line, tok.col)
        return tok

    def expect_punct(self, value: str) -> _Token:
        tok = self.next()
        if tok.kind != "punct" or tok.value != value:
            raise ScriptSyntaxError(f"expected {value!r}, got {tok.value!r}", tok.line, tok.col)
        return tok

    def expect_string(self) -> _Token:
        tok = self.next()
        if tok.kind != "string":
            raise ScriptSyntaxError(f"expected a string, got {tok.value!r}", tok.line, tok.col)
        return tok

    def expect_int(self) -> int:
        tok = self.next()
        sign = 1
        if tok.kind == "punct" and tok.value in "+-":
            sign = 1 if tok.value == "+" else -1
            tok = self.next()
        if tok.kind != "number":
            raise ScriptSyntaxError(f"expected an integer, got {tok.value!r}", tok.line, tok.col)
        return sign * int(tok.value)

    def expect_sign(self) -> int:
        tok = self.next()
        if tok.kind != "punct" or tok.value not in "+-":
            raise ScriptSyntaxError(f"expected '+' or '-', got {tok.value!r}", tok.line, tok.col)
        return 1 if tok.value == "+" else -1

    def peek_is_word(self, *values: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "word" and tok.value in values

    def peek_is_punct(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "punct" and tok.value == value


_KEYWORDS = {
    "knot", "piece", "counters", "blowup", "meridian", "blowdown", "slide",
    "replace", "assert-unknot", "endgame", "sum", "expect", "verdict",
}


def parse_script(text: str) -> Script:
    cursor = _Cursor(_tokenize(text), len(text))
    statements = []
    while cursor.peek() is not None:
        statements.append(_parse_statement(cursor))
    return Script(tuple(statements))


def _parse_statement(cursor: _Cursor):
    tok = cursor.next()
    if tok.kind != "word" or tok.value not in _KEYWORDS:
        raise ScriptSyntaxError(f"expected a statement, got {tok.value!r}", tok.line, tok.col)
    line = tok.line
    kw = tok.value
    if kw == "knot":
        sub = cursor.expect_word("braid", "torus")
        if sub.value == "braid":
            strands = cursor.expect_int()
            word = cursor.expect_string().value
            return KnotBraidStmt(strands, word, line=line)
        cursor.expect_punct("(")
        p = cursor.expect_int()
        cursor.expect_punct(",")
        q = cursor.expect_int()
        cursor.expect_punct(")")
        return KnotTorusStmt(p, q, line=line)
    if kw == "piece":
        pid = cursor.expect_word().value
        sub = cursor.expect_word("braid", "unknot")
        strands, word = 1, ""
        if sub.value == "braid":
            strands = cursor.expect_int()
            word = cursor.expect_string().value
        cursor.expect_word("framing")
        framing = cursor.expect_int()
        char = False
        if cursor.peek_is_word("char"):
            cursor.next()
            char = True
        return PieceStmt(pid, sub.value, framing, char, strands, word, line=line)
    if kw == "counters":
        cursor.expect_word("b2")
        b2 = cursor.expect_int()
        cursor.expect_word("sigma")
        sigma = cursor.expect_int()
        return CountersStmt(b2, sigma, line=line)
    if kw == "blowup":
        sign = cursor.expect_sign()
        sub = cursor.expect_word("strands", "declared")
        if sub.value == "declared":
            cursor.expect_punct("{")
            items = []
            while not cursor.peek_is_punct("}"):
                cid = cursor.expect_word().value
                cursor.expect_punct(":")
                items.append((cid, cursor.expect_int()))
                if cursor.peek_is_punct(","):
                    cursor.next()
            cursor.expect_punct("}")
            return BlowupDeclaredStmt(sign, tuple(items), line=line)
        lo = cursor.expect_int()
        cursor.expect_punct("..")
        hi = cursor.expect_int()
        piece = None
        at: object = "end"
        reversed_form = False
        times = 1
        while True:
            if cursor.peek_is_word("of"):
                cursor.next()
                piece = cursor.expect_word().value
            elif cursor.peek_is_word("at"):
                cursor.next()
                nxt = cursor.next()
                if nxt.kind == "word" and nxt.value in ("start", "end"):
                    at = nxt.value
                elif nxt.kind == "number":
                    at = int(nxt.value)
                else:
                    raise ScriptSyntaxError(
                        f"expected start, end or a letter index, got {nxt.value!r}",
                        nxt.line, nxt.col,
                    )
            elif cursor.peek_is_word("rev"):
                cursor.next()
                reversed_form = True
            elif cursor.peek_is_word("times"):
                cursor.next()
                times = cursor.expect_int()
            else:
                break
        return BlowupStrandsStmt(sign, lo, hi, piece, at, reversed_form, times, line=line)
    if kw == "meridian":
        sign = cursor.expect_sign()
        cursor.expect_word("of")
        cid = cursor.expect_word().value
        times = 1
        if cursor.peek_is_word("times"):
            cursor.next()
            times = cursor.expect_int()
        return MeridianStmt(sign, cid, times, line=line)
    if kw == "blowdown":
        return BlowdownStmt(cursor.expect_word().value, line=line)
    if kw == "slide":
        moving = cursor.expect_word().value
        cursor.expect_word("over")
        over = cursor.expect_word().value
        orientation = 1
        tok2 = cursor.peek()
        if tok2 is not None and tok2.kind == "punct" and tok2.value in "+-":
            cursor.next()
            orientation = 1 if tok2.value == "+" else -1
        return SlideStmt(moving, over, orientation, line=line)
    if kw == "replace":
        cid = cursor.expect_word().value
        cursor.expect_word("braid")
        strands = cursor.expect_int()
        word = cursor.expect_string().value
        cursor.expect_word("framing")
        framing = cursor.expect_int()
        cursor.expect_word("assert-isotopy")
        label = None
        tok2 = cursor.peek()
        if tok2 is not None and tok2.kind == "string":
            label = cursor.next().value
        return ReplaceStmt(cid, strands, word, framing, label, line=line)
    if kw == "assert-unknot":
        return AssertUnknotStmt(cursor.expect_word().value, line=line)
    if kw == "endgame":
        return EndgameStmt(line=line)
    if kw == "sum":
        if cursor.peek_is_word("inline"):
            cursor.next()
            return SumStmt(inline=cursor.expect_string().value, line=line)
        return SumStmt(path=cursor.expect_string().value, line=line)
    if kw == "expect":
        checks = []
        while cursor.peek_is_word("b2", "sigma", "margin", "framing"):
            kind = cursor.next().value
            if kind == "framing":
                cid = cursor.expect_word().value
                checks.append(("framing", cid, cursor.expect_int()))
            else:
                checks.append((kind, None, cursor.expect_int()))
        if not checks:
            raise ScriptSyntaxError("expect needs at least one check", tok.line, tok.col)
        return ExpectStmt(tuple(checks), line=line)
    if kw == "verdict":
        return VerdictStmt(line=line)
    raise ScriptSyntaxError(f"unhandled statement {kw!r}", tok.line, tok.col)


def print_script(script: Script) -> str:
    return script.render()


# ---------------------------------------------------------------------------
# Interpreter


@dataclass
class Checkpoint:
    line: int
    checks: tuple
    ok: bool = True


@dataclass
class RunResult:
    session: SessionState
    report: ObstructionReport | None
    checkpoints: list[Checkpoint]


_SETUP_STMTS = (KnotBraidStmt, KnotTorusStmt, PieceStmt, CountersStmt)


def run_script(script: Script, base_dir: str | None = None) -> RunResult:
    session: SessionState | None = None
    piece_decls: list[PieceDecl] = []
    counters: tuple[int, int] | None = None
    report: ObstructionReport | None = None
    checkpoints: list[Checkpoint] = []

    def ensure_session(line: int) -> SessionState:
        nonlocal session
        if session is None:
            if not piece_decls:
                raise ScriptRunError(
                    "no starting presentation declared (knot or pieces)", line,
                    reason="missing_setup",
                )
            session = init_from_pieces(piece_decls, counters)
        return session

    for stmt in script.statements:
        if isinstance(stmt, _SETUP_STMTS):
            if session is not None:
                raise ScriptRunError(
                    "setup statements must precede all moves", stmt.line,
                    reason="setup_after_moves",
                )
            if isinstance(stmt, (KnotBraidStmt, KnotTorusStmt)):
                if piece_decls or counters is not None:
                    raise ScriptRunError(
                        "knot cannot be combined with piece declarations", stmt.line,
                        reason="conflicting_setup",
                    )
                try:
                    if isinstance(stmt, KnotBraidStmt):
                        word = parse_braid_word(stmt.word, stmt.strands)
                    else:
                        word = torus_braid(stmt.p, stmt.q)
                    session = init_from_knot(word)
                except (MoveError, ValueError) as err:
                    raise ScriptRunError(str(err), stmt.line,
                                         getattr(err, "reason", "bad_setup")) from err
            elif isinstance(stmt, PieceStmt):
                piece_decls.append(
                    PieceDecl(stmt.id, stmt.kind, stmt.framing, stmt.characteristic,
                              stmt.strands, stmt.word)
                )
            else:
                counters = (stmt.b2, stmt.sigma)
            continue

        if isinstance(stmt, ExpectStmt):
            current = ensure_session(stmt.line)
            diffs = []
            for kind, cid, value in stmt.checks:
                if kind == "b2":
                    actual = current.framed.b2
                elif kind == "sigma":
                    actual = current.framed.sigma
                elif kind == "margin":
                    actual = current.framed.margin()
                else:
                    try:
                        actual = current.framed.component(cid).framing
                    except KeyError:
                        diffs.append(f"framing {cid}: no such component")
                        continue
                if actual != value:
                    name = kind if cid is None else f"{kind} {cid}"
                    diffs.append(f"{name}: expected {value}, got {actual}")
            if diffs:
                raise ExpectFailure(stmt.line, diffs)
            checkpoints.append(Checkpoint(stmt.line, stmt.checks))
            continue

        if isinstance(stmt, VerdictStmt):
            current = ensure_session(stmt.line)
            if current.report is not None:
                report = current.report
            else:
                if current.framed.mask_ids():
                    raise ScriptRunError(
                        "verdict requested but the characteristic mask is not empty",
                        stmt.line, reason="mask_not_empty",
                    )
                report = obstruction_verdict(
                    current.framed.b2,
                    current.framed.sigma,
                    trust_points=tuple(current.trust_points),
                    warnings=tuple(current.warnings),
                )
            continue

        current = ensure_session(stmt.line)
        try:
            session = _apply_statement(current, stmt, base_dir)
        except MoveError as err:
            raise ScriptRunError(str(err), stmt.line, err.reason) from err
        except (ValueError, ScriptSyntaxError) as err:
            if isinstance(err, (ScriptRunError, ExpectFailure)):
                raise
            raise ScriptRunError(str(err), stmt.line, "run_error") from err
        if session.report is not None:
            report = session.report

    if session is None:
        session = ensure_session(script.statements[-1].line if script.statements else 1)
    return RunResult(session=session, report=report, checkpoints=checkpoints)


def _apply_statement(session: SessionState, stmt, base_dir: str | None) -> SessionState:
    if isinstance(stmt, BlowupStrandsStmt):
        for _ in range(stmt.times):
            session = apply_move(
                session,
                BlowUpCoherent(
                    sign=stmt.sign,
                    piece=stmt.piece,
                    lo=stmt.lo,
                    hi=stmt.hi,
                    at=stmt.at,
                    reversed_form=stmt.reversed_form,
                ),
            )
        return session
    if isinstance(stmt, BlowupDeclaredStmt):
        return apply_move(
            session, BlowUpDeclared(sign=stmt.sign, linking=tuple(sorted(stmt.linking)))
        )
    if isinstance(stmt, MeridianStmt):
        return apply_move(
            session,
            BlowUpMeridian(sign=stmt.sign, component=stmt.component, times=stmt.times),
        )
    if isinstance(stmt, BlowdownStmt):
        return apply_move(session, BlowDown(component=stmt.component))
    if isinstance(stmt, SlideStmt):
        return apply_move(
            session,
            SlideAbstract(moving=stmt.moving, over=stmt.over, orientation=stmt.orientation),
        )
    if isinstance(stmt, ReplaceStmt):
        return apply_move(
            session,
            ReplacePieceAsserted(
                component=stmt.component,
                strand_count=stmt.strands,
                word=stmt.word,
                framing=stmt.framing,
                label=stmt.label,
            ),
        )
    if isinstance(stmt, AssertUnknotStmt):
        return apply_move(session, AssertUnknot(component=stmt.component))
    if isinstance(stmt, EndgameStmt):
        return apply_move(session, Endgame())
    if isinstance(stmt, SumStmt):
        if stmt.inline is not None:
            summand = json.loads(stmt.inline)
            source = None
        else:
            path = stmt.path or ""
            resolved = path if os.path.isabs(path) else os.path.join(base_dir or ".", path)
            sub = run_script_file(resolved)
            if sub.report is None:
                raise MoveError(
                    "no_report", f"summand script {path!r} produced no verdict"
                )
            summand = sub.report.to_doc()
            source = path
        return apply_move(session, ConnectedSum(summand=summand, source=source))
    raise MoveError("unknown_move", f"unhandled statement {stmt!r}")


def run_script_text(text: str, base_dir: str | None = None) -> RunResult:
    return run_script(parse_script(text), base_dir=base_dir)


def run_script_file(path: str) -> RunResult:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return run_script(parse_script(text), base_dir=os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# Export: session -> script text


def export_script(session: SessionState) -> str:
    """Transcribe a session (setup plus move log) back to script text.

    Re-running the exported text reproduces the session's state digest.
    """
    lines: list[str] = []
    setup = session.setup
    if setup.kind == "knot":
        lines.append(KnotBraidStmt(setup.strand_count, setup.word).render())
    else:
        for decl in setup.pieces:
            lines.append(
                PieceStmt(
                    decl.id, decl.kind, decl.framing, decl.characteristic,
                    decl.strand_count, decl.word,
                ).render()
            )
        if setup.counters is not None:
            lines.append(CountersStmt(*setup.counters).render())
    for entry in session.log:
        lines.append(_statement_for_move(entry.move).render())
    if session.report is not None:
        lines.append(VerdictStmt().render())
    return "\n".join(lines) + "\n"


def _statement_for_move(move):
    if isinstance(move, BlowUpCoherent):
        return BlowupStrandsStmt(
            move.sign, move.lo, move.hi, move.piece, move.at, move.reversed_form, 1
        )
    if isinstance(move, BlowUpDeclared):
        return BlowupDeclaredStmt(move.sign, move.linking)
    if isinstance(move, BlowUpMeridian):
        return MeridianStmt(move.sign, move.component, move.times)
    if isinstance(move, BlowDown):
        return BlowdownStmt(move.component)
    if isinstance(move, SlideAbstract):
        return SlideStmt(move.moving, move.over, move.orientation)
    if isinstance(move, ReplacePieceAsserted):
        return ReplaceStmt(move.component, move.strand_count, move.word, move.framing, move.label)
    if isinstance(move, AssertUnknot):
        return AssertUnknotStmt(move.component)
    if isinstance(move, Endgame):
        return EndgameStmt()
    if isinstance(move, ConnectedSum):
        if move.source is not None:
            return SumStmt(path=move.source)
        return SumStmt(inline=json.dumps(move.summand, sort_keys=True))
    raise TypeError(f"no statement form for {move!r}")
