"""Braid words and the exact data of their closures.

A braid word on n strands is a sequence of letters s_i^{+-1} with
1 <= i <= n-1.  Strands are numbered top to bottom and read left to
right; all strands are oriented the same way, so every strand interval
is coherent.  Closures are taken in the usual way, joining position p
on the right back to position p on the left.

This module knows how to parse the ``s<k>`` surface syntax, split a
closure into components, count signed crossings between components
(exactly), insert the full twists created by blow-ups across parallel
strands, and do a conservative unknottedness check by free reduction,
distant commutation and Markov destabilization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

UNKNOT_VERIFIED = "verified_unknot"
UNKNOT_UNKNOWN = "unknown"


class BraidSyntaxError(ValueError):
    """Raised on malformed braid-word text; carries the character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class BraidWord:
    """A braid word: strand count plus the flat letter sequence.

    Letters are (generator_index, sign) pairs with 1 <= index < strand_count
    and sign +-1.  The empty word on one strand is the trivial braid.
    """

    strand_count: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strand_count < 1:
            raise ValueError(f"strand_count must be >= 1, got {self.strand_count}")
        for index, sign in self.letters:
            if not 1 <= index <= self.strand_count - 1:
                raise ValueError(
                    f"generator index {index} not in [1, {self.strand_count - 1}]"
                )
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(sign for _, sign in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(
            self.strand_count,
            tuple((i, -s) for i, s in reversed(self.letters)),
        )

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strand_count != self.strand_count:
            raise ValueError("cannot concatenate words on different strand counts")
        return BraidWord(self.strand_count, self.letters + other.letters)


@dataclass(frozen=True)
class ClosurePartition:
    """Cycle decomposition of the closure permutation.

    ``permutation[s-1]`` is the position where the strand starting at
    position s exits on the right; the closure joins it back to the strand
    starting there.  Components are the cycles, ordered (and therefore id'd)
    by their smallest strand index.
    """

    permutation: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def component_of(self) -> dict[int, int]:
        """Map each strand to the index of its component."""
        owner: dict[int, int] = {}
        for k, cycle in enumerate(self.components):
            for s in cycle:
                owner[s] = k
        return owner


@dataclass(frozen=True)
class TwistLocus:
    """A coherent strand interval [lo, hi] and an insertion point.

    ``position`` is "start", "end", or a letter index (insertion before
    that letter).  Inside a braid every interval is coherently oriented.
    """

    lo: int
    hi: int
    position: object = "end"


def parse_braid_word(text: str, strand_count: int) -> BraidWord:
    """Parse ``s<k>`` / ``s<k>^e`` / parenthesized-group syntax into a BraidWord.

    Group exponents expand by repetition; a negative exponent repeats the
    reversed, inverted letters.  Errors report the character offset.
    """
    if strand_count < 1:
        raise ValueError(f"strand_count must be >= 1, got {strand_count}")
    letters, pos = _parse_sequence(text, 0, strand_count, depth=0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise BraidSyntaxError("unbalanced parentheses", pos)
    return BraidWord(strand_count, tuple(letters))


def format_braid_word(word: BraidWord) -> str:
    """Inverse of parse on letter sequences: one token per letter."""
    parts = []
    for index, sign in word.letters:
        parts.append(f"s{index}" if sign > 0 else f"s{index}^-1")
    return " ".join(parts)


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise BraidSyntaxError("malformed exponent", start)
    return int(text[start:pos]), pos


def _parse_sequence(text, pos, strand_count, depth):
    letters: list[tuple[int, int]] = []
    while True:
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            if depth > 0:
                raise BraidSyntaxError("unbalanced parentheses", pos)
            return letters, pos
        ch = text[pos]
        if ch == ")":
            if depth == 0:
                raise BraidSyntaxError("unbalanced parentheses", pos)
            return letters, pos
        if ch == "(":
            group, pos = _parse_sequence(text, pos + 1, strand_count, depth + 1)
            if pos >= len(text) or text[pos] != ")":
                raise BraidSyntaxError("unbalanced parentheses", pos)
            pos += 1
            exp, pos = _parse_exponent(text, pos)
            letters.extend(_repeat(group, exp))
        elif ch == "s":
            at = pos
            index, pos = _parse_int(text, pos + 1)
            if not 1 <= index <= strand_count - 1:
                raise BraidSyntaxError(
                    f"generator index {index} not in [1, {strand_count - 1}]", at
                )
            exp, pos = _parse_exponent(text, pos)
            letters.extend(_repeat([(index, 1)], exp))
        else:
            raise BraidSyntaxError(f"unexpected character {ch!r}", pos)


def _parse_exponent(text, pos) -> tuple[int, int]:
    if pos < len(text) and text[pos] == "^":
        return _parse_int(text, pos + 1)
    return 1, pos


def _repeat(letters: list[tuple[int, int]], exp: int) -> list[tuple[int, int]]:
    if exp >= 0:
        return letters * exp
    inverse = [(i, -s) for i, s in reversed(letters)]
    return inverse * (-exp)


def closure_components(word: BraidWord) -> ClosurePartition:
    """Components of the braid closure as cycles of the strand permutation."""
    n = word.strand_count
    occupant = list(range(n + 1))  # occupant[p] = strand currently at position p
    for index, _ in word.letters:
        occupant[index], occupant[index + 1] = occupant[index + 1], occupant[index]
    perm = [0] * (n + 1)  # strand -> exit position
    for p in range(1, n + 1):
        perm[occupant[p]] = p
    seen = [False] * (n + 1)
    cycles = []
    for s in range(1, n + 1):
        if seen[s]:
            continue
        cycle = []
        cur = s
        while not seen[cur]:
            seen[cur] = True
            cycle.append(cur)
            cur = perm[cur]
        cycles.append(tuple(cycle))
    cycles.sort(key=min)
    return ClosurePartition(tuple(perm[1:]), tuple(cycles))


def linking_matrix_from_braid(
    word: BraidWord, framings: list[int]
) -> list[list[int]]:
    """Linking matrix of the closure: framings on the diagonal, exact
    linking numbers off it.

    lk(i, j) for i != j is half the signed crossing count between the two
    components; in a braid closure all strands are coherent, so that count
    is always even.
    """
    partition = closure_components(word)
    m = partition.count
    if len(framings) != m:
        raise ValueError(
            f"expected {m} framings for {m} components, got {len(framings)}"
        )
    owner = partition.component_of()
    counts = [[0] * m for _ in range(m)]
    n = word.strand_count
    occupant = list(range(n + 1))
    for index, sign in word.letters:
        u, v = occupant[index], occupant[index + 1]
        cu, cv = owner[u], owner[v]
        if cu != cv:
            counts[cu][cv] += sign
            counts[cv][cu] += sign
        occupant[index], occupant[index + 1] = v, u
    matrix = [[0] * m for _ in range(m)]
    for i in range(m):
        matrix[i][i] = framings[i]
        for j in range(i + 1, m):
            if counts[i][j] % 2 != 0:
                raise AssertionError("odd inter-component crossing count in a closure")
            matrix[i][j] = matrix[j][i] = counts[i][j] // 2
    return matrix


def strands_at(word: BraidWord, position) -> list[int]:
    """Strand occupying each position 1..n at the given point of the word."""
    n = word.strand_count
    if position == "start":
        upto = 0
    elif position == "end":
        upto = len(word.letters)
    else:
        upto = int(position)
        if not 0 <= upto <= len(word.letters):
            raise ValueError(f"insertion index {upto} outside [0, {len(word.letters)}]")
    occupant = list(range(n + 1))
    for index, _ in word.letters[:upto]:
        occupant[index], occupant[index + 1] = occupant[index + 1], occupant[index]
    return occupant[1:]


def full_twist_letters(
    lo: int, hi: int, sign: int, reversed_form: bool = False
) -> list[tuple[int, int]]:
    """Letters of the full twist (s_lo .. s_{hi-1})^{+-(hi-lo+1)}.

    The reversed form (s_{hi-1} .. s_lo)^{+-(hi-lo+1)} presents the same
    twist; exposing both lets insertions cancel freely against torus-style
    words written in either convention.
    """
    p = hi - lo + 1
    if p <= 1:
        return []
    row = list(range(lo, hi)) if not reversed_form else list(range(hi - 1, lo - 1, -1))
    if sign > 0:
        block = [(i, 1) for i in row]
    else:
        block = [(i, -1) for i in reversed(row)]
    return block * p


def insert_full_twist(
    word: BraidWord, locus: TwistLocus, sign: int, reversed_form: bool = False
) -> BraidWord:
    """Insert a full twist across the locus interval at its position."""
    if not 1 <= locus.lo <= locus.hi <= word.strand_count:
        raise ValueError(
            f"interval [{locus.lo}, {locus.hi}] outside [1, {word.strand_count}]"
        )
    twist = full_twist_letters(locus.lo, locus.hi, sign, reversed_form)
    if locus.position == "start":
        at = 0
    elif locus.position == "end":
        at = len(word.letters)
    else:
        at = int(locus.position)
        if not 0 <= at <= len(word.letters):
            raise ValueError(
                f"insertion index {at} outside [0, {len(word.letters)}]"
            )
    letters = word.letters[:at] + tuple(twist) + word.letters[at:]
    return BraidWord(word.strand_count, letters)


def free_reduce(letters: list[tuple[int, int]]) -> list[tuple[int, int]]:
    stack: list[tuple[int, int]] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return stack


def _commutation_cancel(letters: list[tuple[int, int]]) -> bool:
    """Cancel one inverse pair separated only by distant letters.

    Distant commutation (|i - j| >= 2) is used purely as an enabling step;
    returns True if a cancellation happened.
    """
    for a in range(len(letters)):
        ia, sa = letters[a]
        for b in range(a + 1, len(letters)):
            ib, sb = letters[b]
            if ib == ia:
                if sb == -sa:
                    del letters[b]
                    del letters[a]
                    return True
                break
            if abs(ib - ia) < 2:
                break
    return False


def _destabilize(letters: list[tuple[int, int]], n: int):
    """One Markov destabilization, if available.

    A generator index occurring exactly once as the maximal (or minimal)
    used index is removed; the word is rotated so the removal is the
    classical w * s_{n-1}^{+-1} move (rotation does not change the closure)
    and strands are renumbered.  Returns (letters, n) or None.
    """
    if not letters:
        return None
    used = [i for i, _ in letters]
    top = max(used)
    if used.count(top) == 1 and top == n - 1:
        at = used.index(top)
        rotated = letters[at + 1 :] + letters[:at]
        return rotated, n - 1
    low = min(used)
    if used.count(low) == 1 and low == 1:
        at = used.index(low)
        rotated = letters[at + 1 :] + letters[:at]
        return [(i - 1, s) for i, s in rotated], n - 1
    return None


def simplify_and_detect_unknot(word: BraidWord) -> tuple[BraidWord, str]:
    """Best-effort unknot detection for a one-component closure.

    Applies free reduction, commutation-assisted cancellation and Markov
    destabilization to a fixed point.  Returns the reduced word and
    ``verified_unknot`` iff it reduced to the empty 1-strand word;
    ``unknown`` never means "knotted".
    """
    partition = closure_components(word)
    if partition.count != 1:
        raise ValueError(
            f"unknot detection needs a one-component closure, got {partition.count}"
        )
    letters = list(word.letters)
    n = word.strand_count
    changed = True
    while changed:
        changed = False
        reduced = free_reduce(letters)
        if len(reduced) != len(letters):
            letters, changed = reduced, True
        if _commutation_cancel(letters):
            changed = True
            continue
        step = _destabilize(letters, n)
        if step is not None:
            letters, n = step
            changed = True
    result = BraidWord(n, tuple(letters))
    if n == 1 and not letters:
        return result, UNKNOT_VERIFIED
    return result, UNKNOT_UNKNOWN


def torus_braid(p: int, q: int) -> BraidWord:
    """The (p, q) torus braid (s_1 ... s_{p-1})^q on p strands."""
    if p < 1:
        raise ValueError("p must be >= 1")
    block = [(i, 1) for i in range(1, p)]
    if q >= 0:
        letters = block * q
    else:
        letters = [(i, -1) for i, _ in reversed(block)] * (-q)
    return BraidWord(p, tuple(letters))
