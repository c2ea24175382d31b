"""Direction sequences, tile geometry and the equivalence group.

A sequence is a cyclic word over E, N, W, S.  Symbol ``s_i`` (1-based) is
the plan step from tile ``T_{i-1}`` to tile ``T_i``; the word lists
``s_1 .. s_n`` so the last symbol leads back to ``T_0``.

The equivalence group has ``16 n`` elements: cyclic shifts, order reversal
and the eight symmetries of the square acting on the letters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

LETTERS = "ENWS"
# Index order E < N < W < S is also the canonical lexicographic order.
E, N, W, S = range(4)
STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))

MIN_TILES = 4
MAX_TILES = 20


class SequenceError(ValueError):
    pass


class BadCharacter(SequenceError):
    pass


class OddLength(SequenceError):
    pass


class NotClosed(SequenceError):
    pass


class OutOfRange(SequenceError):
    pass


def opposite(d: int) -> int:
    return (d + 2) % 4


def is_horizontal(d: int) -> bool:
    """True for E and W."""
    return d % 2 == 0


class TileType(enum.Enum):
    SLASH = "sla"
    BACKSLASH = "bsla"

    def flipped(self) -> TileType:
        return TileType.BACKSLASH if self is TileType.SLASH else TileType.SLASH


class TileClass(enum.Enum):
    STRAIGHT = "straight"
    CURVING_LEFT = "left"
    CURVING_RIGHT = "right"
    FLAP = "flap"


class Axis(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class Sequence:
    symbols: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.symbols)

    def s(self, i: int) -> int:
        """Symbol ``s_i`` with 1-based cyclic indexing."""
        return self.symbols[(i - 1) % len(self.symbols)]

    def __str__(self) -> str:
        return "".join(LETTERS[d] for d in self.symbols)

    def __lt__(self, other: Sequence) -> bool:
        return self.symbols < other.symbols

    @cached_property
    def cells(self) -> tuple[tuple[int, int], ...]:
        """Plan cell of every tile, ``T_0`` at the origin."""
        x = y = 0
        out = [(0, 0)]
        for d in self.symbols[:-1]:
            dx, dy = STEPS[d]
            x, y = x + dx, y + dy
            out.append((x, y))
        return tuple(out)

    @cached_property
    def occupancy(self) -> dict[tuple[int, int], list[int]]:
        """Tiles resident in each cell, by increasing index."""
        occ: dict[tuple[int, int], list[int]] = {}
        for i, c in enumerate(self.cells):
            occ.setdefault(c, []).append(i)
        return occ


def parse_sequence(text: str) -> Sequence:
    text = text.strip().upper()
    bad = [c for c in text if c not in LETTERS]
    if bad:
        raise BadCharacter(f"invalid direction {bad[0]!r} in {text!r}; use E, N, W, S")
    if len(text) % 2:
        raise OddLength(f"sequence {text!r} has odd length {len(text)}")
    if len(text) < MIN_TILES:
        raise OutOfRange(f"sequence {text!r} is shorter than {MIN_TILES}")
    if text.count("E") != text.count("W") or text.count("N") != text.count("S"):
        raise NotClosed(f"sequence {text!r} does not close: E/W or N/S counts differ")
    return Sequence(tuple(LETTERS.index(c) for c in text))


@dataclass(frozen=True)
class TileNode:
    index: int
    cell: tuple[int, int]
    type: TileType
    kind: TileClass
    hinge_in: int
    hinge_out: int

    @property
    def horizontal(self) -> bool:
        """Tile entered through a vertical (E/W) side.

        For straight tiles and flaps this is what makes them horizontal;
        vertical ones are entered through N/S sides.
        """
        return is_horizontal(self.hinge_in)

    @property
    def axis(self) -> Axis | None:
        if self.kind is not TileClass.FLAP:
            return None
        return Axis.HORIZONTAL if self.horizontal else Axis.VERTICAL

    @property
    def is_flap(self) -> bool:
        return self.kind is TileClass.FLAP

    @property
    def is_curving(self) -> bool:
        return self.kind in (TileClass.CURVING_LEFT, TileClass.CURVING_RIGHT)


def tile_type(i: int, t0: TileType = TileType.SLASH) -> TileType:
    return t0 if i % 2 == 0 else t0.flipped()


def classify_turn(a: int, b: int) -> TileClass:
    if a == b:
        return TileClass.STRAIGHT
    if b == opposite(a):
        return TileClass.FLAP
    ax, ay = STEPS[a]
    bx, by = STEPS[b]
    return TileClass.CURVING_LEFT if ax * by - ay * bx > 0 else TileClass.CURVING_RIGHT


def tile_nodes(seq: Sequence, t0: TileType = TileType.SLASH) -> list[TileNode]:
    nodes = []
    for i in range(seq.n):
        a, b = seq.s(i), seq.s(i + 1)
        nodes.append(
            TileNode(
                index=i,
                cell=seq.cells[i],
                type=tile_type(i, t0),
                kind=classify_turn(a, b),
                hinge_in=opposite(a),
                hinge_out=b,
            )
        )
    return nodes


def flap_count(seq: Sequence) -> int:
    return sum(1 for i in range(seq.n) if seq.s(i + 1) == opposite(seq.s(i)))


def area(seq: Sequence) -> int:
    return len(set(seq.cells))


@dataclass(frozen=True)
class Transform:
    """Group element ``shift o reverse o letter-map``.

    The letter map is ``d -> (+-d + offset) mod 4``: ``flip`` negates the
    letter (reflection in the E-W axis), ``offset`` rotates by quarter turns.
    """

    shift: int = 0
    reverse: bool = False
    flip: bool = False
    offset: int = 0

    def letter(self, d: int) -> int:
        return ((-d if self.flip else d) + self.offset) % 4

    def apply_word(self, word: tuple[int, ...]) -> tuple[int, ...]:
        w = tuple(self.letter(d) for d in word)
        if self.reverse:
            w = w[::-1]
        k = self.shift % len(w)
        return w[k:] + w[:k]

    def inverse(self, n: int) -> Transform:
        off = self.offset if self.flip else -self.offset % 4
        if self.reverse:
            return Transform(self.shift % n, True, self.flip, off)
        return Transform(-self.shift % n, False, self.flip, off)

    def tile_map(self, n: int) -> list[int]:
        """``m[j]`` is the old index of the tile that becomes new ``T_j``."""
        if self.reverse:
            return [(-(j + self.shift)) % n for j in range(n)]
        return [(j + self.shift) % n for j in range(n)]

    @property
    def swaps_diagonals(self) -> bool:
        """Whether the plane isometry exchanges the slash and backslash diagonals."""
        return (self.offset + self.flip) % 2 == 1


def letter_maps() -> Iterator[tuple[bool, int]]:
    for flip in (False, True):
        for offset in range(4):
            yield flip, offset


def all_transforms(n: int) -> Iterator[Transform]:
    for flip, offset in letter_maps():
        for reverse in (False, True):
            for shift in range(n):
                yield Transform(shift, reverse, flip, offset)


def apply_transform(seq: Sequence, g: Transform) -> Sequence:
    return Sequence(g.apply_word(seq.symbols))


def _images(word: tuple[int, ...]) -> Iterator[tuple[Transform, tuple[int, ...]]]:
    n = len(word)
    for flip, offset in letter_maps():
        mapped = tuple(((-d if flip else d) + offset) % 4 for d in word)
        for reverse in (False, True):
            w = mapped[::-1] if reverse else mapped
            doubled = w + w
            for k in range(n):
                yield Transform(k, reverse, flip, offset), doubled[k : k + n]


def canonical_representative(seq: Sequence) -> tuple[Sequence, Transform]:
    best_g, best = min(_images(seq.symbols), key=lambda item: item[1])
    return Sequence(best), best_g


def symmetry_group(seq: Sequence) -> list[Transform]:
    return [g for g, w in _images(seq.symbols) if w == seq.symbols]


def is_canonical(word: tuple[int, ...]) -> bool:
    n = len(word)
    for flip, offset in letter_maps():
        mapped = tuple(((-d if flip else d) + offset) % 4 for d in word)
        for w in (mapped, mapped[::-1]):
            doubled = w + w
            for k in range(n):
                # only shifts starting with E can undercut a word starting with E
                if doubled[k] == E and doubled[k : k + n] < word:
                    return False
    return True


def _closed_words(n: int) -> Iterator[tuple[int, ...]]:
    """Admissible words of length n starting with E, second letter not S, in lex order."""
    word = [E] + [0] * (n - 1)

    def rec(pos: int, dx: int, dy: int) -> Iterator[tuple[int, ...]]:
        left = n - pos
        if pos == n:
            if dx == 0 and dy == 0:
                yield tuple(word)
            return
        for d in range(4):
            if pos == 1 and d == S:
                continue
            sx, sy = STEPS[d]
            x, y = dx + sx, dy + sy
            if abs(x) + abs(y) > left - 1:
                continue
            word[pos] = d
            yield from rec(pos + 1, x, y)

    yield from rec(1, 1, 0)


def enumerate_canonical(n: int) -> list[Sequence]:
    if n % 2 or not MIN_TILES <= n <= MAX_TILES:
        raise OutOfRange(f"tile count must be even and in [{MIN_TILES}, {MAX_TILES}], got {n}")
    return [Sequence(w) for w in _closed_words(n) if is_canonical(w)]
