"""Stackings of superposed tiles and the metric invariant.

Levels count from the bottom of each cell: ``1`` is the lowest tile.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from rubiksmagic.sequence import (
    LETTERS,
    Axis,
    Sequence,
    SequenceError,
    TileClass,
    TileType,
    Transform,
    parse_sequence,
    symmetry_group,
    tile_nodes,
    tile_type,
)


class AssemblageError(ValueError):
    pass


class BadLevel(AssemblageError):
    pass


class BadPrefix(AssemblageError):
    pass


class NotAFlap(AssemblageError):
    pass


class Sense(enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True)
class FlapAttitude:
    axis: Axis
    sense: Sense

    @property
    def skips(self) -> bool:
        """The ribbon jumps over the flap without touching it."""
        return (self.axis is Axis.HORIZONTAL) == (self.sense is Sense.ASCENDING)


@dataclass(frozen=True)
class Assemblage:
    seq: Sequence
    levels: tuple[int, ...]
    t0: TileType = TileType.SLASH

    @cached_property
    def nodes(self):
        return tile_nodes(self.seq, self.t0)

    def level(self, i: int) -> int:
        return self.levels[i % self.seq.n]

    def turned_over(self) -> Assemblage:
        """Mirror image in a horizontal plane: stacks invert, types flip."""
        occ = self.seq.occupancy
        lv = tuple(len(occ[c]) + 1 - h for c, h in zip(self.seq.cells, self.levels))
        return Assemblage(self.seq, lv, self.t0.flipped())

    def __str__(self) -> str:
        return format_assemblage(self)


@dataclass(frozen=True)
class MetricReport:
    delta_c: int
    delta_f: int
    per_tile: tuple[int, ...]

    @property
    def delta(self) -> int:
        return self.delta_c + self.delta_f


# -- admissibility ---------------------------------------------------------


def _edge(a: tuple[int, int], b: tuple[int, int]):
    return (a, b) if a < b else (b, a)


def link_constraints(seq: Sequence) -> list[tuple[int, int, int, int]]:
    """Pairs of hinge links across a common edge, sharing no tile.

    Each entry ``(a, c, b, d)`` demands ``a`` above ``c`` exactly when ``b``
    is above ``d``; ``a, c`` share one cell of the edge and ``b, d`` the other.
    """
    n = seq.n
    cells = seq.cells
    by_edge: dict = {}
    for i in range(n):
        j = (i + 1) % n
        e = _edge(cells[i], cells[j])
        # orient each link as (tile in lower cell, tile in upper cell)
        link = (i, j) if cells[i] == e[0] else (j, i)
        by_edge.setdefault(e, []).append(link)
    out = []
    for links in by_edge.values():
        for (a, b), (c, d) in combinations(links, 2):
            if len({a, b, c, d}) == 4:
                out.append((a, c, b, d))
    return out


def _levels_valid(seq: Sequence, levels) -> bool:
    if len(levels) != seq.n:
        return False
    for tiles in seq.occupancy.values():
        if sorted(levels[t] for t in tiles) != list(range(1, len(tiles) + 1)):
            return False
    return True


def is_admissible_assemblage(seq: Sequence, levels) -> bool:
    levels = tuple(levels)
    if not _levels_valid(seq, levels):
        return False
    for a, c, b, d in link_constraints(seq):
        if (levels[a] > levels[c]) != (levels[b] > levels[d]):
            return False
    return True


def admissible_level_assignments(seq: Sequence) -> list[tuple[int, ...]]:
    """Every admissible level vector, by backtracking over tile insertions.

    Tiles are inserted in index order into their cell's stack.  Insertion
    never changes the relative order of tiles already placed, so each link
    constraint is checked as soon as its last tile has been placed.
    """
    n = seq.n
    cells = seq.cells
    due: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
    for con in link_constraints(seq):
        due[max(con)].append(con)
    stacks: dict = {c: [] for c in seq.occupancy}
    results = []

    def above(x: int, y: int) -> bool:
        st = stacks[cells[x]]
        return st.index(x) > st.index(y)

    def rec(t: int) -> None:
        if t == n:
            lv = [0] * n
            for st in stacks.values():
                for h, tile in enumerate(st, 1):
                    lv[tile] = h
            results.append(tuple(lv))
            return
        st = stacks[cells[t]]
        for pos in range(len(st) + 1):
            st.insert(pos, t)
            if all(above(a, c) == above(b, d) for a, c, b, d in due[t]):
                rec(t + 1)
            st.pop(pos)

    rec(0)
    return results


# -- symmetry --------------------------------------------------------------


def transport(asm: Assemblage, g: Transform) -> Assemblage:
    """Image of an assemblage under a symmetry ``g`` of its sequence.

    The result is normalized to ``T_0`` of type slash by turning it over
    when needed.
    """
    seq = asm.seq
    m = g.tile_map(seq.n)
    lv = tuple(asm.levels[m[j]] for j in range(seq.n))
    t0 = tile_type(m[0], asm.t0)
    if g.swaps_diagonals:
        t0 = t0.flipped()
    out = Assemblage(seq, lv, t0)
    if t0 is not TileType.SLASH:
        out = out.turned_over()
    return out


def orbit(asm: Assemblage, group: list[Transform]) -> set[tuple[int, ...]]:
    return {transport(asm, g).levels for g in group}


def enumerate_assemblages(seq: Sequence) -> list[Assemblage]:
    """Admissible assemblages with ``T_0`` slash, one per symmetry class.

    Each class is represented by its largest level vector; classes are
    listed in decreasing order of that vector.
    """
    group = symmetry_group(seq)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for lv in admissible_level_assignments(seq):
        if lv in seen:
            continue
        orb = orbit(Assemblage(seq, lv), group)
        seen |= orb
        reps.append(max(orb))
    reps.sort(reverse=True)
    return [Assemblage(seq, lv) for lv in reps]


# -- flaps and the metric invariant ---------------------------------------


def flap_attitude(asm: Assemblage, i: int) -> FlapAttitude:
    node = asm.nodes[i % asm.seq.n]
    if node.kind is not TileClass.FLAP:
        raise NotAFlap(f"tile T_{i} of {asm.seq} is not a flap")
    up = asm.level(i - 1) < asm.level(i + 1)
    return FlapAttitude(node.axis, Sense.ASCENDING if up else Sense.DESCENDING)


def curving_delta(node) -> int:
    sign = 1 if node.type is TileType.SLASH else -1
    return sign if node.kind is TileClass.CURVING_RIGHT else -sign


def delta_c(seq: Sequence, t0: TileType = TileType.SLASH) -> int:
    return sum(curving_delta(nd) for nd in tile_nodes(seq, t0) if nd.is_curving)


def metric_invariant(asm: Assemblage) -> MetricReport:
    per_tile = []
    dc = df = 0
    for nd in asm.nodes:
        if nd.is_curving:
            v = curving_delta(nd)
            dc += v
        elif nd.is_flap:
            v = -2 if flap_attitude(asm, nd.index).skips else 2
            df += v
        else:
            v = 0
        per_tile.append(v)
    return MetricReport(dc, df, tuple(per_tile))


# -- text notation ---------------------------------------------------------


def format_assemblage(asm: Assemblage) -> str:
    """``sla E3 E2 ...``: each letter is followed by the level of the tile it reaches."""
    n = asm.seq.n
    parts = [asm.t0.value]
    for i in range(1, n + 1):
        parts.append(f"{LETTERS[asm.seq.s(i)]}{asm.level(i)}")
    return " ".join(parts)


_TOKEN = re.compile(r"([ENWS])_?\{?(\d*)\}?")


def parse_assemblage(text: str) -> Assemblage:
    """Inverse of :func:`format_assemblage`; a missing level digit means 1."""
    words = text.split()
    if not words or words[0] not in ("sla", "bsla"):
        raise BadPrefix(f"assemblage must start with 'sla' or 'bsla': {text!r}")
    t0 = TileType(words[0])
    letters = []
    raw = []
    for w in words[1:]:
        m = _TOKEN.fullmatch(w)
        if m is None:
            raise BadLevel(f"cannot read token {w!r} in {text!r}")
        letters.append(m.group(1))
        raw.append(int(m.group(2)) if m.group(2) else 1)
    try:
        seq = parse_sequence("".join(letters))
    except SequenceError as exc:
        raise AssemblageError(str(exc)) from exc
    n = seq.n
    # token i carries the level of T_i, the last one that of T_0
    levels = tuple(raw[(i - 1) % n] for i in range(n))
    for c, tiles in seq.occupancy.items():
        for t in tiles:
            if not 1 <= levels[t] <= len(tiles):
                raise BadLevel(
                    f"tile T_{t} at level {levels[t]} but its cell holds {len(tiles)} tiles"
                )
    if not _levels_valid(seq, levels):
        raise BadLevel(f"levels in {text!r} are not a permutation within each cell")
    return Assemblage(seq, levels, t0)
