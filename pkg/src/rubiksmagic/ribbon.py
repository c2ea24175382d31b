"""Combinatorial ribbon path through a planar face-up assemblage.

On every face the ribbon runs between midpoints of two adjacent sides,
parallel to that face's groove.  Seen from above, a slash tile is traversed
around its sides in the order W, N, E, S and a backslash tile in the order
W, S, E, N; the ribbon is on the front after touching a vertical (E/W) side
and on the back after a horizontal (N/S) one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from rubiksmagic.assemblage import Assemblage, MetricReport, flap_attitude
from rubiksmagic.sequence import LETTERS, E, N, S, TileType, W, is_horizontal

SIDE_CYCLE = {
    TileType.SLASH: (W, N, E, S),
    TileType.BACKSLASH: (W, S, E, N),
}


class Face(enum.Enum):
    FRONT = "front"
    BACK = "back"

    def other(self) -> Face:
        return Face.BACK if self is Face.FRONT else Face.FRONT


def face_after(side: int) -> Face:
    """Face the ribbon lies on just after touching ``side``."""
    return Face.FRONT if is_horizontal(side) else Face.BACK


def face_before(side: int) -> Face:
    return face_after(side).other()


@dataclass(frozen=True)
class FaceSegment:
    tile: int
    face: Face
    start: int
    end: int


@dataclass(frozen=True)
class Bounce:
    tile: int
    side: int


@dataclass(frozen=True)
class HingePass:
    tile_a: int
    face_a: Face
    tile_b: int
    face_b: Face
    side: int  # side of tile_a that is crossed


@dataclass(frozen=True)
class FlapSkip:
    """The ribbon jumps from ``tile_prev`` to ``tile_next`` past untouched flaps."""

    tile_prev: int
    face_prev: Face
    tile_next: int
    face_next: Face
    flaps: tuple[int, ...]
    side: int  # side of tile_prev facing the flaps


RibbonEvent = FaceSegment | Bounce | HingePass | FlapSkip


@dataclass(frozen=True)
class RibbonPath:
    events: tuple
    n: int

    @property
    def segment_count(self) -> int:
        return sum(1 for ev in self.events if isinstance(ev, FaceSegment))

    def segments_on(self, tile: int) -> list[FaceSegment]:
        return [ev for ev in self.events if isinstance(ev, FaceSegment) and ev.tile == tile]


def _arc(cycle: tuple[int, ...], start: int, end: int, full: bool) -> list[int]:
    """Sides visited going around ``cycle`` from ``start`` to ``end``."""
    k = cycle.index(start)
    out = [start]
    while True:
        k = (k + 1) % 4
        out.append(cycle[k])
        if cycle[k] == end and (not full or len(out) == 5):
            return out


def build_ribbon(asm: Assemblage) -> RibbonPath:
    """Walk the ribbon once around, starting where it enters the first touched tile.

    Each visited tile emits its face segments and bounces, then the event
    carrying the ribbon on: a hinge pass to the next tile, or a skip over a
    run of consecutive untouched flaps.
    """
    n = asm.seq.n
    nodes = asm.nodes
    skipped = {
        nd.index for nd in nodes if nd.is_flap and flap_attitude(asm, nd.index).skips
    }
    if len(skipped) == n:
        raise ValueError(f"ribbon touches no tile of {asm}")
    start = min(set(range(n)) - skipped)
    events: list = []
    i = start
    while True:
        nd = nodes[i]
        sides = _arc(SIDE_CYCLE[nd.type], nd.hinge_in, nd.hinge_out, nd.is_flap)
        for k in range(len(sides) - 1):
            a, b = sides[k], sides[k + 1]
            if k:
                events.append(Bounce(i, a))
            events.append(FaceSegment(i, face_after(a), a, b))
        side = nd.hinge_out
        j = (i + 1) % n
        run = []
        while j in skipped:
            run.append(j)
            j = (j + 1) % n
        if run:
            events.append(FlapSkip(i, face_before(side), j, face_after(side), tuple(run), side))
        else:
            events.append(HingePass(i, face_before(side), j, face_after(side), side))
        i = j
        if i == start:
            break
    return RibbonPath(tuple(events), n)


def check_length(path: RibbonPath, report: MetricReport) -> bool:
    return path.segment_count == 2 * path.n + report.delta


def section_counts(path: RibbonPath) -> list[int]:
    counts = [0] * path.n
    for ev in path.events:
        if isinstance(ev, FaceSegment):
            counts[ev.tile] += 1
    return counts


@dataclass(frozen=True)
class TwistReport:
    per_tile: tuple[Fraction, ...]

    @property
    def l_t(self) -> Fraction:
        return sum(self.per_tile, Fraction(0))


HALF = Fraction(1, 2)


def twist(asm: Assemblage) -> TwistReport:
    """Half-integer bounce contributions of straight tiles and flaps.

    Curving tiles contribute nothing.  A straight tile or flap counts
    ``+1/2`` when it is vertical and slash or horizontal and backslash,
    ``-1/2`` otherwise.
    """
    per = []
    for nd in asm.nodes:
        if nd.is_curving:
            per.append(Fraction(0))
            continue
        slash = nd.type is TileType.SLASH
        positive = slash != nd.horizontal
        per.append(HALF if positive else -HALF)
    return TwistReport(tuple(per))


def dump_events(path: RibbonPath) -> str:
    """One line per event, stable text for golden comparisons."""
    lines = []
    for k, ev in enumerate(path.events):
        if isinstance(ev, FaceSegment):
            body = f"face T{ev.tile} {ev.face.value} {LETTERS[ev.start]}->{LETTERS[ev.end]}"
        elif isinstance(ev, Bounce):
            body = f"bounce T{ev.tile} {LETTERS[ev.side]}"
        elif isinstance(ev, HingePass):
            body = (
                f"hinge T{ev.tile_a} {ev.face_a.value} -> T{ev.tile_b} {ev.face_b.value} "
                f"{LETTERS[ev.side]}"
            )
        else:
            over = ",".join(f"T{f}" for f in ev.flaps)
            body = (
                f"skip T{ev.tile_prev} {ev.face_prev.value} -> T{ev.tile_next} "
                f"{ev.face_next.value} over {over} {LETTERS[ev.side]}"
            )
        lines.append(f"{k:3d} {body}")
    return "\n".join(lines)

