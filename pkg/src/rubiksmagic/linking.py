"""Explicit embedding of the ribbon and its linking number.

Tiles of level ``k`` sit at height ``k * stack_gap``; the ribbon runs
``face_offset`` above (front) or below (back) them.  Every place where the
ribbon meets a tile side is a *port*.  At each geometric edge the ribbon
pieces (bounces, hinge passes, flap skips) join ports of the two stacks
meeting there.  Ports lie on a convex lens in the plane through the edge
midpoint perpendicular to the edge, so the straight chords of a
crossing-free diagram never meet.  Each port is also pushed half an
``advance`` along the edge, backwards for arrivals and forwards for
departures, so that a fold seen from above is a clean V instead of a kink.

On a face the ribbon width is horizontal and perpendicular to the travel
direction.  All coordinates are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction as Q
from itertools import combinations

from rubiksmagic.assemblage import Assemblage
from rubiksmagic.ribbon import (
    Bounce,
    Face,
    FaceSegment,
    FlapSkip,
    HingePass,
    RibbonPath,
    build_ribbon,
    face_after,
    face_before,
    twist,
)
from rubiksmagic.sequence import STEPS, opposite

Point = tuple[Q, Q, Q]


class EmbeddingDegenerate(RuntimeError):
    pass


class NonGenericProjection(RuntimeError):
    pass


@dataclass(frozen=True)
class EmbeddingParams:
    stack_gap: Q = Q(1)
    face_offset: Q = Q(1, 5)
    half_width: Q = Q(1, 256)
    lens_width: Q = Q(1, 5)
    advance: Q = Q(1, 20)
    tilt: tuple[Q, Q] = (Q(3, 1000), Q(7, 1000))
    retries: int = 8

    def validate(self) -> None:
        if not 0 < self.face_offset < self.stack_gap / 2:
            raise ValueError("face_offset must lie in (0, stack_gap/2)")
        if not 0 < self.half_width < self.face_offset / 2:
            raise ValueError("half_width must lie in (0, face_offset/2)")
        if not 0 < self.lens_width < Q(1, 2):
            raise ValueError("lens_width must lie in (0, 1/2)")
        if not 0 < self.advance < Q(1, 2):
            raise ValueError("advance must lie in (0, 1/2)")

    def scaled(self, **factors) -> EmbeddingParams:
        return replace(self, **{k: getattr(self, k) * Q(v) for k, v in factors.items()})


@dataclass
class Polyline3:
    points: list[Point]
    name: str = ""

    def __len__(self) -> int:
        return len(self.points)

    def segments(self):
        pts = self.points
        for k in range(len(pts)):
            yield pts[k], pts[(k + 1) % len(pts)]


@dataclass(frozen=True)
class Crossing:
    position: tuple[Q, Q]
    over: tuple[str, int]
    under: tuple[str, int]
    sign: int


@dataclass
class Embedding:
    centerline: Polyline3
    boundary_pos: Polyline3
    boundary_neg: Polyline3
    chords: dict = field(default_factory=dict)


# -- ports and edge chords -------------------------------------------------

Port = tuple[int, Face, int]  # tile, face, side


def _midpoint(cell, side) -> tuple[Q, Q]:
    cx, cy = cell
    dx, dy = STEPS[side]
    return Q(2 * cx + 1 + dx, 2), Q(2 * cy + 1 + dy, 2)


def _edge_key(cell, side):
    return _midpoint(cell, side)


def edge_chords(path: RibbonPath, asm: Assemblage) -> dict:
    """Ribbon pieces at every edge, as pairs of ports in walk order."""
    nodes = asm.nodes
    cells = asm.seq.cells
    chords: dict = {}

    def add(p: Port, q: Port) -> None:
        key = _edge_key(cells[p[0]], p[2])
        chords.setdefault(key, []).append((p, q))

    for ev in path.events:
        if isinstance(ev, Bounce):
            add((ev.tile, face_before(ev.side), ev.side), (ev.tile, face_after(ev.side), ev.side))
        elif isinstance(ev, HingePass):
            add((ev.tile_a, ev.face_a, ev.side), (ev.tile_b, ev.face_b, opposite(ev.side)))
        elif isinstance(ev, FlapSkip):
            add(
                (ev.tile_prev, ev.face_prev, ev.side),
                (ev.tile_next, ev.face_next, nodes[ev.tile_next].hinge_in),
            )
    return chords


class _Geometry:
    def __init__(self, asm: Assemblage, path: RibbonPath, params: EmbeddingParams):
        self.asm = asm
        self.params = params
        self.chords = edge_chords(path, asm)
        # a strand keeps moving along the edge it folds round or passes:
        # arrival ports sit half an advance behind the midpoint, departures ahead
        self.shift = {}
        half = params.advance / 2
        for ev in path.events:
            if isinstance(ev, FaceSegment):
                cell = asm.seq.cells[ev.tile]
                ma, mb = _midpoint(cell, ev.start), _midpoint(cell, ev.end)
                d = (mb[0] - ma[0], mb[1] - ma[1])
                for side, sgn in ((ev.start, 1), (ev.end, -1)):
                    ex, ey = _edge_axis(side)
                    along = 1 if d[0] * ex + d[1] * ey > 0 else -1
                    self.shift[(ev.tile, ev.face, side)] = sgn * along * half
        self.lens = {}
        for key, pieces in self.chords.items():
            zs = [self.height(p) for pq in pieces for p in pq]
            lo, hi = min(zs), max(zs)
            centre = (lo + hi) / 2
            reach = (hi - lo) / 2 + params.stack_gap
            self.lens[key] = (centre, Q(3, 4) * params.lens_width / (reach * reach))

    def height(self, port: Port) -> Q:
        tile, face, _ = port
        p = self.params
        z = self.asm.levels[tile] * p.stack_gap
        return z + p.face_offset if face is Face.FRONT else z - p.face_offset

    def inset(self, port: Port) -> Q:
        tile, _, side = port
        key = _edge_key(self.asm.seq.cells[tile], side)
        z = self.height(port)
        if key not in self.lens:
            return self.params.lens_width
        centre, kappa = self.lens[key]
        return self.params.lens_width - kappa * (z - centre) ** 2

    def port_point(self, port: Port) -> Point:
        tile, _, side = port
        mx, my = _midpoint(self.asm.seq.cells[tile], side)
        nx, ny = STEPS[side]
        d = self.inset(port)
        ex, ey = _edge_axis(side)
        j = self.shift.get(port, Q(0))
        return (mx - d * nx + j * ex, my - d * ny + j * ey, self.height(port))


def _edge_axis(side: int) -> tuple[int, int]:
    """Unit vector along the edge on ``side``, the same for both cells."""
    return (0, 1) if side in (0, 2) else (1, 0)


def chord_crossings(chords: dict, heights) -> list:
    """Pairs of pieces that cross at some edge (never for a realizable assemblage).

    Ports around an edge are ordered cyclically: one stack from top to
    bottom, then the other from bottom to top.
    """
    bad = []
    for key, pieces in chords.items():
        sides = sorted({p[2] for pq in pieces for p in pq})

        def pos(port, first=sides[0]):
            z = heights(port)
            return (0, -z) if port[2] == first else (1, z)

        for c1, c2 in combinations(pieces, 2):
            a, b = sorted((pos(c1[0]), pos(c1[1])))
            x, y = pos(c2[0]), pos(c2[1])
            if (a < x < b) != (a < y < b):
                bad.append((key, c1, c2))
    return bad


def _fold_frame(frame, side: int, face: Face):
    """Width vector halfway round a fold over ``side``.

    The ribbon leaving ``face`` wraps round the outside of the side: the
    component of the width along the outward normal turns into minus the
    face normal, while the component along the edge is unchanged.
    """
    nx, ny = STEPS[side]
    b = frame[0] * nx + frame[1] * ny
    up = 1 if face is Face.FRONT else -1
    return (frame[0] - b * nx, frame[1] - b * ny, -b * up)


def _folded(frame, side: int):
    nx, ny = STEPS[side]
    b = frame[0] * nx + frame[1] * ny
    return (frame[0] - 2 * b * nx, frame[1] - 2 * b * ny, 0)


def embed(
    asm: Assemblage, params: EmbeddingParams | None = None, path: RibbonPath | None = None
) -> Embedding:
    """Centerline and the two boundary curves of the ribbon.

    On a face the ribbon runs straight between two ports with its width
    horizontal and perpendicular to the direction of travel.  Passing a
    hinge it keeps its width vector; bouncing off a side, or jumping past
    skipped flaps, it folds, which mirrors the width across the side.
    """
    params = params or EmbeddingParams()
    params.validate()
    path = path or build_ribbon(asm)
    geo = _Geometry(asm, path, params)
    bad = chord_crossings(geo.chords, geo.height)
    if bad:
        raise EmbeddingDegenerate(f"ribbon pieces cross at an edge of {asm}: {bad[0]}")

    centre: list[Point] = []
    frames: list = []
    frame = None
    first = None
    events = path.events
    for k, ev in enumerate(events):
        if isinstance(ev, FaceSegment):
            pa = geo.port_point((ev.tile, ev.face, ev.start))
            pb = geo.port_point((ev.tile, ev.face, ev.end))
            # the ideal diagonal between side midpoints; ports sit slightly inside
            cell = asm.seq.cells[ev.tile]
            ma, mb = _midpoint(cell, ev.start), _midpoint(cell, ev.end)
            dx, dy = 2 * (mb[0] - ma[0]), 2 * (mb[1] - ma[1])
            if frame is None:
                frame = first = (-dy, dx, 0)
            if frame[0] * dx + frame[1] * dy != 0 or frame[2] != 0:
                raise EmbeddingDegenerate(f"ribbon width not transverse on {ev}")
            centre += [pa, pb]
            frames += [frame, frame]
            continue
        if isinstance(ev, HingePass) or (isinstance(ev, FlapSkip) and len(ev.flaps) % 2 == 0):
            # straight across the edge; an even run of flaps lands in the far cell
            continue
        side = ev.side
        face = face_before(side) if isinstance(ev, Bounce) else ev.face_prev
        mid = _fold_frame(frame, side, face)
        a = centre[-1]
        nxt = events[(k + 1) % len(events)]
        b = geo.port_point((nxt.tile, nxt.face, nxt.start))
        centre.append(tuple((u + v) / 2 for u, v in zip(a, b)))
        frames.append(mid)
        frame = _folded(frame, side)
    if frame != first:
        raise EmbeddingDegenerate("ribbon closes with a half twist")

    w = params.half_width
    pos = [tuple(c + w * f for c, f in zip(p, fr)) for p, fr in zip(centre, frames)]
    neg = [tuple(c - w * f for c, f in zip(p, fr)) for p, fr in zip(centre, frames)]
    return Embedding(
        Polyline3(centre, "centre"),
        Polyline3(pos, "pos"),
        Polyline3(neg, "neg"),
        geo.chords,
    )


# -- projection and crossings ---------------------------------------------


def _cross(a, b) -> Q:
    return a[0] * b[1] - a[1] * b[0]


def _project(p: Point, tilt) -> tuple[Q, Q]:
    return p[0] + tilt[0] * p[2], p[1] + tilt[1] * p[2]


def _segments(line: Polyline3, tilt):
    out = []
    for k, (a, b) in enumerate(line.segments()):
        pa, pb = _project(a, tilt), _project(b, tilt)
        box = (
            float(min(pa[0], pb[0])),
            float(max(pa[0], pb[0])),
            float(min(pa[1], pb[1])),
            float(max(pa[1], pb[1])),
        )
        out.append((k, a, b, pa, pb, box))
    return out


def _intersect(s1, s2, adjacent: int):
    """Crossing of two projected segments, or None.

    ``adjacent`` is 0 for unrelated segments, +1 when the end of ``s1`` is the
    start of ``s2``, -1 for the reverse.  Raises NonGenericProjection on any
    touching, overlap or equal depth.
    """
    _, a, b, pa, pb, box1 = s1
    _, c, d, pc, pd, box2 = s2
    eps = 1e-9
    if box1[1] < box2[0] - eps or box2[1] < box1[0] - eps:
        return None
    if box1[3] < box2[2] - eps or box2[3] < box1[2] - eps:
        return None
    r = (pb[0] - pa[0], pb[1] - pa[1])
    u = (pd[0] - pc[0], pd[1] - pc[1])
    qp = (pc[0] - pa[0], pc[1] - pa[1])
    den = _cross(r, u)
    if den == 0:
        if _cross(qp, r) != 0:
            return None
        rr = r[0] * r[0] + r[1] * r[1]
        if rr == 0:
            raise NonGenericProjection("segment projects to a point")
        t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
        t1 = t0 + (u[0] * r[0] + u[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        if adjacent and (hi == 0 or lo == 1):
            return None  # collinear continuation through the shared vertex
        raise NonGenericProjection("collinear overlapping segments")
    s = _cross(qp, u) / den
    t = _cross(qp, r) / den
    if adjacent == 1 and s == 1 and t == 0:
        return None
    if adjacent == -1 and s == 0 and t == 1:
        return None
    if not (0 <= s <= 1 and 0 <= t <= 1):
        return None
    if s in (0, 1) or t in (0, 1):
        raise NonGenericProjection("projected segments touch at a vertex")
    z1 = a[2] + s * (b[2] - a[2])
    z2 = c[2] + t * (d[2] - c[2])
    if z1 == z2:
        raise EmbeddingDegenerate("curves meet in space")
    pos = (pa[0] + s * r[0], pa[1] + s * r[1])
    if z1 > z2:
        return pos, True, _sign(r, u)
    return pos, False, _sign(u, r)


def _sign(over, under) -> int:
    return 1 if _cross(over, under) > 0 else -1


def _crossings_with_tilt(a: Polyline3, b: Polyline3 | None, tilt) -> list[Crossing]:
    out = []
    sa = _segments(a, tilt)
    if b is None:
        m = len(sa)
        for i, j in combinations(range(m), 2):
            adj = 1 if j == i + 1 else (-1 if (i == 0 and j == m - 1) else 0)
            hit = _intersect(sa[i], sa[j], adj)
            if hit:
                pos, first_over, sign = hit
                over, under = (i, j) if first_over else (j, i)
                out.append(Crossing(pos, (a.name, over), (a.name, under), sign))
        return out
    sb = _segments(b, tilt)
    for s1 in sa:
        for s2 in sb:
            hit = _intersect(s1, s2, 0)
            if hit:
                pos, first_over, sign = hit
                if first_over:
                    out.append(Crossing(pos, (a.name, s1[0]), (b.name, s2[0]), sign))
                else:
                    out.append(Crossing(pos, (b.name, s2[0]), (a.name, s1[0]), sign))
    return out


def _tilts(params: EmbeddingParams):
    tx, ty = params.tilt
    yield tx, ty
    for k in range(1, params.retries + 1):
        yield tx + Q(k, 7919), ty - Q(k, 104729)


def signed_crossings(
    a: Polyline3, b: Polyline3 | None = None, params: EmbeddingParams | None = None
) -> list[Crossing]:
    """Crossings of ``a`` with ``b`` (or with itself when ``b`` is None).

    The projection looks down along ``(tx, ty, -1)``; the strand with larger
    height is over.  A crossing is positive when the over strand turns
    counterclockwise onto the under strand.  Degenerate projections are
    retried with deterministically perturbed tilts.
    """
    params = params or EmbeddingParams()
    for tilt in _tilts(params):
        try:
            return _crossings_with_tilt(a, b, tilt)
        except NonGenericProjection:
            continue
    raise NonGenericProjection(f"no generic projection found after {params.retries} retries")


def linking_number(
    b1: Polyline3, b2: Polyline3, params: EmbeddingParams | None = None
) -> int:
    total = sum(c.sign for c in signed_crossings(b1, b2, params))
    if total % 2:
        raise NonGenericProjection("odd number of crossings between closed curves")
    return total // 2


def writhe(line: Polyline3, params: EmbeddingParams | None = None) -> tuple[int, int]:
    """Signed sum and number of self-crossings in the projection."""
    cs = signed_crossings(line, None, params)
    return sum(c.sign for c in cs), len(cs)


@dataclass(frozen=True)
class LinkReport:
    l_t: Q
    writhe: int
    self_crossings: int
    l: int

    @property
    def method_agreement(self) -> bool:
        return self.l_t + self.writhe == self.l


def link_report(asm: Assemblage, params: EmbeddingParams | None = None) -> LinkReport:
    params = params or EmbeddingParams()
    path = build_ribbon(asm)
    emb = embed(asm, params, path)
    wr, count = writhe(emb.centerline, params)
    lk = linking_number(emb.boundary_pos, emb.boundary_neg, params)
    return LinkReport(twist(asm).l_t, wr, count, lk)


def dump_debug(emb: Embedding, params: EmbeddingParams | None = None) -> str:
    """Line-oriented text for external plotting.

    A ``# curve <name> <count>`` header precedes one ``x y z`` line per
    vertex; a ``# crossings <kind> <count>`` header precedes one
    ``x y over_curve over_seg under_curve under_seg sign`` line per crossing,
    first for the centerline with itself, then between the boundaries.
    """
    lines = []
    for line in (emb.centerline, emb.boundary_pos, emb.boundary_neg):
        lines.append(f"# curve {line.name} {len(line)}")
        for x, y, z in line.points:
            lines.append(f"{float(x):.9f} {float(y):.9f} {float(z):.9f}")
    groups = (
        ("self", signed_crossings(emb.centerline, None, params)),
        ("boundary", signed_crossings(emb.boundary_pos, emb.boundary_neg, params)),
    )
    for kind, crossings in groups:
        lines.append(f"# crossings {kind} {len(crossings)}")
        for c in crossings:
            x, y = c.position
            lines.append(
                f"{float(x):.9f} {float(y):.9f} {c.over[0]} {c.over[1]} "
                f"{c.under[0]} {c.under[1]} {c.sign:+d}"
            )
    return "\n".join(lines) + "\n"
