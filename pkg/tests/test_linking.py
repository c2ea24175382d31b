"""Embedding of the ribbon, crossing signs and the linking number."""

from __future__ import annotations

from fractions import Fraction as Q

import pytest

from rubiksmagic.assemblage import enumerate_assemblages, metric_invariant, parse_assemblage
from rubiksmagic.linking import (
    EmbeddingParams,
    NonGenericProjection,
    Polyline3,
    dump_debug,
    embed,
    link_report,
    linking_number,
    signed_crossings,
    writhe,
)
from rubiksmagic.ribbon import build_ribbon
from rubiksmagic.sequence import enumerate_canonical

ALL8 = [a for s in enumerate_canonical(8) for a in enumerate_assemblages(s)]
ZERO8 = [a for a in ALL8 if metric_invariant(a).delta == 0]

TILTS = [
    (Q(3, 1000), Q(7, 1000)),
    (Q(-1, 200), Q(1, 300)),
    (Q(1, 150), Q(-1, 400)),
]


def square(cx, cy, z, r=1, name=""):
    pts = [(cx - r, cy - r, z), (cx + r, cy - r, z), (cx + r, cy + r, z), (cx - r, cy + r, z)]
    return Polyline3([tuple(map(Q, p)) for p in pts], name)


def vertical_square(cx, z, r=1, name=""):
    """A square in the plane y = 0, centered at (cx, 0, z)."""
    pts = [(cx - r, 0, z - r), (cx + r, 0, z - r), (cx + r, 0, z + r), (cx - r, 0, z + r)]
    return Polyline3([tuple(map(Q, p)) for p in pts], name)


# -- crossing machinery on hand-made curves ----------------------------------


def test_hopf_link():
    a = square(0, 0, 0, name="a")
    b = vertical_square(1, 0, name="b")
    cs = signed_crossings(a, b)
    assert len(cs) == 2
    assert cs[0].sign == cs[1].sign
    assert abs(linking_number(a, b)) == 1


def test_hopf_link_orientation():
    a = square(0, 0, 0, name="a")
    b = vertical_square(1, 0, name="b")
    rev = Polyline3(a.points[::-1], "a")
    assert linking_number(rev, b) == -linking_number(a, b)


def test_unlinked_curves():
    a = square(0, 0, 0, name="a")
    far = square(10, 10, 3, name="b")
    assert signed_crossings(a, far) == []
    assert linking_number(a, far) == 0
    stacked = square(0, 0, 1, name="b")  # coaxial, no crossings after tilt
    assert linking_number(a, stacked) == 0


def test_planar_square_has_no_writhe():
    assert writhe(square(0, 0, 0)) == (0, 0)


def test_figure_eight_curve_has_one_crossing():
    pts = [(0, 0, 0), (2, 2, 2), (2, 0, 0), (0, 2, 0)]
    line = Polyline3([tuple(map(Q, p)) for p in pts], "c")
    wr, count = writhe(line)
    assert count == 1 and abs(wr) == 1


def test_degenerate_projection_is_retried():
    # along the first tilt direction these two curves project onto a shared point
    a = square(0, 0, 0, name="a")
    b = vertical_square(1, 0, name="b")
    params = EmbeddingParams(tilt=(Q(0), Q(0)))
    assert abs(linking_number(a, b, params)) == 1


def test_no_retries_left():
    a = Polyline3([tuple(map(Q, p)) for p in [(0, 0, 0), (2, 0, 0), (2, 2, 0)]], "a")
    b = Polyline3([tuple(map(Q, p)) for p in [(1, 0, 1), (1, -1, 1), (3, -1, 1)]], "b")
    params = EmbeddingParams(tilt=(Q(0), Q(0)), retries=0)
    with pytest.raises(NonGenericProjection):
        signed_crossings(a, b, params)


# -- parameters --------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        {"face_offset": Q(1, 2)},
        {"half_width": Q(1, 5)},
        {"lens_width": Q(0)},
        {"advance": Q(1, 2)},
    ],
)
def test_param_validation(kwargs):
    with pytest.raises(ValueError):
        EmbeddingParams(**kwargs).validate()


def test_scaled():
    p = EmbeddingParams().scaled(advance=2, stack_gap="3/2")
    assert p.advance == Q(1, 10)
    assert p.stack_gap == Q(3, 2)


# -- the ribbon ----------------------------------------------------------------


def test_rectangle_is_flat():
    asm = parse_assemblage("sla E1 E1 E1 N1 W1 W1 W1 S1")
    rep = link_report(asm)
    assert rep.l == 0 and rep.writhe == 0 and rep.self_crossings == 0


def test_boundaries_follow_the_centerline():
    asm = parse_assemblage("sla E3 E2 W1 E1 N W S2 W")
    emb = embed(asm)
    n = len(emb.centerline)
    assert len(emb.boundary_pos) == len(emb.boundary_neg) == n
    hw = EmbeddingParams().half_width
    for c, p, q in zip(emb.centerline.points, emb.boundary_pos.points, emb.boundary_neg.points):
        for k in range(3):
            assert p[k] + q[k] == 2 * c[k]
        assert max(abs(p[k] - c[k]) for k in range(3)) <= hw


def test_embedding_reuses_given_path():
    asm = parse_assemblage("sla E2 E N W S1 W1 N S2")
    path = build_ribbon(asm)
    assert embed(asm, path=path).centerline.points == embed(asm).centerline.points


def test_all_168_embed_with_even_boundary_crossings():
    for asm in ALL8:
        emb = embed(asm)
        cs = signed_crossings(emb.boundary_pos, emb.boundary_neg)
        assert len(cs) % 2 == 0, str(asm)


def test_method_agreement_on_all_delta_zero():
    assert len(ZERO8) == 59
    for asm in ZERO8:
        rep = link_report(asm)
        assert rep.l_t == 0
        assert rep.method_agreement, str(asm)


REFERENCE = {str(a): link_report(a).l for a in ZERO8}


@pytest.mark.parametrize("name", ["stack_gap", "face_offset", "half_width", "lens_width", "advance"])
@pytest.mark.parametrize("factor", ["1/2", "3/2"])
def test_l_stable_under_scaling(name, factor):
    params = EmbeddingParams().scaled(**{name: factor})
    params.validate()
    for asm in ZERO8:
        assert link_report(asm, params).l == REFERENCE[str(asm)], str(asm)


@pytest.mark.parametrize("tilt", TILTS[1:], ids=str)
def test_l_stable_under_tilt(tilt):
    params = EmbeddingParams(tilt=tilt)
    for asm in ZERO8:
        assert link_report(asm, params).l == REFERENCE[str(asm)], str(asm)


def test_turn_over_negates_l():
    for asm in ZERO8:
        over = asm.turned_over()
        assert link_report(over).l == -REFERENCE[str(asm)], str(asm)


def test_dump_debug_format():
    asm = parse_assemblage("sla E1 E1 E1 N1 W1 W1 W1 S1")
    emb = embed(asm)
    lines = dump_debug(emb).splitlines()
    headers = [ln for ln in lines if ln.startswith("#")]
    assert [h.split()[1] for h in headers] == ["curve"] * 3 + ["crossings"] * 2
    # folds swap the two boundaries over each other; the signs cancel
    k = lines.index(headers[-1])
    assert sum(int(ln.split()[-1]) for ln in lines[k + 1 :]) == 0
    first = int(headers[0].split()[3])
    assert first == len(emb.centerline)
    assert all(len(ln.split()) == 3 for ln in lines[1 : first + 1])
