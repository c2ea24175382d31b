"""Planar face-up configurations of the Rubik's Magic puzzle.

Enumeration of canonical direction sequences, their stackings, and the
metric and linking-number invariants that rule configurations out.
"""

from rubiksmagic.sequence import (
    Sequence,
    SequenceError,
    TileNode,
    Transform,
    apply_transform,
    area,
    canonical_representative,
    enumerate_canonical,
    parse_sequence,
    symmetry_group,
    tile_nodes,
)
from rubiksmagic.assemblage import (
    Assemblage,
    enumerate_assemblages,
    format_assemblage,
    is_admissible_assemblage,
    metric_invariant,
    parse_assemblage,
)
from rubiksmagic.ribbon import RibbonPath, build_ribbon, twist
from rubiksmagic.linking import EmbeddingParams, LinkReport, embed, link_report
from rubiksmagic.classify import Verdict, classify, table

__all__ = [
    "Assemblage",
    "EmbeddingParams",
    "LinkReport",
    "RibbonPath",
    "Verdict",
    "build_ribbon",
    "classify",
    "embed",
    "link_report",
    "table",
    "twist",
    "Sequence",
    "SequenceError",
    "TileNode",
    "Transform",
    "apply_transform",
    "area",
    "canonical_representative",
    "enumerate_assemblages",
    "enumerate_canonical",
    "format_assemblage",
    "is_admissible_assemblage",
    "metric_invariant",
    "parse_assemblage",
    "parse_sequence",
    "symmetry_group",
    "tile_nodes",
]
