"""Per-sequence classification and the summary table.

Every admissible assemblage gets one of four verdicts.  A nonzero metric
invariant or linking number rules an assemblage out; when both vanish it
stays a candidate, promoted to known-constructible only when it belongs to
the curated list shipped in ``data/constructible.json``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from rubiksmagic.assemblage import (
    Assemblage,
    MetricReport,
    delta_c,
    enumerate_assemblages,
    metric_invariant,
    orbit,
    parse_assemblage,
)
from rubiksmagic.linking import EmbeddingParams, LinkReport, link_report
from rubiksmagic.sequence import (
    Sequence,
    area,
    enumerate_canonical,
    flap_count,
    symmetry_group,
)

FULL_SWEEP_MAX_N = 12


class Verdict(enum.Enum):
    METRIC_NONZERO = "NonConstructible(MetricNonzero)"
    LINKING_NONZERO = "NonConstructible(LinkingNonzero)"
    CANDIDATE = "Candidate"
    KNOWN_CONSTRUCTIBLE = "KnownConstructible"


@dataclass(frozen=True)
class CuratedEntry:
    sequence: str
    assemblage: Assemblage
    source: str


@lru_cache(maxsize=1)
def load_constructible() -> tuple[CuratedEntry, ...]:
    raw = resources.files("rubiksmagic").joinpath("data/constructible.json").read_text()
    entries = []
    for item in json.loads(raw)["entries"]:
        asm = parse_assemblage(item["assemblage"])
        if str(asm.seq) != item["sequence"]:
            raise ValueError(f"curated entry {item['assemblage']!r} does not spell {item['sequence']}")
        entries.append(CuratedEntry(item["sequence"], asm, item["source"]))
    return tuple(entries)


def _curated_orbits(seq: Sequence) -> list[set]:
    group = symmetry_group(seq)
    return [orbit(e.assemblage, group) for e in load_constructible() if e.assemblage.seq == seq]


@dataclass
class AssemblageRecord:
    assemblage: Assemblage
    metric: MetricReport
    link: LinkReport | None
    verdict: Verdict

    def to_dict(self) -> dict:
        out = {
            "assemblage": str(self.assemblage),
            "delta": self.metric.delta,
            "delta_c": self.metric.delta_c,
            "delta_f": self.metric.delta_f,
            "verdict": self.verdict.value,
        }
        if self.link is not None:
            out.update(
                l_t=str(self.link.l_t),
                writhe=self.link.writhe,
                self_crossings=self.link.self_crossings,
                l=self.link.l,
                method_agreement=self.link.method_agreement,
            )
        return out


@dataclass
class SequenceRecord:
    sequence: Sequence
    flap_count: int
    area: int
    delta_c: int
    symcount: int
    assemblages: list[AssemblageRecord] = field(default_factory=list)

    @property
    def assemblage_count(self) -> int:
        return len(self.assemblages)

    @property
    def delta_zero(self) -> list[AssemblageRecord]:
        return [a for a in self.assemblages if a.metric.delta == 0]

    @property
    def link_reports(self) -> list[LinkReport]:
        return [a.link for a in self.delta_zero if a.link is not None]

    @property
    def verdicts(self) -> list[Verdict]:
        return [a.verdict for a in self.assemblages]

    def to_dict(self) -> dict:
        return {
            "sequence": str(self.sequence),
            "flap_count": self.flap_count,
            "area": self.area,
            "delta_c": self.delta_c,
            "symcount": self.symcount,
            "assemblage_count": self.assemblage_count,
            "delta_zero_count": len(self.delta_zero),
            "assemblages": [a.to_dict() for a in self.assemblages],
        }


def _verdict(metric: MetricReport, link: LinkReport | None, known: bool) -> Verdict:
    if metric.delta != 0:
        return Verdict.METRIC_NONZERO
    if link is None:
        return Verdict.CANDIDATE
    if link.l != 0:
        return Verdict.LINKING_NONZERO
    return Verdict.KNOWN_CONSTRUCTIBLE if known else Verdict.CANDIDATE


def classify(
    seq: Sequence, params: EmbeddingParams | None = None, with_links: bool = True
) -> SequenceRecord:
    """Full record for one sequence; L is computed only where Δ = 0.

    With ``with_links`` false a Δ = 0 assemblage stays a candidate.
    """
    record = SequenceRecord(
        sequence=seq,
        flap_count=flap_count(seq),
        area=area(seq),
        delta_c=delta_c(seq),
        symcount=len(symmetry_group(seq)),
    )
    curated = _curated_orbits(seq)
    for asm in enumerate_assemblages(seq):
        metric = metric_invariant(asm)
        link = None
        if metric.delta == 0 and with_links:
            link = link_report(asm, params)
        known = any(asm.levels in orb for orb in curated)
        record.assemblages.append(AssemblageRecord(asm, metric, link, _verdict(metric, link, known)))
    return record


@dataclass
class TableRow:
    flaps: int
    sequences: int = 0
    assemblages: int = 0
    delta_zero: int = 0
    linking_nonzero: int = 0
    candidates: int = 0
    known: int = 0

    def add(self, rec: SequenceRecord) -> None:
        self.sequences += 1
        self.assemblages += rec.assemblage_count
        self.delta_zero += len(rec.delta_zero)
        for v in rec.verdicts:
            if v is Verdict.LINKING_NONZERO:
                self.linking_nonzero += 1
            elif v is Verdict.CANDIDATE:
                self.candidates += 1
            elif v is Verdict.KNOWN_CONSTRUCTIBLE:
                self.known += 1


@dataclass
class ClassificationTable:
    n: int
    rows: dict[int, TableRow]
    records: list[SequenceRecord]
    with_links: bool = True

    def column(self, name: str) -> list[int]:
        return [getattr(self.rows[f], name) for f in sorted(self.rows)]

    def total(self, name: str) -> int:
        return sum(self.column(name))

    def format(self) -> str:
        cols = ["sequences", "assemblages", "delta_zero"]
        if self.with_links:
            cols += ["linking_nonzero", "candidates", "known"]
        head = ["flaps"] + cols
        lines = [" ".join(f"{h:>15}" for h in head)]
        for f in sorted(self.rows):
            row = self.rows[f]
            lines.append(" ".join([f"{f:>15}"] + [f"{getattr(row, c):>15}" for c in cols]))
        lines.append(" ".join([f"{'total':>15}"] + [f"{self.total(c):>15}" for c in cols]))
        return "\n".join(lines)


def table(
    n: int, params: EmbeddingParams | None = None, with_links: bool = True
) -> ClassificationTable:
    """Counts by number of flaps, one row per flap count that occurs.

    The linking sweep is limited to ``n <= 12``; beyond that only the metric
    columns are filled.
    """
    with_links = with_links and n <= FULL_SWEEP_MAX_N
    rows: dict[int, TableRow] = {}
    records = []
    for seq in enumerate_canonical(n):
        rec = classify(seq, params, with_links)
        rows.setdefault(rec.flap_count, TableRow(rec.flap_count)).add(rec)
        records.append(rec)
    rows = dict(sorted(rows.items()))
    return ClassificationTable(n, rows, records, with_links)


def export_records(records) -> str:
    """One JSON object per line, keys sorted, for golden-file diffs."""
    return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in records)
