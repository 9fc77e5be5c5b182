"""Bundled catalog of diagrams (dimensions 4 to 10) and batch verification.

Each ``data/catalog/dim<n><letter>.cox`` file holds one diagram; node tags
are Gale positions (``"p"`` for a weight-1 position, ``"p,c"`` for copy ``c``
of a heavier one), so the Gale diagram can be rebuilt from the tags alone.
"""
from __future__ import annotations

import re
import time
from collections import Counter
from dataclasses import dataclass, field
from importlib.resources import files

from .diagram import CoxeterDiagram, Dotted, Unknown, parse_diagram
from .errors import CoxforgeError, CorruptCatalog
from .gale import FacetAtlas, GaleDiagram
from .search import VerificationReport, verify

__all__ = ["CatalogEntry", "CatalogSummary", "load_catalog", "verify_catalog", "entry_by_id"]

_NAME = re.compile(r"dim(\d+)([a-z]+)\.cox$")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dimension: int
    diagram: CoxeterDiagram
    source_note: str = ""

    def gale(self) -> GaleDiagram:
        """The Gale diagram recorded by the node tags."""
        pos = Counter(int(t.split(",")[0]) for t in self.diagram.tags)
        k = len(pos) - 1  # one doubly occupied diameter, every other one single
        return GaleDiagram(k, tuple(pos.get(i, 0) for i in range(2 * k)))

    def in_facet_order(self) -> CoxeterDiagram:
        """The diagram renumbered so node i is facet i of ``FacetAtlas.of(self.gale())``."""
        g = self.gale()
        tags = FacetAtlas.of(g).tags(g)
        where = {self.diagram.node_by_tag(t): a for a, t in enumerate(tags)}
        edges = {(where[i], where[j]): lab for (i, j), lab in self.diagram.edges.items()}
        return CoxeterDiagram(self.diagram.node_count, edges, tags, self.dimension)

    def skeleton(self) -> CoxeterDiagram:
        """Facet-ordered diagram with every dotted weight replaced by an unknown."""
        d = self.in_facet_order()
        upd = {}
        for pair, lab in sorted(d.edges.items()):
            if isinstance(lab, Dotted):
                upd[pair] = Unknown(f"w{len(upd) + 1}")
        return d.with_edges(upd)


def _sort_key(entry_id: str):
    m = re.fullmatch(r"(\d+)([a-z]+)", entry_id)
    return int(m.group(1)), len(m.group(2)), m.group(2)


def load_catalog() -> list[CatalogEntry]:
    """Every bundled entry, ordered by dimension and then letter."""
    out = []
    for res in (files("coxforge") / "data" / "catalog").iterdir():
        m = _NAME.match(res.name)
        if not m:
            continue
        entry_id = m.group(1) + m.group(2)
        text = res.read_text()
        try:
            d = parse_diagram(text)
        except CoxforgeError as exc:
            raise CorruptCatalog(f"entry {entry_id}: {exc}") from exc
        dim = int(m.group(1))
        if d.dim != dim or d.node_count != dim + 3:
            raise CorruptCatalog(f"entry {entry_id}: header does not match dimension {dim}")
        note = " ".join(line.lstrip("# ").strip() for line in text.splitlines() if line.startswith("#"))
        out.append(CatalogEntry(entry_id, dim, d, note))
    out.sort(key=lambda e: _sort_key(e.id))
    return out


def entry_by_id(entry_id: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


@dataclass
class CatalogSummary:
    reports: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def failures(self) -> list[str]:
        return [k for k, r in self.reports.items() if not r.accepted]

    @property
    def total(self) -> int:
        return len(self.reports)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "accepted": self.total - len(self.failures),
            "failures": {k: self.reports[k].reason for k in self.failures},
            "entries": {k: {"verdict": r.verdict, "inertia": list(r.inertia) if r.inertia else None,
                            "rank": r.rank} for k, r in self.reports.items()},
            "seconds": round(self.seconds, 3),
        }


def verify_catalog(entries: list[CatalogEntry] | None = None) -> CatalogSummary:
    """Run :func:`verify` on every entry; the summary lists failures."""
    if entries is None:
        entries = load_catalog()
    start = time.perf_counter()
    summary = CatalogSummary()
    for e in entries:
        rep: VerificationReport = verify(e.diagram, e.dimension)
        summary.reports[e.id] = rep
    summary.seconds = time.perf_counter() - start
    return summary
