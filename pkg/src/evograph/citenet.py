"""Citation networks as evolving graphs.

Input rows are ``citing<TAB>cited<TAB>year``.  Edges are stored in that
citing-to-cited direction, but influence travels the other way: the cited
author reaches everyone who (transitively, never moving back in time) cites
them.  Influence queries therefore traverse the edge-transposed graph, and
backward queries additionally reverse the time axis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .core import EvolvingGraph, TemporalNode, build_graph
from .errors import EmptyGraphError, InactiveRootError, ParseError
from .traversal import bfs, reverse_time

log = logging.getLogger(__name__)

# orientation markers recorded on reports
FORWARD = "influence (edges traversed cited-to-citing, time forward)"
BACKWARD = "influencers (edges traversed citing-to-cited, time backward)"


@dataclass(frozen=True)
class CitationRecord:
    """One citation: ``citing`` cites ``cited`` in ``year``."""

    citing: str
    cited: str
    year: int


@dataclass
class IngestionSummary:
    """What a citation file contained and what was kept."""

    lines: int = 0
    comments: int = 0
    records: int = 0
    self_citations: int = 0
    duplicates: int = 0
    edges_kept: int = 0
    authors: int = 0
    years: int = 0

    def describe(self) -> str:
        return (
            f"{self.edges_kept} edges kept from {self.records} records "
            f"({self.self_citations} self-citations and "
            f"{self.duplicates} duplicates dropped); "
            f"{self.authors} authors over {self.years} years"
        )


@dataclass
class InfluenceReport:
    """Result of an influence query.

    ``entries`` maps (author, year) to hop distance for every reached
    temporal node other than the root author's own; years are in the queried
    graph's labels even for backward queries.  ``orientation`` records how
    edges and time were traversed.  ``community`` is only filled by
    :func:`community`.
    """

    root_author: str
    root_year: int
    orientation: str
    entries: dict = field(default_factory=dict)
    community: frozenset | None = None

    def author_set(self) -> frozenset:
        return frozenset(a for a, _ in self.entries)

    def earliest_years(self) -> dict:
        """author -> (earliest year reached, distance at that year)."""
        out: dict = {}
        for (a, y), d in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[1])):
            if a not in out:
                out[a] = (y, d)
        return out


def _normalize(name: str, policy: str) -> str:
    if policy == "exact":
        return name
    if policy == "casefold":
        return name.casefold()
    raise ValueError(f"unknown name mapping policy {policy!r}")


def parse_citations(path, name_policy: str = "exact") -> tuple[list[CitationRecord], IngestionSummary]:
    """Read a citation TSV; ``#`` lines and blank lines are skipped.

    Malformed rows (wrong field count, empty names, non-integer year) raise
    ParseError with the offending line number.
    """
    records = []
    summary = IngestionSummary()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            summary.lines += 1
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.lstrip().startswith("#"):
                summary.comments += 1
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ParseError(
                    f"expected 3 tab-separated fields, got {len(parts)}", line_no
                )
            citing = _normalize(parts[0].strip(), name_policy)
            cited = _normalize(parts[1].strip(), name_policy)
            if not citing or not cited:
                raise ParseError("empty author name", line_no)
            try:
                year = int(parts[2].strip())
            except ValueError:
                raise ParseError(f"year is not an integer: {parts[2]!r}", line_no) from None
            records.append(CitationRecord(citing, cited, year))
            summary.records += 1
    return records, summary


def load_citations(path, name_policy: str = "exact") -> tuple[EvolvingGraph, IngestionSummary]:
    """Build the citing-to-cited evolving graph from a citation file.

    Returns the graph together with an ingestion summary (also logged).
    Self-citations are dropped but counted; duplicate rows collapse to one
    edge.
    """
    records, summary = parse_citations(path, name_policy)
    if not records:
        raise EmptyGraphError(f"{path} contains no citation records")
    seen = set()
    triples = []
    for r in records:
        if r.citing == r.cited:
            summary.self_citations += 1
            continue
        trip = (r.citing, r.cited, r.year)
        if trip in seen:
            summary.duplicates += 1
        else:
            seen.add(trip)
        triples.append(trip)
    g = build_graph(triples, directed=True)
    summary.edges_kept = g.num_static_edges
    summary.authors = g.num_nodes
    summary.years = g.num_times
    log.info("loaded %s: %s", path, summary.describe())
    return g, summary


def _require_active(g: EvolvingGraph, author, year):
    if not g.is_active(author, year):
        raise InactiveRootError(
            f"author {author!r} has no citation activity in year {year}"
        )


def influence_set(g: EvolvingGraph, author, year: int) -> InfluenceReport:
    """Authors reached by ``author``'s influence from ``year`` onward.

    Runs the traversal on the edge-transposed graph (influence flows from
    cited to citing) and drops the root author's own temporal nodes.
    """
    _require_active(g, author, year)
    rm = bfs(g.transposed(), TemporalNode(author, year))
    entries = {
        (tn.node, tn.time): d for tn, d in rm.entries.items() if tn.node != author
    }
    return InfluenceReport(author, year, FORWARD, entries)


def influencers_set(g: EvolvingGraph, author, year: int) -> InfluenceReport:
    """Authors whose work ``author`` builds on, looking backward from ``year``.

    Computed as an influence query on the time-reversed graph; reported years
    are mapped back to the original labels.
    """
    _require_active(g, author, year)
    rev = reverse_time(g)
    rep = influence_set(rev, author, -year)
    entries = {(a, -y): d for (a, y), d in rep.entries.items()}
    return InfluenceReport(author, year, BACKWARD, entries)


def community(g: EvolvingGraph, author, year: int) -> frozenset:
    """Authors downstream of the roots of ``author``'s influences.

    Walk backward to everyone who influenced ``author``, take the leaves of
    that traversal tree (the points where the walk stopped discovering
    anything new), and pool the forward influence of each leaf.  An author
    with no influencers is their own leaf, so the result degenerates to their
    own influence set.
    """
    _require_active(g, author, year)
    rev_influence = reverse_time(g).transposed()
    rm = bfs(rev_influence, TemporalNode(author, -year))
    members: set = set()
    for leaf in rm.leaves:
        rep = influence_set(g, leaf.node, -leaf.time)
        members |= rep.author_set()
    return frozenset(members)


def community_report(g: EvolvingGraph, author, year: int) -> InfluenceReport:
    """Backward report for ``author`` with the community attached."""
    rep = influencers_set(g, author, year)
    rep.community = community(g, author, year)
    return rep
