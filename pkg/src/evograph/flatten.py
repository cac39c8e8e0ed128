"""Static expansion of an evolving graph.

The expansion is an ordinary digraph over the active temporal nodes: every
slice edge becomes a same-time edge, and every ordered pair of active times of
one node becomes a time-jump edge.  A classical BFS on this digraph reproduces
temporal-path traversal exactly, which makes it the reference oracle for the
frontier engine.

Time-jump edges number sum-over-nodes C(a_v, 2) for a node active a_v times,
so the expansion is quadratic in per-node activity.  Build it for verification
and export, not for large-scale traversal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .core import EvolvingGraph, TemporalNode, TemporalNodeLike, _as_pair
from .errors import InactiveRootError
from .traversal import ReachedMap


@dataclass(frozen=True, eq=False)
class StaticExpansion:
    """Explicit static digraph equivalent to an evolving graph.

    ``nodes`` are the active temporal nodes in (time, node) order;
    ``index_of`` maps each to its position.  ``static_edges`` hold the
    same-time steps (both directions for undirected inputs), ``causal_edges``
    the time jumps.  ``successors`` is the combined sorted adjacency.
    """

    nodes: tuple[TemporalNode, ...]
    index_of: dict
    static_edges: frozenset
    causal_edges: frozenset
    successors: dict

    @property
    def num_nodes(self):
        return len(self.nodes)

    @property
    def num_edges(self):
        return len(self.static_edges) + len(self.causal_edges)


def expand(g: EvolvingGraph) -> StaticExpansion:
    """Materialize the static expansion of ``g``."""
    nodes = tuple(g.active_nodes())
    index_of = {tn: i for i, tn in enumerate(nodes)}

    static = set()
    for e in g.edges():
        a = TemporalNode(e.src, e.time)
        b = TemporalNode(e.dst, e.time)
        static.add((a, b))
        if not g.directed:
            static.add((b, a))

    causal = set()
    for v in g.nodes:
        labs = g.active_time_labels(v)
        for s, t in combinations(labs, 2):
            causal.add((TemporalNode(v, s), TemporalNode(v, t)))

    succ: dict = {tn: [] for tn in nodes}
    for a, b in static:
        succ[a].append(b)
    for a, b in causal:
        succ[a].append(b)
    successors = {tn: tuple(sorted(lst)) for tn, lst in succ.items()}

    return StaticExpansion(
        nodes=nodes,
        index_of=index_of,
        static_edges=frozenset(static),
        causal_edges=frozenset(causal),
        successors=successors,
    )


def static_bfs(x: StaticExpansion, root: TemporalNodeLike) -> ReachedMap:
    """Classical queue BFS on the expansion digraph.

    Raises InactiveRootError when the root is not a node of the expansion.
    """
    node, lab = _as_pair(root)
    root_tn = TemporalNode(node, lab)
    if root_tn not in x.index_of:
        raise InactiveRootError(f"{root_tn} is not an active temporal node")
    dist = {root_tn: 0}
    q = deque([root_tn])
    succ = x.successors
    while q:
        a = q.popleft()
        d = dist[a] + 1
        for b in succ[a]:
            if b not in dist:
                dist[b] = d
                q.append(b)
    entries = {
        tn: d for tn, d in sorted(dist.items(), key=lambda kv: (kv[1], kv[0]))
    }
    iterations = max(entries.values()) + 1
    return ReachedMap(root_tn, entries, iterations=iterations)


def write_edge_list(x: StaticExpansion, fileobj) -> int:
    """Write the expansion as tab-separated lines ``u@t  v@t  KIND``.

    Same-time edges come first, then time jumps, each block sorted.  Returns
    the number of lines written.
    """
    n = 0
    for kind, edges in (("STATIC", x.static_edges), ("CAUSAL", x.causal_edges)):
        for a, b in sorted(edges):
            fileobj.write(
                f"{a.node}@{a.time}\t{b.node}@{b.time}\t{kind}\n"
            )
            n += 1
    return n
