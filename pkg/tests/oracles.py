"""Brute-force reference implementations used only by the tests.

Everything here works straight off raw (src, dst, time) triples and the
definitions: activeness by scanning edges, the expanded digraph built edge by
edge, distances via networkx, path counts via exhaustive walk enumeration.
None of it shares code with the package, which is the point.
"""

from __future__ import annotations

from collections import defaultdict

import networkx as nx
import numpy as np


def active_pairs(triples, directed=True):
    """Set of (node, time) incident to an edge with a distinct endpoint."""
    act = set()
    for u, v, t in triples:
        if u != v:
            act.add((u, t))
            act.add((v, t))
    return act


def expansion_adjacency(triples, directed=True):
    """dict (node, time) -> sorted list of successors, per the definitions."""
    act = active_pairs(triples, directed)
    succ = {x: set() for x in act}
    for u, v, t in triples:
        if u == v:
            continue
        succ[(u, t)].add((v, t))
        if not directed:
            succ[(v, t)].add((u, t))
    times_of = defaultdict(list)
    for v, t in act:
        times_of[v].append(t)
    for v, ts in times_of.items():
        ts.sort()
        for i, s in enumerate(ts):
            for t in ts[i + 1:]:
                succ[(v, s)].add((v, t))
    return {x: sorted(s, key=lambda p: (p[1], p[0])) for x, s in succ.items()}


def forward_neighbors(triples, directed, node, time):
    adj = expansion_adjacency(triples, directed)
    return set(adj.get((node, time), ()))


def distances(triples, directed, node, time):
    """Hop distances from (node, time); empty dict for inactive roots."""
    adj = expansion_adjacency(triples, directed)
    if (node, time) not in adj:
        return {}
    g = nx.DiGraph()
    g.add_nodes_from(adj)
    for x, ys in adj.items():
        for y in ys:
            g.add_edge(x, y)
    return dict(nx.single_source_shortest_path_length(g, (node, time)))


def walk_counts(triples, directed, node, time, max_hops):
    """(dst, hops) -> number of temporal paths from (node, time).

    Exhaustive depth-first enumeration; every walk in the expanded digraph is
    one temporal path.
    """
    adj = expansion_adjacency(triples, directed)
    counts = defaultdict(int)
    if (node, time) not in adj:
        return counts

    def rec(x, h):
        counts[(x, h)] += 1
        if h == max_hops:
            return
        for y in adj[x]:
            rec(y, h + 1)

    rec((node, time), 0)
    return counts


def is_temporal_path(triples, directed, seq):
    """Validate a sequence of (node, time) pairs against the definitions."""
    act = active_pairs(triples, directed)
    if any(x not in act for x in seq):
        return False
    edge_set = set()
    for u, v, t in triples:
        if u == v:
            continue
        edge_set.add((u, v, t))
        if not directed:
            edge_set.add((v, u, t))
    for (a, s), (b, t) in zip(seq, seq[1:]):
        if a == b and t > s:
            continue
        if s == t and a != b and (a, b, s) in edge_set:
            continue
        return False
    return True


def nilpotency_index(triples, directed):
    """Dense powers of the active-restricted adjacency until they vanish."""
    adj = expansion_adjacency(triples, directed)
    order = sorted(adj, key=lambda p: (p[1], p[0]))
    if not order:
        return 1
    idx = {x: i for i, x in enumerate(order)}
    n = len(order)
    mat = np.zeros((n, n), dtype=object)  # exact ints, no overflow
    for x, ys in adj.items():
        for y in ys:
            mat[idx[x], idx[y]] = 1
    power = mat
    for k in range(1, n + 2):
        if not power.any():
            return k
        power = power @ mat
    return None


def bfs_with_leaves(adj, root):
    """Level BFS with (time, node)-sorted expansion; returns (dist, leaves).

    A leaf is a node that discovered nothing new on its turn.
    """
    dist = {root: 0}
    leaves = set()
    frontier = [root]
    k = 0
    while frontier:
        k += 1
        nxt = []
        for x in frontier:
            new = False
            for y in adj[x]:
                if y not in dist:
                    dist[y] = k
                    nxt.append(y)
                    new = True
            if not new:
                leaves.add(x)
        nxt.sort(key=lambda p: (p[1], p[0]))
        frontier = nxt
    return dist, leaves


# -- citation semantics ------------------------------------------------------


def influence_authors(triples, author, year):
    """(author, year) -> distance for everyone the root's work reaches.

    Influence runs against the citation arrows, so the search uses the
    transposed triples.  The root author's own temporal nodes are dropped.
    """
    rev = [(v, u, t) for u, v, t in triples]
    dist = distances(rev, True, author, year)
    return {(a, y): d for (a, y), d in dist.items() if a != author}


def influencer_authors(triples, author, year):
    """(author, year) -> distance for everyone whose work reaches the root.

    Brute force: try every active temporal pair as a source.
    """
    rev = [(v, u, t) for u, v, t in triples]
    out = {}
    for a, y in active_pairs(rev, True):
        if a == author:
            continue
        d = distances(rev, True, a, y).get((author, year))
        if d is not None:
            out[(a, y)] = d
    return out


def community_authors(triples, author, year):
    """Union of influence over the leaves of the backward traversal tree."""
    back = [(u, v, -t) for u, v, t in triples]  # own citations, time reversed
    adj = expansion_adjacency(back, True)
    _, leaves = bfs_with_leaves(adj, (author, -year))
    members = set()
    for a, y in leaves:
        members |= {b for b, _ in influence_authors(triples, a, -y)}
    return members
