"""Seeded random evolving graphs.

Edges are (src, dst, time) triples drawn uniformly without replacement from
the full triple space, using a fixed 64-bit generator (PCG64) so that a seed
pins down the graph on every platform.  ``grow`` adds fresh edges to an
existing graph while keeping its node universe and time stamps, which gives
the benchmark family where only the edge count moves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EvolvingGraph, build_graph
from .errors import InfeasibleError


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random graph."""

    n_nodes: int
    n_times: int
    n_static_edges: int
    seed: int = 0
    directed: bool = True

    def capacity(self) -> int:
        """Number of distinct (src, dst, time) triples without self-loops."""
        pairs = self.n_nodes * (self.n_nodes - 1)
        if not self.directed:
            pairs //= 2
        return pairs * self.n_times

    def validate(self):
        if self.n_nodes < 0 or self.n_times < 0 or self.n_static_edges < 0:
            raise InfeasibleError("sizes must be nonnegative")
        if self.n_static_edges > self.capacity():
            raise InfeasibleError(
                f"{self.n_static_edges} edges requested but only "
                f"{self.capacity()} distinct triples exist"
            )
        if self.n_static_edges == 0:
            raise InfeasibleError("at least one edge is needed to build a graph")


def random_graph(spec: GenSpec) -> EvolvingGraph:
    """Draw the graph described by ``spec``.

    Nodes are 0..n_nodes-1 and time labels 0..n_times-1 (nodes that happen to
    miss every draw do not appear in the result).  Sampling is by rejection
    against the already-drawn set; above half capacity it switches to a
    shuffle of the full triple space so saturated requests terminate.
    """
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    edges = _sample(
        rng,
        spec.n_nodes,
        spec.n_times,
        spec.n_static_edges,
        spec.directed,
        forbidden=frozenset(),
    )
    return build_graph(edges, directed=spec.directed)


def grow(g: EvolvingGraph, extra_edges: int, seed: int = 0) -> EvolvingGraph:
    """A new graph with all of g's edges plus ``extra_edges`` fresh ones.

    Fresh edges are drawn over g's observed node set and time stamps, so the
    grown family shares one universe.  ``grow(g, 0)`` returns an equal graph.
    Raises InfeasibleError when the remaining capacity is too small.
    """
    if extra_edges < 0:
        raise InfeasibleError("extra_edges must be nonnegative")
    old = [(e.src, e.dst, e.time) for e in g.edges()]
    if extra_edges == 0:
        return build_graph(old, directed=g.directed)

    nodes = g.nodes
    labels = g.time_labels
    n = len(nodes)
    pairs = n * (n - 1) if g.directed else n * (n - 1) // 2
    capacity = pairs * len(labels) - len(old)
    if extra_edges > capacity:
        raise InfeasibleError(
            f"{extra_edges} extra edges requested but only {capacity} slots remain"
        )

    # sample in id space, then map back to the graph's keys and labels
    id_of = {k: i for i, k in enumerate(nodes)}
    tidx_of = {lab: i for i, lab in enumerate(labels)}
    forbidden = frozenset(
        (id_of[u], id_of[v], tidx_of[t]) for u, v, t in old
    )
    rng = np.random.Generator(np.random.PCG64(seed))
    fresh = _sample(rng, n, len(labels), extra_edges, g.directed, forbidden)
    new = old + [(nodes[u], nodes[v], labels[t]) for u, v, t in fresh]
    return build_graph(new, directed=g.directed)


def _sample(rng, n_nodes, n_times, count, directed, forbidden):
    """``count`` distinct triples (u, v, t) avoiding ``forbidden``."""
    pairs = n_nodes * (n_nodes - 1) if directed else n_nodes * (n_nodes - 1) // 2
    capacity = pairs * n_times - len(forbidden)
    if count * 2 >= capacity:
        return _sample_dense(rng, n_nodes, n_times, count, directed, forbidden)

    chosen = set()
    out = []
    need = count
    while need > 0:
        batch = max(64, int(need * 1.5))
        us = rng.integers(0, n_nodes, size=batch)
        vs = rng.integers(0, n_nodes, size=batch)
        ts = rng.integers(0, n_times, size=batch)
        for u, v, t in zip(us.tolist(), vs.tolist(), ts.tolist()):
            if u == v:
                continue
            if not directed and v < u:
                u, v = v, u
            trip = (u, v, t)
            if trip in chosen or trip in forbidden:
                continue
            chosen.add(trip)
            out.append(trip)
            need -= 1
            if need == 0:
                break
    return out


def _sample_dense(rng, n_nodes, n_times, count, directed, forbidden):
    """Shuffle the whole triple space; used near saturation."""
    triples = [
        (u, v, t)
        for t in range(n_times)
        for u in range(n_nodes)
        for v in range(n_nodes)
        if u != v and (directed or u < v)
    ]
    triples = [trip for trip in triples if trip not in forbidden]
    perm = rng.permutation(len(triples))
    return [triples[i] for i in perm[:count]]
