"""Distance-d crosstalk graphs and Welsh-Powell colouring."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .exceptions import InvalidArgument


@dataclass(frozen=True)
class CrosstalkGraph:
    """One vertex per coupler; edges join couplers that can interfere.

    Vertex ``i`` is the coupler ``couplers[i]``.  ``nodes`` lists the vertex
    ids present in this graph, so an induced subgraph keeps the ids of its
    parent graph.
    """

    couplers: tuple
    adj: dict
    distance_d: int
    nodes: tuple = field(default=None)

    def __post_init__(self):
        if self.nodes is None:
            object.__setattr__(self, "nodes", tuple(range(len(self.couplers))))
        index = {c: i for i, c in enumerate(self.couplers)}
        object.__setattr__(self, "_index", index)

    @property
    def edges(self):
        return frozenset((u, w) for u in self.nodes for w in self.adj[u] if u < w)

    def vertex_of(self, coupler):
        key = (min(coupler), max(coupler))
        try:
            return self._index[key]
        except KeyError:
            raise InvalidArgument(f"coupler {key} is not a vertex of the crosstalk graph") from None

    def neighbors(self, v):
        return self.adj[v]

    def adjacency_dict(self):
        return {v: self.adj[v] for v in self.nodes}

    def to_edge_list(self):
        return "".join(f"{u} {w}\n" for u, w in sorted(self.edges))


@dataclass(frozen=True)
class Coloring:
    color_of: dict
    n_colors: int
    multiplicity: dict

    @classmethod
    def from_mapping(cls, color_of):
        counts = Counter(color_of.values())
        n = (max(counts) + 1) if counts else 0
        return cls(dict(color_of), n, {c: counts.get(c, 0) for c in range(n)})


def gen_crosstalk_graph(graph, d=1):
    """Couplers ``e1 != e2`` are adjacent iff some endpoint of ``e1`` lies
    within ``d`` hops of some endpoint of ``e2``."""
    if d < 1:
        raise InvalidArgument(f"crosstalk distance must be >= 1, got {d}")
    couplers = graph.edges
    # qubit -> couplers touching any qubit within d hops
    near = []
    by_qubit = [[] for _ in range(graph.n_qubits)]
    for i, (u, v) in enumerate(couplers):
        by_qubit[u].append(i)
        by_qubit[v].append(i)
    for q in range(graph.n_qubits):
        reach = set()
        for w, dist in graph.distances_from(q).items():
            if dist <= d:
                reach.update(by_qubit[w])
        near.append(reach)
    adj = {}
    for i, (u, v) in enumerate(couplers):
        nbrs = near[u] | near[v]
        nbrs.discard(i)
        adj[i] = frozenset(nbrs)
    return CrosstalkGraph(tuple(couplers), adj, d)


def active_subgraph(xg, active):
    """Induced subgraph of ``xg`` on the given couplers (vertex ids preserved)."""
    verts = sorted({xg.vertex_of(c) for c in active})
    keep = frozenset(verts)
    adj = dict(xg.adj)
    for v in verts:
        adj[v] = xg.adj[v] & keep
    return CrosstalkGraph(xg.couplers, adj, xg.distance_d, tuple(verts))


def _adjacency(g):
    if isinstance(g, dict):
        return g
    return g.adjacency_dict()


def greedy_color(g):
    """Welsh-Powell: highest degree first (ties by vertex id), smallest free colour."""
    adj = _adjacency(g)
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    color_of = {}
    for v in order:
        taken = {color_of[w] for w in adj[v] if w in color_of}
        c = 0
        while c in taken:
            c += 1
        color_of[v] = c
    return Coloring.from_mapping(color_of)


def validate_coloring(g, coloring):
    adj = _adjacency(g)
    color_of = coloring.color_of if isinstance(coloring, Coloring) else coloring
    for v in adj:
        if v not in color_of:
            raise InvalidArgument(f"vertex {v} has no colour")
    return all(color_of[v] != color_of[w] for v in adj for w in adj[v])


def mesh_pattern_coloring(rows, cols):
    """Fixed periodic 8-colouring of the ``rows x cols`` mesh couplers.

    Horizontal coupler at (r, c) gets ``(c + 2r) mod 4``; vertical coupler at
    (r, c) gets ``4 + (r + 2c) mod 4``.  Vertex ids follow the edge order of
    :func:`xtalk.device.build_mesh`.
    """
    from .device import build_mesh

    g = build_mesh(rows, cols)
    color_of = {}
    for i, (u, v) in enumerate(g.edges):
        r, c = divmod(u, cols)
        if v == u + 1:
            color_of[i] = (c + 2 * r) % 4
        else:
            color_of[i] = 4 + (r + 2 * c) % 4
    # keep ids dense even on meshes too small to use all eight colours
    used = sorted(set(color_of.values()))
    relabel = {c: i for i, c in enumerate(used)}
    return Coloring.from_mapping({v: relabel[c] for v, c in color_of.items()})
