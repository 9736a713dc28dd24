"""Greedy SWAP insertion onto a connectivity graph."""

from __future__ import annotations

from ..exceptions import InvalidArgument, RoutingError
from .ir import Gate


def _shortest_path(graph, src, dst):
    prev = {src: None}
    frontier = [src]
    while frontier and dst not in prev:
        nxt = []
        for u in frontier:
            for w in graph.adjacency[u]:
                if w not in prev:
                    prev[w] = u
                    nxt.append(w)
        frontier = nxt
    if dst not in prev:
        return None
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def route(circuit, graph, initial_map=None, return_mapping=False):
    """Map logical qubits onto ``graph`` so every two-qubit gate is on a coupler.

    The first operand of a non-adjacent gate is walked along a shortest
    path with SWAPs until it neighbours the second.  Output gates act on
    physical qubits; the result has ``graph.n_qubits`` qubits.
    """
    if circuit.n_qubits > graph.n_qubits:
        raise InvalidArgument(
            f"circuit needs {circuit.n_qubits} qubits, device has {graph.n_qubits}"
        )
    if initial_map is None:
        l2p = list(range(graph.n_qubits))
    else:
        l2p = list(initial_map)
        if sorted(l2p[: circuit.n_qubits]) != sorted(set(l2p[: circuit.n_qubits])):
            raise InvalidArgument("initial_map is not injective")
        # extend to a full permutation so ancilla positions are tracked too
        used = set(l2p)
        l2p += [p for p in range(graph.n_qubits) if p not in used]
    p2l = {p: l for l, p in enumerate(l2p)}

    out = []
    for g in circuit.gates:
        if not g.is_two_qubit:
            out.append(g.remap(l2p))
            continue
        a, b = g.qubits
        pa, pb = l2p[a], l2p[b]
        if not graph.has_edge(pa, pb):
            path = _shortest_path(graph, pa, pb)
            if path is None:
                raise RoutingError(f"qubits {pa} and {pb} are in different components")
            for step in path[1:-1]:
                cur = l2p[a]
                out.append(Gate("SWAP", (cur, step)))
                other = p2l[step]
                l2p[a], l2p[other] = step, cur
                p2l[step], p2l[cur] = a, other
        out.append(g.remap(l2p))
    routed = circuit.with_gates(out, n_qubits=graph.n_qubits)
    if return_mapping:
        return routed, tuple(l2p)
    return routed
