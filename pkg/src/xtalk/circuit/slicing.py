"""Dependency analysis, ASAP layering and criticality."""

from __future__ import annotations

from .ir import Layer


def dependencies(circuit):
    """Immediate predecessors of every gate, by index.

    Gates sharing a qubit keep program order.  A barrier makes every later
    gate depend on everything issued before it; barrier entries themselves
    get an empty predecessor set and are otherwise ignored.
    """
    last_on = {}
    fence = frozenset()
    preds = []
    for i, g in enumerate(circuit.gates):
        if g.is_barrier:
            fence = frozenset(last_on.values()) | fence
            last_on = {}
            preds.append(frozenset())
            continue
        p = set()
        for q in g.qubits:
            if q in last_on:
                p.add(last_on[q])
            else:
                p |= fence
        preds.append(frozenset(p))
        for q in g.qubits:
            last_on[q] = i
    return preds


def slice_layers(circuit):
    """ASAP layers plus criticality = longest chain (in gates) to the end."""
    preds = dependencies(circuit)
    n = len(circuit.gates)
    level = [0] * n
    for i, g in enumerate(circuit.gates):
        if g.is_barrier:
            continue
        level[i] = 1 + max((level[j] for j in preds[i]), default=-1)

    succs = [[] for _ in range(n)]
    for i, ps in enumerate(preds):
        for j in ps:
            succs[j].append(i)
    crit = {}
    for i in range(n - 1, -1, -1):
        if circuit.gates[i].is_barrier:
            continue
        crit[i] = 1 + max((crit[j] for j in succs[i]), default=0)

    buckets = {}
    for i, g in enumerate(circuit.gates):
        if not g.is_barrier:
            buckets.setdefault(level[i], []).append(i)
    layers = [
        Layer(k, tuple(circuit.gates[i] for i in buckets[k]), tuple(buckets[k]))
        for k in sorted(buckets)
    ]
    return layers, crit
