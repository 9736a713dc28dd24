"""Benchmark circuit generators: BV, linear Ising, QAOA MAX-CUT, XEB."""

from __future__ import annotations

import math

from .._rng import make_rng
from ..exceptions import InvalidArgument
from .ir import Circuit, Gate

PI = math.pi


def _check(n, **counts):
    if n < 2:
        raise InvalidArgument(f"need at least 2 qubits, got {n}")
    for name, value in counts.items():
        if value < 1:
            raise InvalidArgument(f"{name} must be >= 1, got {value}")


def gen_bv(n, hidden=None):
    """Bernstein-Vazirani with ancilla ``n-1``; hidden string defaults to all ones."""
    _check(n)
    if hidden is None:
        hidden = "1" * (n - 1)
    if len(hidden) != n - 1 or set(hidden) - {"0", "1"}:
        raise InvalidArgument("hidden string must be n-1 bits")
    anc = n - 1
    gates = [Gate("X", (anc,))]
    gates += [Gate("H", (q,)) for q in range(n)]
    gates += [Gate("CNOT", (q, anc)) for q, bit in enumerate(hidden) if bit == "1"]
    gates += [Gate("H", (q,)) for q in range(n - 1)]
    return Circuit(n, tuple(gates), name=f"bv{n}", source="generator")


def gen_ising(n, steps=2, j=1.0, h=1.0, dt=0.25):
    """Trotterised transverse-field Ising chain ``0 - 1 - ... - n-1``."""
    _check(n, steps=steps)
    gates = [Gate("H", (q,)) for q in range(n)]
    for _ in range(steps):
        for parity in (0, 1):
            for q in range(parity, n - 1, 2):
                gates += [
                    Gate("CNOT", (q, q + 1)),
                    Gate("RZ", (q + 1,), 2 * j * dt),
                    Gate("CNOT", (q, q + 1)),
                ]
        gates += [Gate("RX", (q,), 2 * h * dt) for q in range(n)]
    return Circuit(n, tuple(gates), name=f"ising{n}", source="generator")


def erdos_renyi_edges(n, edge_prob, seed):
    rng = make_rng(seed)
    draws = rng.random(n * (n - 1) // 2)
    edges = []
    k = 0
    for a in range(n):
        for b in range(a + 1, n):
            if draws[k] < edge_prob:
                edges.append((a, b))
            k += 1
    return edges


def gen_qaoa(n, p=1, edge_prob=0.5, seed=0, gamma=0.4, beta=0.3):
    """MAX-CUT QAOA on a seeded Erdos-Renyi graph."""
    _check(n, p=p)
    if not 0.0 <= edge_prob <= 1.0:
        raise InvalidArgument("edge_prob must lie in [0, 1]")
    edges = erdos_renyi_edges(n, edge_prob, seed)
    gates = [Gate("H", (q,)) for q in range(n)]
    for _ in range(p):
        for a, b in edges:
            gates += [Gate("CNOT", (a, b)), Gate("RZ", (b,), 2 * gamma), Gate("CNOT", (a, b))]
        gates += [Gate("RX", (q,), 2 * beta) for q in range(n)]
    return Circuit(n, tuple(gates), name=f"qaoa{n}", source="generator")


def mesh_tiling(rows, cols):
    """Four disjoint coupler sub-patterns of a mesh.

    Horizontal couplers starting on even / odd columns, then vertical
    couplers starting on even / odd rows.
    """
    patterns = [[], [], [], []]
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                patterns[c % 2].append((q, q + 1))
            if r + 1 < rows:
                patterns[2 + r % 2].append((q, q + cols))
    return [tuple(p) for p in patterns]


XEB_SINGLE = (("RX", PI / 2), ("RY", PI / 2), ("RZ", PI / 4))


def gen_xeb(n, p=8, seed=0, two_qubit="ISWAP"):
    """``p`` cycles of seeded single-qubit gates then one tiling sub-pattern of
    two-qubit gates; the sub-pattern rotates through the four tilings."""
    _check(n, p=p)
    side = int(round(math.sqrt(n)))
    if side * side != n:
        raise InvalidArgument(f"xeb needs a square qubit count, got {n}")
    rng = make_rng(seed)
    tiling = mesh_tiling(side, side)
    gates = []
    for cycle in range(p):
        picks = rng.integers(0, len(XEB_SINGLE), size=n)
        for q in range(n):
            kind, angle = XEB_SINGLE[int(picks[q])]
            gates.append(Gate(kind, (q,), angle))
        gates += [Gate(two_qubit, pair) for pair in tiling[cycle % 4]]
    return Circuit(n, tuple(gates), name=f"xeb{n}_{p}", source="generator")


def from_spec(spec, seed=0):
    """Build a circuit from ``"bv:16"``, ``"ising:9:2"``, ``"qaoa:16:1:0.5:seed"``,
    ``"xeb:16:8:seed"``.  ``seed`` applies when the spec omits one."""
    name, *args = spec.split(":")
    name = name.lower()
    try:
        if name == "bv":
            return gen_bv(int(args[0]))
        if name == "ising":
            return gen_ising(int(args[0]), *(int(a) for a in args[1:2]))
        if name == "qaoa":
            n = int(args[0])
            p = int(args[1]) if len(args) > 1 else 1
            prob = float(args[2]) if len(args) > 2 else 0.5
            seed = int(args[3]) if len(args) > 3 else seed
            return gen_qaoa(n, p, prob, seed)
        if name == "xeb":
            n = int(args[0])
            p = int(args[1]) if len(args) > 1 else 8
            seed = int(args[2]) if len(args) > 2 else seed
            return gen_xeb(n, p, seed)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"malformed generator spec {spec!r}") from None
    raise InvalidArgument(f"unknown generator {name!r}")
