"""Frequency-aware scheduling (ColorDynamic) and the baseline strategies.

Strategies:

``ColorDynamic``
    Criticality-ordered queue.  A two-qubit gate is postponed when too many
    of its crosstalk neighbours are already in flight.  The active couplers
    of each cycle are coloured and the colours spread over the interaction
    region with maximal separation.
``N``
    ASAP layers, one fixed interaction frequency, no crosstalk awareness.
``U``
    One interaction frequency; crosstalk-adjacent gates never share a cycle.
``S``
    ASAP layers with a static, program-independent colouring of the whole
    crosstalk graph.
``G``
    Tunable couplers; ASAP under a rotating four-way tiling of mesh couplers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .circuit.ir import NATIVE_TWO_QUBIT, Circuit
from .circuit.benchmarks import mesh_tiling
from .circuit.slicing import dependencies, slice_layers
from .circuit.textio import parse_circuit, serialize_circuit
from .crosstalk import (
    Coloring,
    active_subgraph,
    gen_crosstalk_graph,
    greedy_color,
    mesh_pattern_coloring,
)
from .device import color_connectivity
from .exceptions import InvalidArgument, PreconditionError, UnsupportedTopology
from .freqassign import DEFAULT_TOLERANCE, assign_idle, smt_find
from .noise import gate_duration

STRATEGIES = ("N", "G", "U", "S", "ColorDynamic")
DEFAULT_SINGLE_QUBIT_NS = 25.0
DEFAULT_CONFLICT_THRESHOLD = 3


@dataclass(frozen=True)
class CompileOptions:
    distance: int = 1
    max_colors: int | None = None
    conflict_threshold: int = DEFAULT_CONFLICT_THRESHOLD
    tolerance: float = DEFAULT_TOLERANCE
    single_qubit_ns: float = DEFAULT_SINGLE_QUBIT_NS
    # cap each cycle's interaction region at the lowest omega_max of its gate qubits
    clamp_to_omega_max: bool = False

    def __post_init__(self):
        if self.distance < 1:
            raise InvalidArgument("crosstalk distance must be >= 1")
        if self.max_colors is not None and self.max_colors < 1:
            raise InvalidArgument("max_colors must be >= 1")
        if self.conflict_threshold < 1:
            raise InvalidArgument("conflict_threshold must be >= 1")


@dataclass
class ScheduleCycle:
    index: int
    gates: tuple
    gate_ids: tuple
    freq_of_qubit: dict
    duration: float
    retunes: int
    delta: float | None = None
    n_colors: int = 0


@dataclass
class Schedule:
    cycles: list
    strategy: str
    circuit: Circuit
    distance: int = 1
    single_qubit_ns: float = DEFAULT_SINGLE_QUBIT_NS
    g0: float = 0.030
    retune_time: float = 2.0

    @property
    def depth(self):
        return len(self.cycles)

    @property
    def n_colors_max(self):
        return max((c.n_colors for c in self.cycles), default=0)


@dataclass(frozen=True)
class _DeviceContext:
    xg: object
    idle_freq: tuple
    alpha: float


@lru_cache(maxsize=64)
def _context(device, distance, tolerance):
    xg = gen_crosstalk_graph(device.graph, distance)
    alpha = device.anharmonicity
    conn = color_connectivity(device.graph)
    idle = assign_idle(conn, device.partition, alpha, tolerance)
    idle_freq = tuple(idle.omega_of_color[conn.color_of[q]] for q in range(device.n_qubits))
    return _DeviceContext(xg, idle_freq, alpha)


def noise_conflict(gate, in_flight, xg, threshold):
    """True when at least ``threshold`` in-flight two-qubit gates neighbour ``gate``."""
    if not gate.is_two_qubit:
        return False
    v = xg.vertex_of(gate.qubits)
    nbrs = xg.adj[v]
    count = sum(1 for g in in_flight if g.is_two_qubit and xg.vertex_of(g.qubits) in nbrs)
    return count >= threshold


def check_compilable(device, circuit):
    if circuit.n_qubits > device.n_qubits:
        raise PreconditionError(
            f"circuit uses {circuit.n_qubits} qubits, device has {device.n_qubits}"
        )
    for g in circuit.gates:
        if not g.is_two_qubit:
            continue
        if g.kind not in NATIVE_TWO_QUBIT:
            raise PreconditionError(f"gate {g} is not native; decompose first")
        if not device.graph.has_edge(*g.qubits):
            raise PreconditionError(f"gate {g} is not on a device coupler; route first")


class _Timeline:
    """Turns (gate ids, frequencies) into timed cycles."""

    def __init__(self, circuit, device, ctx, opts):
        self.circuit = circuit
        self.device = device
        self.opts = opts
        self.prev = dict(enumerate(ctx.idle_freq))
        self.cycles = []

    def emit(self, ids, freq, delta=None, n_colors=0):
        gates = tuple(self.circuit.gates[i] for i in ids)
        retunes = sum(1 for q, w in freq.items() if self.prev.get(q) != w)
        self.prev = freq
        duration = cycle_duration(gates, self.device.g0, self.opts.single_qubit_ns)
        if retunes:
            duration += self.device.retune_time
        self.cycles.append(
            ScheduleCycle(len(self.cycles), gates, tuple(ids), freq, duration, retunes, delta, n_colors)
        )


def cycle_duration(gates, g0, single_qubit_ns):
    longest = 0.0
    for g in gates:
        t = gate_duration(g.kind, g0) if g.is_two_qubit else single_qubit_ns
        longest = max(longest, t)
    return longest


def _frequencies(ctx, two_qubit_freq):
    freq = dict(enumerate(ctx.idle_freq))
    for qubits, w in two_qubit_freq:
        for q in qubits:
            freq[q] = w
    return freq


def _interaction_region(device, gates, opts):
    lo, hi = device.partition.interaction
    if opts.clamp_to_omega_max and gates:
        cap = min(device.qubits[q].omega_max for g in gates for q in g.qubits)
        hi = max(lo, min(hi, cap))
    return lo, hi


def _queue_schedule(circuit, admit):
    """Windowed list scheduler following the criticality-sorted queue.

    ``admit(i, admitted)`` decides whether ready gate ``i`` joins the cycle.
    Yields the admitted gate ids of each cycle.  A gate is ready only once
    all its predecessors ran in earlier cycles.
    """
    layers, crit = slice_layers(circuit)
    preds = dependencies(circuit)
    done = set()
    window = list(layers[0].gate_ids) if layers else []
    nxt = 1
    while window or nxt < len(layers):
        window.sort(key=lambda i: (-crit[i], i))
        admitted = []
        for i in window:
            if preds[i] <= done and admit(i, admitted):
                admitted.append(i)
        taken = set(admitted)
        window = [i for i in window if i not in taken]
        if nxt < len(layers):
            window.extend(layers[nxt].gate_ids)
            nxt += 1
        if not admitted:
            continue
        done |= taken
        yield admitted


def _compile_colordynamic(circuit, device, ctx, opts):
    xg = ctx.xg
    gates = circuit.gates
    tl = _Timeline(circuit, device, ctx, opts)
    state = {}

    def admit(i, admitted):
        g = gates[i]
        if not g.is_two_qubit:
            return True
        inflight = [gates[j] for j in admitted]
        if noise_conflict(g, inflight, xg, opts.conflict_threshold):
            return False
        v = xg.vertex_of(g.qubits)
        taken = {state[j] for j in admitted if gates[j].is_two_qubit and xg.vertex_of(gates[j].qubits) in xg.adj[v]}
        c = 0
        while c in taken:
            c += 1
        if opts.max_colors is not None and c >= opts.max_colors:
            return False
        state[i] = c
        return True

    for ids in _queue_schedule(circuit, admit):
        two = [i for i in ids if gates[i].is_two_qubit]
        if not two:
            tl.emit(ids, _frequencies(ctx, ()))
            state.clear()
            continue
        vert = {i: xg.vertex_of(gates[i].qubits) for i in two}
        sub = active_subgraph(xg, [gates[i].qubits for i in two])
        coloring = greedy_color(sub)
        if opts.max_colors is not None and coloring.n_colors > opts.max_colors:
            coloring = Coloring.from_mapping({vert[i]: state[i] for i in two})
        region = _interaction_region(device, [gates[i] for i in two], opts)
        fa = smt_find(coloring, ctx.alpha, region, opts.tolerance)
        assign = [(gates[i].qubits, fa.omega_of_color[coloring.color_of[vert[i]]]) for i in two]
        tl.emit(ids, _frequencies(ctx, assign), fa.delta, coloring.n_colors)
        state.clear()
    return tl.cycles


def _compile_uniform(circuit, device, ctx, opts):
    xg = ctx.xg
    gates = circuit.gates
    tl = _Timeline(circuit, device, ctx, opts)

    def admit(i, admitted):
        return not noise_conflict(gates[i], [gates[j] for j in admitted], xg, 1)

    for ids in _queue_schedule(circuit, admit):
        two = [gates[i] for i in ids if gates[i].is_two_qubit]
        if not two:
            tl.emit(ids, _frequencies(ctx, ()))
            continue
        fa = smt_find(Coloring.from_mapping({0: 0}), ctx.alpha, _interaction_region(device, two, opts), opts.tolerance)
        w = fa.omega_of_color[0]
        tl.emit(ids, _frequencies(ctx, [(g.qubits, w) for g in two]), fa.delta, 1)
    return tl.cycles


def _compile_naive(circuit, device, ctx, opts):
    layers, _ = slice_layers(circuit)
    tl = _Timeline(circuit, device, ctx, opts)
    w = device.partition.interaction_mid
    for layer in layers:
        two = [g for g in layer.gates if g.is_two_qubit]
        tl.emit(layer.gate_ids, _frequencies(ctx, [(g.qubits, w) for g in two]), None, 1 if two else 0)
    return tl.cycles


def static_assignment(device, ctx, opts):
    """Coupler -> frequency map shared by every program (strategy S)."""
    shape = device.graph.mesh_shape
    if shape is not None and opts.distance == 1:
        coloring = mesh_pattern_coloring(*shape)
    else:
        coloring = greedy_color(ctx.xg)
    lo, hi = device.partition.interaction
    fa = smt_find(coloring, ctx.alpha, (lo, hi), opts.tolerance)
    freq = {ctx.xg.couplers[v]: fa.omega_of_color[c] for v, c in coloring.color_of.items()}
    return freq, fa.delta, coloring.n_colors


def _compile_static(circuit, device, ctx, opts):
    layers, _ = slice_layers(circuit)
    tl = _Timeline(circuit, device, ctx, opts)
    freq, delta, n_colors = static_assignment(device, ctx, opts)
    for layer in layers:
        two = [g for g in layer.gates if g.is_two_qubit]
        assign = [(g.qubits, freq[g.coupler]) for g in two]
        tl.emit(layer.gate_ids, _frequencies(ctx, assign), delta if two else None, n_colors if two else 0)
    return tl.cycles


def _compile_gmon(circuit, device, ctx, opts):
    shape = device.graph.mesh_shape
    if shape is None:
        raise UnsupportedTopology("strategy G needs a mesh device")
    patterns = [frozenset(p) for p in mesh_tiling(*shape)]
    gates = circuit.gates
    preds = dependencies(circuit)
    pending = [i for i, g in enumerate(gates) if not g.is_barrier]
    done = set()
    tl = _Timeline(circuit, device, ctx, opts)
    w = device.partition.interaction_mid
    turn = 0
    while pending:
        ready = [i for i in pending if preds[i] <= done]
        ready_two = [i for i in ready if gates[i].is_two_qubit]
        chosen = None
        for k in range(4):
            p = (turn + k) % 4
            if any(gates[i].coupler in patterns[p] for i in ready_two):
                chosen = p
                break
        ids = [i for i in ready if not gates[i].is_two_qubit]
        if chosen is not None:
            ids += [i for i in ready_two if gates[i].coupler in patterns[chosen]]
            turn = chosen + 1
        ids.sort()
        two = [gates[i] for i in ids if gates[i].is_two_qubit]
        tl.emit(ids, _frequencies(ctx, [(g.qubits, w) for g in two]), None, 1 if two else 0)
        done |= set(ids)
        pending = [i for i in pending if i not in done]
    return tl.cycles


_STRATEGY_IMPL = {
    "ColorDynamic": _compile_colordynamic,
    "N": _compile_naive,
    "U": _compile_uniform,
    "S": _compile_static,
    "G": _compile_gmon,
}


def normalize_strategy(name):
    for s in STRATEGIES:
        if name.lower() == s.lower():
            return s
    if name.lower() in ("cd", "colordynamic", "color_dynamic", "dynamic"):
        return "ColorDynamic"
    raise InvalidArgument(f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}")


def compile(strategy, device, circuit, opts=None):
    """Schedule a routed, natively decomposed circuit with the given strategy."""
    strategy = normalize_strategy(strategy)
    opts = opts or CompileOptions()
    check_compilable(device, circuit)
    ctx = _context(device, opts.distance, opts.tolerance)
    cycles = _STRATEGY_IMPL[strategy](circuit, device, ctx, opts)
    return Schedule(
        cycles,
        strategy,
        circuit,
        distance=opts.distance,
        single_qubit_ns=opts.single_qubit_ns,
        g0=device.g0,
        retune_time=device.retune_time,
    )


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, detail):
        self.violations.append(f"{kind}: {detail}")


def validate_schedule(s, device, circuit=None, slack=1e-6):
    """Check a schedule's structural and spectral invariants; never raises."""
    circuit = circuit if circuit is not None else s.circuit
    report = ValidationReport()
    xg = _context(device, s.distance, DEFAULT_TOLERANCE).xg
    preds = dependencies(circuit)
    expected = {i for i, g in enumerate(circuit.gates) if not g.is_barrier}
    seen = {}
    for cyc in s.cycles:
        for i, g in zip(cyc.gate_ids, cyc.gates):
            if i in seen:
                report.add("gate coverage", f"gate {i} scheduled twice")
            seen[i] = cyc.index
            if i not in expected or circuit.gates[i] != g:
                report.add("gate coverage", f"cycle {cyc.index} holds unknown gate {i} ({g})")
    for i in sorted(expected - set(seen)):
        report.add("gate coverage", f"gate {i} ({circuit.gates[i]}) never scheduled")

    lo_p, hi_p = device.partition.parking
    lo_i, hi_i = device.partition.interaction
    for cyc in s.cycles:
        for i in cyc.gate_ids:
            for j in preds[i]:
                if j in seen and seen[j] >= cyc.index:
                    report.add("dependency order", f"gate {i} in cycle {cyc.index} before predecessor {j}")
        used = [q for g in cyc.gates for q in g.qubits]
        if len(used) != len(set(used)):
            report.add("disjoint support", f"cycle {cyc.index} uses a qubit twice")
        missing = [q for q in range(device.n_qubits) if q not in cyc.freq_of_qubit]
        if missing:
            report.add("frequency", f"cycle {cyc.index} has no frequency for qubits {missing}")
            continue
        busy = set()
        two = [g for g in cyc.gates if g.is_two_qubit]
        for g in two:
            a, b = g.qubits
            busy.update(g.qubits)
            wa, wb = cyc.freq_of_qubit[a], cyc.freq_of_qubit[b]
            if abs(wa - wb) > slack:
                report.add("interaction frequency", f"{g} qubits at {wa} and {wb}")
            if not lo_i - slack <= wa <= hi_i + slack:
                report.add("interaction frequency", f"{g} at {wa} outside interaction region")
        expect = cycle_duration(cyc.gates, s.g0, s.single_qubit_ns)
        if cyc.retunes:
            expect += s.retune_time
        if abs(expect - cyc.duration) > 1e-6:
            report.add("duration", f"cycle {cyc.index} lasts {cyc.duration}, expected {expect}")

        verts = [xg.vertex_of(g.qubits) for g in two]
        for x in range(len(two)):
            for y in range(x + 1, len(two)):
                if verts[y] not in xg.adj[verts[x]]:
                    continue
                if s.strategy == "U":
                    report.add("adjacency exclusion", f"{two[x]} and {two[y]} share cycle {cyc.index}")
                if s.strategy == "ColorDynamic":
                    gap = abs(cyc.freq_of_qubit[two[x].qubits[0]] - cyc.freq_of_qubit[two[y].qubits[0]])
                    if cyc.delta is None or gap < cyc.delta - slack:
                        report.add(
                            "spectral collision",
                            f"{two[x]} and {two[y]} separated by {gap:.6f} < delta in cycle {cyc.index}",
                        )
        if s.strategy == "ColorDynamic":
            for q, w in cyc.freq_of_qubit.items():
                if q not in busy and not lo_p - slack <= w <= hi_p + slack:
                    report.add("parking", f"idle qubit {q} at {w} outside parking region")
    return report


def schedule_to_dict(s):
    cycles = []
    for c in s.cycles:
        cycles.append(
            {
                "index": c.index,
                "gates": [str(g) for g in c.gates],
                "gate_ids": list(c.gate_ids),
                "frequencies_ghz": {str(q): round(w, 6) for q, w in sorted(c.freq_of_qubit.items())},
                "duration_ns": round(c.duration, 6),
                "retunes": c.retunes,
                "delta_ghz": None if c.delta is None else round(c.delta, 6),
                "n_colors": c.n_colors,
            }
        )
    return {
        "strategy": s.strategy,
        "circuit": s.circuit.name,
        "circuit_text": serialize_circuit(s.circuit),
        "distance": s.distance,
        "single_qubit_ns": s.single_qubit_ns,
        "g0_ghz": s.g0,
        "retune_ns": s.retune_time,
        "depth": s.depth,
        "exec_time_ns": round(sum(c.duration for c in s.cycles), 6),
        "cycles": cycles,
    }


def schedule_from_dict(d):
    circuit = parse_circuit(d["circuit_text"], name=d.get("circuit", ""))
    cycles = []
    for c in d["cycles"]:
        ids = tuple(c["gate_ids"])
        text = "\n".join([f"qubits {circuit.n_qubits}", *c["gates"]])
        cycles.append(
            ScheduleCycle(
                c["index"],
                parse_circuit(text).gates,
                ids,
                {int(q): w for q, w in c["frequencies_ghz"].items()},
                c["duration_ns"],
                c["retunes"],
                c["delta_ghz"],
                c.get("n_colors", 0),
            )
        )
    return Schedule(
        cycles,
        d["strategy"],
        circuit,
        distance=d.get("distance", 1),
        single_qubit_ns=d.get("single_qubit_ns", DEFAULT_SINGLE_QUBIT_NS),
        g0=d.get("g0_ghz", 0.030),
        retune_time=d.get("retune_ns", 2.0),
    )


def dump_schedule(s, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(schedule_to_dict(s), fh, indent=1)
        fh.write("\n")


def load_schedule(path):
    with open(path, encoding="utf-8") as fh:
        return schedule_from_dict(json.load(fh))
