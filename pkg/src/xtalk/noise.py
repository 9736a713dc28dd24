"""Crosstalk and decoherence error model and the worst-case success estimate.

Frequencies and couplings are cyclic frequencies in GHz and times are in
ns, so ``2*pi*g*t`` is dimensionless.  Decoherence times are given in us.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import InvalidArgument, ResonanceError

TWO_PI = 2.0 * math.pi
CROSSTALK_MODES = ("transition", "literal")


@dataclass(frozen=True)
class NoiseParams:
    g0: float = 0.030
    t1: float = 50.0
    t2: float = 50.0
    crosstalk_mode: str = "transition"
    residual_coupling: float = 0.0

    def __post_init__(self):
        if self.g0 <= 0:
            raise InvalidArgument("g0 must be positive")
        if self.t1 <= 0 or self.t2 <= 0:
            raise InvalidArgument("t1 and t2 must be positive")
        if self.crosstalk_mode not in CROSSTALK_MODES:
            raise InvalidArgument(f"unknown crosstalk mode {self.crosstalk_mode!r}")

    @classmethod
    def from_device(cls, device, crosstalk_mode="transition"):
        q = device.qubits
        t1 = min(p.t1 for p in q) if q else 50.0
        t2 = min(p.t2 for p in q) if q else 50.0
        return cls(device.g0, t1, t2, crosstalk_mode, device.residual_coupling)


@dataclass
class CycleMetrics:
    index: int
    duration: float
    crosstalk_error: float
    n_pairs: int


@dataclass
class Metrics:
    success: float
    total_crosstalk_error: float
    total_decoherence_error: float
    depth: int
    exec_time: float
    cycles: list = field(default_factory=list)
    compile_ms: float | None = None


def residual_coupling(g0, delta_omega):
    """Effective coupling ``g0**2 / delta_omega`` between detuned qubits."""
    if delta_omega <= 0:
        raise ResonanceError("qubits are on resonance; residual coupling is undefined")
    return g0 * g0 / delta_omega


def gate_duration(kind, g):
    """Two-qubit gate time in ns for coupling ``g`` in GHz (cyclic).

    With angular coupling ``2*pi*g``: iSWAP needs pi/(2 g_ang), sqrt(iSWAP)
    half that, and CZ pi/(sqrt(2) g_ang) because the |11>-|20> coupling is
    enhanced by sqrt(2).
    """
    if g <= 0:
        raise InvalidArgument("coupling must be positive")
    g_ang = TWO_PI * g
    if kind == "ISWAP":
        return math.pi / (2 * g_ang)
    if kind == "SQRT_ISWAP":
        return math.pi / (4 * g_ang)
    if kind == "CZ":
        return math.pi / (math.sqrt(2) * g_ang)
    raise InvalidArgument(f"no duration model for {kind}")


def decoherence_error(t, t1, t2):
    """Combined relaxation/dephasing error after ``t`` ns (``t1``, ``t2`` in us)."""
    if t < 0:
        raise InvalidArgument("time must be non-negative")
    t_us = t * 1e-3
    return (1.0 - math.exp(-t_us / t1)) * (1.0 - math.exp(-t_us / t2))


def crosstalk_error(delta_omega, t, g0, mode="transition"):
    """Unwanted population exchange over ``t`` ns at detuning ``delta_omega``.

    ``transition`` returns ``sin^2(2*pi*g'*t)``.  ``literal`` returns its
    complement.  Zero detuning oscillates at the bare coupling.
    """
    if t < 0:
        raise InvalidArgument("time must be non-negative")
    if mode not in CROSSTALK_MODES:
        raise InvalidArgument(f"unknown crosstalk mode {mode!r}")
    delta_omega = abs(delta_omega)
    g = g0 if delta_omega == 0 else residual_coupling(g0, delta_omega)
    p = math.sin(TWO_PI * g * t) ** 2
    return p if mode == "transition" else 1.0 - p


def coupled_error(g, t, mode="transition"):
    """Exchange error for a fixed effective coupling ``g`` (tunable-coupler leak)."""
    p = math.sin(TWO_PI * g * t) ** 2
    return p if mode == "transition" else 1.0 - p


def spectral_gap(w1, w2, alpha):
    """Smallest detuning between two qubits over the 0-1 and 1-2 transitions."""
    d = abs(w1 - w2)
    return min(d, abs(d - abs(alpha)))


def success_probability(gate_errors, qubit_errors):
    """Product of ``(1 - e)`` over every gate and qubit error term."""
    p = 1.0
    for e in gate_errors:
        p *= 1.0 - e
    for e in qubit_errors:
        p *= 1.0 - e
    return min(1.0, max(0.0, p))


def evaluate(schedule, device, params=None, xg=None):
    """Worst-case success estimate of a timed schedule.

    Every cycle charges, for its duration, an exchange error to

    * each pair of active two-qubit gates adjacent in the crosstalk graph,
      at the gap between their interaction frequencies;
    * each spectator coupler (both qubits idle) adjacent to an active gate
      at distance 1, once, at the gap between its two idle frequencies.

    Interaction and parking frequencies sit on opposite sides of the
    exclusion region, so the gate-to-spectator detuning is not charged.
    With tunable couplers every charged pair goes through a switched-off
    coupler and leaks at ``params.residual_coupling`` instead.  Every qubit
    adds one decoherence term per cycle.
    """
    from .crosstalk import gen_crosstalk_graph

    if params is None:
        params = NoiseParams.from_device(device)
    if xg is None:
        xg = gen_crosstalk_graph(device.graph, schedule.distance)
    near = xg if xg.distance_d == 1 else gen_crosstalk_graph(device.graph, 1)
    tunable = schedule.strategy == "G" or device.couplers_tunable
    mode = params.crosstalk_mode

    def pair_error(gap, t):
        if tunable:
            return coupled_error(params.residual_coupling, t, mode)
        return crosstalk_error(gap, t, params.g0, mode)

    gate_errors = []
    qubit_errors = []
    cycle_metrics = []
    for cyc in schedule.cycles:
        t = cyc.duration
        freq = cyc.freq_of_qubit
        active = [g for g in cyc.gates if g.is_two_qubit]
        busy = {q for g in active for q in g.qubits}
        errs = []
        on = {xg.vertex_of(g.qubits): g for g in active}
        for v, g in on.items():
            for u in xg.adj[v]:
                if u in on and u > v:
                    errs.append(pair_error(abs(freq[g.qubits[0]] - freq[on[u].qubits[0]]), t))
        spectators = set()
        for g in active:
            for u in near.adj[near.vertex_of(g.qubits)]:
                a, b = near.couplers[u]
                if a not in busy and b not in busy:
                    spectators.add(u)
        for u in sorted(spectators):
            a, b = near.couplers[u]
            errs.append(pair_error(abs(freq[a] - freq[b]), t))
        gate_errors.extend(errs)
        qubit_errors.extend([decoherence_error(t, params.t1, params.t2)] * device.n_qubits)
        cycle_metrics.append(CycleMetrics(cyc.index, t, sum(errs), len(errs)))

    exec_time = sum(c.duration for c in schedule.cycles)
    return Metrics(
        success=success_probability(gate_errors, qubit_errors),
        total_crosstalk_error=sum(gate_errors),
        total_decoherence_error=sum(qubit_errors),
        depth=len(schedule.cycles),
        exec_time=exec_time,
        cycles=cycle_metrics,
    )
