"""Hardware model: qubit connectivity, per-qubit parameters, spectrum partition."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ._rng import box_muller, make_rng
from .exceptions import InvalidArgument

# Defaults in GHz / us / ns.
DEFAULT_OMEGA_MEAN = 7.0
DEFAULT_OMEGA_SIGMA = 0.1
DEFAULT_ANHARMONICITY = -0.2
DEFAULT_G0 = 0.030
DEFAULT_T1_US = 50.0
DEFAULT_T2_US = 50.0
DEFAULT_RETUNE_NS = 2.0


@dataclass(frozen=True)
class ConnectivityGraph:
    """Qubits as vertices, couplers as edges.

    ``edges`` holds sorted ``(u, v)`` pairs with ``u < v`` in ascending
    order. ``mesh_shape`` is set for graphs built by :func:`build_mesh` and
    is used by the mesh-specific baselines.
    """

    n_qubits: int
    edges: tuple
    mesh_shape: tuple | None = None
    adjacency: tuple = field(init=False, repr=False, compare=False)
    _edge_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_qubits < 0:
            raise InvalidArgument("n_qubits must be non-negative")
        canon = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidArgument(f"self-loop on qubit {u}")
            if not (0 <= u < self.n_qubits and 0 <= v < self.n_qubits):
                raise InvalidArgument(f"edge ({u}, {v}) out of range")
            canon.add((min(u, v), max(u, v)))
        edges = tuple(sorted(canon))
        adj = [[] for _ in range(self.n_qubits)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_edge_set", frozenset(edges))

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_set

    def adjacency_dict(self):
        return {q: frozenset(ns) for q, ns in enumerate(self.adjacency)}

    def distances_from(self, source):
        """BFS hop counts from ``source``; unreachable qubits are absent."""
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def all_pairs_distances(self):
        return [self.distances_from(q) for q in range(self.n_qubits)]

    def to_edge_list(self):
        return "".join(f"{u} {v}\n" for u, v in self.edges)


@dataclass(frozen=True)
class QubitParams:
    omega_max: float
    anharmonicity: float
    t1: float
    t2: float

    def __post_init__(self):
        if self.omega_max <= 0:
            raise InvalidArgument("omega_max must be positive")
        if self.anharmonicity >= 0:
            raise InvalidArgument("anharmonicity must be negative")
        if self.t1 <= 0 or self.t2 <= 0:
            raise InvalidArgument("t1 and t2 must be positive")


@dataclass(frozen=True)
class FrequencyPartition:
    """Parking region below an exclusion gap below the interaction region."""

    parking_lo: float = 5.0
    parking_hi: float = 6.0
    interaction_lo: float = 6.5
    interaction_hi: float = 7.5
    exclusion_width: float = 0.5

    def __post_init__(self):
        if self.parking_lo > self.parking_hi:
            raise InvalidArgument("parking region is empty")
        if self.interaction_lo > self.interaction_hi:
            raise InvalidArgument("interaction region is empty")
        if not self.parking_hi < self.interaction_lo:
            raise InvalidArgument("parking region must lie below the interaction region")
        # small slack so 6.5 - 6.0 >= 0.5 survives float rounding
        if self.interaction_lo - self.parking_hi < self.exclusion_width - 1e-12:
            raise InvalidArgument("exclusion gap narrower than exclusion_width")

    @property
    def parking(self):
        return (self.parking_lo, self.parking_hi)

    @property
    def interaction(self):
        return (self.interaction_lo, self.interaction_hi)

    @property
    def interaction_mid(self):
        return 0.5 * (self.interaction_lo + self.interaction_hi)


@dataclass(frozen=True)
class DeviceModel:
    graph: ConnectivityGraph
    qubits: tuple
    g0: float = DEFAULT_G0
    partition: FrequencyPartition = field(default_factory=FrequencyPartition)
    retune_time: float = DEFAULT_RETUNE_NS
    couplers_tunable: bool = False
    residual_coupling: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) != self.graph.n_qubits:
            raise InvalidArgument(
                f"{len(self.qubits)} qubit parameter sets for {self.graph.n_qubits} qubits"
            )
        if self.g0 <= 0:
            raise InvalidArgument("g0 must be positive")
        if self.retune_time < 0:
            raise InvalidArgument("retune_time must be non-negative")
        if self.residual_coupling < 0:
            raise InvalidArgument("residual_coupling must be non-negative")

    @property
    def n_qubits(self):
        return self.graph.n_qubits

    @property
    def anharmonicity(self):
        # the model assumes a device-wide anharmonicity; use the mean if perturbed
        if not self.qubits:
            return DEFAULT_ANHARMONICITY
        return sum(q.anharmonicity for q in self.qubits) / len(self.qubits)

    def with_residual_coupling(self, value):
        from dataclasses import replace

        return replace(self, residual_coupling=value)


def build_mesh(rows, cols):
    """Nearest-neighbour grid with row-major qubit indices."""
    if rows < 1 or cols < 1:
        raise InvalidArgument(f"mesh dimensions must be positive, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.append((q, q + 1))
            if r + 1 < rows:
                edges.append((q, q + cols))
    return ConnectivityGraph(rows * cols, tuple(edges), mesh_shape=(rows, cols))


def build_path(n):
    if n < 1:
        raise InvalidArgument("path length must be positive")
    return ConnectivityGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def build_express_cube(base, n, k):
    """Path or ``n x n`` mesh plus express links ``i -- i+k`` along each dimension.

    No wrap-around links are added; express links that coincide with base
    links are dropped.
    """
    if n < 2:
        raise InvalidArgument("express cube needs n >= 2")
    if k < 2:
        raise InvalidArgument("express stride k must be >= 2")
    if base == "path":
        g = build_path(n)
        extra = [(i, i + k) for i in range(n - k)]
        return ConnectivityGraph(n, g.edges + tuple(extra))
    if base == "mesh":
        g = build_mesh(n, n)
        extra = []
        for r in range(n):
            for c in range(n - k):
                extra.append((r * n + c, r * n + c + k))
        for c in range(n):
            for r in range(n - k):
                extra.append((r * n + c, (r + k) * n + c))
        return ConnectivityGraph(n * n, g.edges + tuple(extra))
    raise InvalidArgument(f"unknown express-cube base {base!r}")


def sample_device(
    graph,
    omega_mean=DEFAULT_OMEGA_MEAN,
    omega_sigma=DEFAULT_OMEGA_SIGMA,
    anharmonicity=DEFAULT_ANHARMONICITY,
    seed=0,
    extras=None,
):
    """Draw per-qubit maximum frequencies from N(omega_mean, omega_sigma).

    ``extras`` may override ``t1_us``, ``t2_us``, ``g0``, ``partition``
    (a :class:`FrequencyPartition`), ``retune_ns``, ``couplers_tunable`` and
    ``residual_coupling``.
    """
    if omega_sigma < 0:
        raise InvalidArgument("omega_sigma must be non-negative")
    extras = dict(extras or {})
    rng = make_rng(seed)
    omegas = box_muller(rng, omega_mean, omega_sigma, graph.n_qubits)
    if omega_sigma == 0:
        omegas = [float(omega_mean)] * graph.n_qubits
    t1 = extras.get("t1_us", DEFAULT_T1_US)
    t2 = extras.get("t2_us", DEFAULT_T2_US)
    qubits = tuple(QubitParams(w, anharmonicity, t1, t2) for w in omegas)
    return DeviceModel(
        graph=graph,
        qubits=qubits,
        g0=extras.get("g0", DEFAULT_G0),
        partition=extras.get("partition", FrequencyPartition()),
        retune_time=extras.get("retune_ns", DEFAULT_RETUNE_NS),
        couplers_tunable=extras.get("couplers_tunable", False),
        residual_coupling=extras.get("residual_coupling", 0.0),
    )


def color_connectivity(graph):
    """Proper vertex colouring of the connectivity graph (idle frequencies)."""
    from .crosstalk import greedy_color

    return greedy_color(graph)


def graph_from_topology(topo):
    kind = topo.get("kind", "mesh")
    if kind == "mesh":
        rows = topo["rows"]
        return build_mesh(rows, topo.get("cols", rows))
    if kind == "path":
        return build_path(topo["n"])
    if kind in ("express_path", "express_mesh"):
        return build_express_cube(kind.split("_")[1], topo["n"], topo["k"])
    if kind == "edges":
        return ConnectivityGraph(topo["n"], tuple(tuple(e) for e in topo["edges"]))
    raise InvalidArgument(f"unknown topology kind {kind!r}")


def device_from_config(cfg):
    """Build a :class:`DeviceModel` from a parsed device-config mapping."""
    graph = graph_from_topology(cfg.get("topology", {"kind": "mesh", "rows": 4, "cols": 4}))
    part_cfg = cfg.get("partition", {})
    parking = part_cfg.get("parking", [5.0, 6.0])
    interaction = part_cfg.get("interaction", [6.5, 7.5])
    partition = FrequencyPartition(
        parking_lo=parking[0],
        parking_hi=parking[1],
        interaction_lo=interaction[0],
        interaction_hi=interaction[1],
        exclusion_width=part_cfg.get("exclusion_width", 0.5),
    )
    extras = {
        "t1_us": cfg.get("t1_us", DEFAULT_T1_US),
        "t2_us": cfg.get("t2_us", DEFAULT_T2_US),
        "g0": cfg.get("g0", DEFAULT_G0),
        "partition": partition,
        "retune_ns": cfg.get("retune_ns", DEFAULT_RETUNE_NS),
        "couplers_tunable": bool(cfg.get("couplers_tunable", False)),
        "residual_coupling": cfg.get("residual_coupling", 0.0),
    }
    return sample_device(
        graph,
        omega_mean=cfg.get("omega_mean", DEFAULT_OMEGA_MEAN),
        omega_sigma=cfg.get("omega_sigma", DEFAULT_OMEGA_SIGMA),
        anharmonicity=cfg.get("anharmonicity", DEFAULT_ANHARMONICITY),
        seed=cfg.get("seed", 0),
        extras=extras,
    )


def load_device_config(path):
    with open(Path(path), encoding="utf-8") as fh:
        return device_from_config(json.load(fh))


def default_mesh_device(n_qubits, seed=0, **extras):
    """Square mesh device with default parameters for ``n_qubits`` (a perfect square)."""
    side = int(round(n_qubits ** 0.5))
    if side * side != n_qubits:
        raise InvalidArgument(f"{n_qubits} is not a perfect square")
    return sample_device(build_mesh(side, side), seed=seed, extras=extras)
