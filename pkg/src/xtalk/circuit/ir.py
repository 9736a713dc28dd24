"""Gate and circuit value types."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exceptions import InvalidArgument

SINGLE_QUBIT = frozenset({"H", "X", "Y", "Z", "RX", "RY", "RZ"})
ROTATIONS = frozenset({"RX", "RY", "RZ"})
TWO_QUBIT = frozenset({"CNOT", "SWAP", "CZ", "ISWAP", "SQRT_ISWAP"})
NATIVE_TWO_QUBIT = frozenset({"CZ", "ISWAP", "SQRT_ISWAP"})
BARRIER = "BARRIER"
ALL_KINDS = SINGLE_QUBIT | TWO_QUBIT | {BARRIER}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple = ()
    angle: float | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if kind not in ALL_KINDS:
            raise InvalidArgument(f"unknown gate kind {self.kind!r}")
        n = len(self.qubits)
        if kind in TWO_QUBIT:
            if n != 2 or self.qubits[0] == self.qubits[1]:
                raise InvalidArgument(f"{kind} needs two distinct qubits, got {self.qubits}")
        elif kind in SINGLE_QUBIT:
            if n != 1:
                raise InvalidArgument(f"{kind} needs one qubit, got {self.qubits}")
        elif n != 0:
            raise InvalidArgument("barrier takes no qubits")
        if kind in ROTATIONS:
            if self.angle is None:
                raise InvalidArgument(f"{kind} needs an angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise InvalidArgument(f"{kind} takes no angle")

    @property
    def is_two_qubit(self):
        return self.kind in TWO_QUBIT

    @property
    def is_barrier(self):
        return self.kind == BARRIER

    @property
    def coupler(self):
        """Sorted qubit pair of a two-qubit gate."""
        a, b = self.qubits
        return (a, b) if a < b else (b, a)

    def remap(self, mapping):
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle)

    def __str__(self):
        parts = [self.kind.lower(), *map(str, self.qubits)]
        if self.angle is not None:
            parts.append(repr(self.angle))
        return " ".join(parts)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple = ()
    name: str = ""
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 0:
            raise InvalidArgument("n_qubits must be non-negative")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise InvalidArgument(f"gate {g} touches qubit {q} >= {self.n_qubits}")

    def __len__(self):
        return len(self.gates)

    @property
    def two_qubit_gates(self):
        return [g for g in self.gates if g.is_two_qubit]

    def is_native(self):
        return all(g.kind not in ("CNOT", "SWAP") for g in self.gates)

    def with_gates(self, gates, n_qubits=None):
        return Circuit(
            self.n_qubits if n_qubits is None else n_qubits, tuple(gates), self.name, self.source
        )


@dataclass(frozen=True)
class Layer:
    index: int
    gates: tuple = field(default=())
    gate_ids: tuple = field(default=())
