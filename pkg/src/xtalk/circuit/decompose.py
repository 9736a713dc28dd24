"""Rewrite CNOT and SWAP into the native CZ / iSWAP / sqrt(iSWAP) gates.

Each template below lists gates in time order on abstract qubits ``a`` and
``b``; for CNOT ``a`` is the control.  Rotation angles are multiples of
pi/2, so every sequence is exact (up to a global phase).
"""

from __future__ import annotations

import math

from ..exceptions import InvalidArgument
from .ir import Gate

PI = math.pi
STRATEGIES = ("cz_only", "iswap_only", "hybrid")

# (kind, qubit roles, angle)
_CNOT_VIA_CZ = (("H", "b", None), ("CZ", "ab", None), ("H", "b", None))

_CNOT_VIA_ISWAP = (
    ("ISWAP", "ab", None),
    ("H", "a", None),
    ("ISWAP", "ab", None),
    ("RZ", "a", 1.5 * PI),
    ("RZ", "b", 0.5 * PI),
    ("RY", "b", 0.5 * PI),
    ("RZ", "b", 1.5 * PI),
)

_SWAP_VIA_CZ = _CNOT_VIA_CZ + (
    ("H", "a", None), ("CZ", "ab", None), ("H", "a", None),
) + _CNOT_VIA_CZ

_SWAP_VIA_ISWAP = (
    ("ISWAP", "ab", None),
    ("H", "b", None),
    ("ISWAP", "ab", None),
    ("H", "a", None),
    ("ISWAP", "ab", None),
    ("RZ", "a", -PI),
    ("RZ", "b", PI),
    ("RY", "b", 0.5 * PI),
)

_SWAP_VIA_SQRT_ISWAP = (
    ("SQRT_ISWAP", "ab", None),
    ("H", "a", None),
    ("H", "b", None),
    ("SQRT_ISWAP", "ab", None),
    ("RX", "a", 0.5 * PI),
    ("RX", "b", 0.5 * PI),
    ("SQRT_ISWAP", "ab", None),
    ("RZ", "a", -PI),
    ("RY", "a", 0.5 * PI),
    ("RZ", "a", -0.5 * PI),
    ("RZ", "b", -PI),
    ("RY", "b", 0.5 * PI),
    ("RZ", "b", -0.5 * PI),
)

# CNOT and SWAP templates per strategy.
TEMPLATES = {
    "cz_only": {"CNOT": _CNOT_VIA_CZ, "SWAP": _SWAP_VIA_CZ},
    "iswap_only": {"CNOT": _CNOT_VIA_ISWAP, "SWAP": _SWAP_VIA_ISWAP},
    "hybrid": {"CNOT": _CNOT_VIA_CZ, "SWAP": _SWAP_VIA_SQRT_ISWAP},
}


def expand(gate, strategy):
    """Native gate list implementing ``gate``; native gates pass through."""
    table = TEMPLATES[strategy]
    if gate.kind not in table:
        return [gate]
    a, b = gate.qubits
    roles = {"a": (a,), "b": (b,), "ab": (a, b)}
    return [Gate(kind, roles[who], angle) for kind, who, angle in table[gate.kind]]


_ALIASES = {"cz": "cz_only", "iswap": "iswap_only"}


def normalize_decomposition(strategy):
    name = _ALIASES.get(strategy, strategy)
    if name not in TEMPLATES:
        raise InvalidArgument(f"unknown decomposition strategy {strategy!r}")
    return name


def decompose(circuit, strategy="hybrid"):
    strategy = normalize_decomposition(strategy)
    out = []
    for g in circuit.gates:
        out.extend(expand(g, strategy))
    return circuit.with_gates(out)
