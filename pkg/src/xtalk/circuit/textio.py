"""Line-oriented circuit text format.

::

    qubits 3
    h 0
    cnot 0 1      # comment
    rz 2 0.785398
    barrier
"""

from __future__ import annotations

from pathlib import Path

from ..exceptions import InvalidArgument, ParseError
from .ir import BARRIER, ROTATIONS, SINGLE_QUBIT, TWO_QUBIT, Circuit, Gate

_ARITY = {k: 1 for k in SINGLE_QUBIT} | {k: 2 for k in TWO_QUBIT} | {BARRIER: 0}


def parse_circuit(text, name=""):
    n_qubits = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()
        if n_qubits is None:
            if head != "qubits" or len(tokens) != 2:
                raise ParseError("expected 'qubits N' header", lineno)
            n_qubits = _parse_index(tokens[1], lineno, "qubit count")
            continue
        kind = head.upper()
        if kind not in _ARITY:
            raise ParseError(f"unknown gate {head!r}", lineno)
        arity = _ARITY[kind]
        want = arity + (1 if kind in ROTATIONS else 0)
        if len(tokens) - 1 != want:
            raise ParseError(f"{head} expects {want} argument(s), got {len(tokens) - 1}", lineno)
        qubits = tuple(_parse_index(t, lineno, "qubit index") for t in tokens[1 : 1 + arity])
        for q in qubits:
            if q >= n_qubits:
                raise ParseError("qubit index out of range", lineno)
        angle = None
        if kind in ROTATIONS:
            try:
                angle = float(tokens[-1])
            except ValueError:
                raise ParseError(f"malformed angle {tokens[-1]!r}", lineno) from None
        try:
            gates.append(Gate(kind, qubits, angle))
        except InvalidArgument as exc:
            raise ParseError(str(exc), lineno) from None
    if n_qubits is None:
        raise ParseError("missing 'qubits N' header", 1)
    return Circuit(n_qubits, tuple(gates), name=name, source="file")


def _parse_index(token, lineno, what):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"malformed {what} {token!r}", lineno) from None
    if value < 0:
        raise ParseError(f"malformed {what} {token!r}", lineno)
    return value


def serialize_circuit(circuit):
    lines = [f"qubits {circuit.n_qubits}"]
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def load_circuit(path):
    path = Path(path)
    return parse_circuit(path.read_text(encoding="utf-8"), name=path.stem)
