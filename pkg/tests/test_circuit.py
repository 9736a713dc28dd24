import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import TWO_QUBIT, phase_distance, simulate_classical, unitary
from xtalk.circuit import (
    Circuit,
    Gate,
    decompose,
    dependencies,
    from_spec,
    gen_bv,
    gen_ising,
    gen_qaoa,
    gen_xeb,
    mesh_tiling,
    parse_circuit,
    route,
    serialize_circuit,
    slice_layers,
)
from xtalk.circuit.decompose import TEMPLATES
from xtalk.device import build_mesh, build_path
from xtalk.exceptions import InvalidArgument, ParseError, RoutingError
from xtalk.device import ConnectivityGraph


# ---------------------------------------------------------------- text format

SAMPLE = """\
# Bell pair then a rotation
qubits 3
h 0
cnot 0 1   # entangle
rz 2 0.5
barrier
cz 1 2
"""


def test_parse_sample():
    c = parse_circuit(SAMPLE, name="bell")
    assert c.n_qubits == 3 and c.name == "bell"
    assert [g.kind for g in c.gates] == ["H", "CNOT", "RZ", "BARRIER", "CZ"]
    assert c.gates[2].angle == 0.5 and c.gates[1].qubits == (0, 1)


def test_serialize_is_canonical():
    c = parse_circuit(SAMPLE)
    assert serialize_circuit(c) == "qubits 3\nh 0\ncnot 0 1\nrz 2 0.5\nbarrier\ncz 1 2\n"


@pytest.mark.parametrize(
    "text,msg",
    [
        ("qubits 2\ncnot 0 5\n", "qubit index out of range, line 2"),
        ("h 0\n", "expected 'qubits N' header, line 1"),
        ("qubits 2\nfoo 0\n", "unknown gate 'foo', line 2"),
        ("qubits 2\nrx 0 abc\n", "malformed angle 'abc', line 2"),
        ("qubits 2\n\nh 0 1\n", "h expects 1 argument(s), got 2, line 3"),
        ("qubits 2\ncnot 1 1\n", "line 2"),
        ("# only a comment\n", "missing 'qubits N' header, line 1"),
    ],
)
def test_parse_errors_carry_line_numbers(text, msg):
    with pytest.raises(ParseError) as err:
        parse_circuit(text)
    assert msg in str(err.value)


KINDS_1 = ["H", "X", "Y", "Z"]
KINDS_ROT = ["RX", "RY", "RZ"]
KINDS_2 = ["CNOT", "SWAP", "CZ", "ISWAP", "SQRT_ISWAP"]


@st.composite
def circuits(draw, max_qubits=6, max_gates=30, kinds_2=KINDS_2):
    n = draw(st.integers(2, max_qubits))
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        family = draw(st.sampled_from(["one", "rot", "two", "barrier"]))
        if family == "one":
            gates.append(Gate(draw(st.sampled_from(KINDS_1)), (draw(st.integers(0, n - 1)),)))
        elif family == "rot":
            angle = draw(st.floats(-10, 10, allow_nan=False))
            gates.append(Gate(draw(st.sampled_from(KINDS_ROT)), (draw(st.integers(0, n - 1)),), angle))
        elif family == "two":
            a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            gates.append(Gate(draw(st.sampled_from(kinds_2)), (a, b)))
        else:
            gates.append(Gate("BARRIER"))
    return Circuit(n, tuple(gates))


@settings(max_examples=100, deadline=None)
@given(circuits())
def test_text_round_trip(c):
    back = parse_circuit(serialize_circuit(c))
    assert back.n_qubits == c.n_qubits and back.gates == c.gates


def test_gate_validation():
    with pytest.raises(InvalidArgument):
        Gate("CNOT", (0,))
    with pytest.raises(InvalidArgument):
        Gate("RZ", (0,))
    with pytest.raises(InvalidArgument):
        Gate("H", (0,), 1.0)
    with pytest.raises(InvalidArgument):
        Circuit(2, (Gate("H", (3,)),))


# ------------------------------------------------------------- decomposition

@pytest.mark.parametrize("strategy", sorted(TEMPLATES))
@pytest.mark.parametrize("kind", ["CNOT", "SWAP"])
@pytest.mark.parametrize("qubits", [(0, 1), (1, 0)])
def test_decomposition_unitary(strategy, kind, qubits):
    src = Gate(kind, qubits)
    out = decompose(Circuit(2, (src,)), strategy)
    assert out.is_native()
    assert phase_distance(unitary(out.gates), unitary([src])) < 1e-9


@pytest.mark.parametrize(
    "strategy,kind,native,count",
    [
        ("cz_only", "CNOT", "CZ", 1),
        ("cz_only", "SWAP", "CZ", 3),
        ("iswap_only", "CNOT", "ISWAP", 2),
        ("iswap_only", "SWAP", "ISWAP", 3),
        ("hybrid", "CNOT", "CZ", 1),
        ("hybrid", "SWAP", "SQRT_ISWAP", 3),
    ],
)
def test_decomposition_two_qubit_counts(strategy, kind, native, count):
    out = decompose(Circuit(2, (Gate(kind, (0, 1)),)), strategy)
    kinds = [g.kind for g in out.gates if g.is_two_qubit]
    assert kinds == [native] * count


def test_reference_matrices_are_unitary():
    import numpy as np

    for m in TWO_QUBIT.values():
        assert np.allclose(m.conj().T @ m, np.eye(4))


def test_decompose_aliases_and_errors():
    c = Circuit(2, (Gate("CNOT", (0, 1)),))
    assert decompose(c, "cz") == decompose(c, "cz_only")
    assert decompose(c, "iswap") == decompose(c, "iswap_only")
    with pytest.raises(InvalidArgument):
        decompose(c, "magic")


def test_native_gates_pass_through():
    c = Circuit(2, (Gate("ISWAP", (0, 1)), Gate("RX", (1,), 0.3)))
    assert decompose(c, "cz_only").gates == c.gates


# ------------------------------------------------------------------- routing

def test_route_moves_first_operand():
    routed, mapping = route(Circuit(3, (Gate("CNOT", (0, 2)),)), build_path(3), return_mapping=True)
    assert routed.gates == (Gate("SWAP", (0, 1)), Gate("CNOT", (1, 2)))
    assert mapping == (1, 0, 2)


def test_route_leaves_adjacent_gates():
    c = Circuit(3, (Gate("CNOT", (0, 1)), Gate("H", (2,))))
    assert route(c, build_path(3)).gates == c.gates


def test_route_errors():
    with pytest.raises(InvalidArgument):
        route(Circuit(4, ()), build_path(3))
    split = ConnectivityGraph(4, ((0, 1), (2, 3)))
    with pytest.raises(RoutingError):
        route(Circuit(4, (Gate("CNOT", (0, 3)),)), split)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_routing_preserves_classical_semantics(data):
    graph = data.draw(st.sampled_from([build_path(5), build_mesh(2, 3), build_mesh(3, 3)]))
    n = data.draw(st.integers(2, graph.n_qubits))
    ops = data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True), max_size=15))
    flips = data.draw(st.lists(st.integers(0, n - 1), max_size=4))
    gates = [Gate("X", (q,)) for q in flips] + [Gate("CNOT", tuple(p)) for p in ops]
    circ = Circuit(n, tuple(gates))
    routed, l2p = route(circ, graph, return_mapping=True)
    for g in routed.gates:
        if g.is_two_qubit:
            assert graph.has_edge(*g.qubits)
    bits = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    logical = simulate_classical(circ.gates, n, bits)
    physical = simulate_classical(routed.gates, graph.n_qubits, bits + [0] * (graph.n_qubits - n))
    assert [physical[l2p[q]] for q in range(n)] == logical


def test_route_with_initial_map():
    c = Circuit(2, (Gate("CNOT", (0, 1)),))
    routed = route(c, build_path(3), initial_map=[2, 1])
    assert routed.gates == (Gate("CNOT", (2, 1)),)
    with pytest.raises(InvalidArgument):
        route(c, build_path(3), initial_map=[1, 1])


# ------------------------------------------------------------------- slicing

def test_slicing_layers_and_criticality():
    c = parse_circuit("qubits 3\nh 0\ncnot 0 1\nh 2\ncz 1 2\nx 0\n")
    layers, crit = slice_layers(c)
    assert [l.gate_ids for l in layers] == [(0, 2), (1,), (3, 4)]
    assert crit == {0: 3, 1: 2, 2: 2, 3: 1, 4: 1}


def test_barrier_is_a_fence():
    c = parse_circuit("qubits 2\nh 0\nbarrier\nh 1\n")
    preds = dependencies(c)
    assert preds[2] == frozenset({0})
    layers, _ = slice_layers(c)
    assert [l.gate_ids for l in layers] == [(0,), (2,)]


@settings(max_examples=60, deadline=None)
@given(circuits())
def test_layers_respect_dependencies(c):
    layers, crit = slice_layers(c)
    level = {i: l.index for l in layers for i in l.gate_ids}
    preds = dependencies(c)
    for i, ps in enumerate(preds):
        if c.gates[i].is_barrier:
            continue
        for j in ps:
            assert level[j] < level[i]
            assert crit[j] > crit[i]
    for l in layers:
        used = [q for g in l.gates for q in g.qubits]
        assert len(used) == len(set(used))


# ---------------------------------------------------------------- benchmarks

def test_bv_structure():
    c = gen_bv(4)
    assert [str(g) for g in c.gates] == [
        "x 3", "h 0", "h 1", "h 2", "h 3",
        "cnot 0 3", "cnot 1 3", "cnot 2 3",
        "h 0", "h 1", "h 2",
    ]
    assert len(gen_bv(4, "101").two_qubit_gates) == 2
    with pytest.raises(InvalidArgument):
        gen_bv(4, "11")


def test_ising_counts():
    c = gen_ising(4, steps=2)
    assert len(c.gates) == 4 + 2 * (3 * 3 + 4)
    assert len(c.two_qubit_gates) == 12


def test_qaoa_is_seeded():
    a, b, other = gen_qaoa(8, seed=1), gen_qaoa(8, seed=1), gen_qaoa(8, seed=2)
    assert a == b and a != other
    assert len(gen_qaoa(5, edge_prob=1.0).two_qubit_gates) == 2 * 10
    assert gen_qaoa(5, edge_prob=0.0).two_qubit_gates == []


def test_mesh_tiling_partitions_couplers():
    pats = mesh_tiling(4, 4)
    assert [len(p) for p in pats] == [8, 4, 8, 4]
    allc = [c for p in pats for c in p]
    assert sorted(allc) == sorted(build_mesh(4, 4).edges)
    for p in pats:
        qs = [q for c in p for q in c]
        assert len(qs) == len(set(qs))


def test_xeb_structure():
    c = gen_xeb(16, p=4, seed=0)
    assert len(c.gates) == 4 * 16 + 8 + 4 + 8 + 4
    assert all(g.kind == "ISWAP" for g in c.two_qubit_gates)
    assert gen_xeb(9, 3, seed=5) == gen_xeb(9, 3, seed=5)
    with pytest.raises(InvalidArgument):
        gen_xeb(10)


def test_from_spec():
    assert from_spec("bv:5") == gen_bv(5)
    assert from_spec("ising:4:3") == gen_ising(4, 3)
    assert from_spec("qaoa:6:1:0.3:4") == gen_qaoa(6, 1, 0.3, 4)
    assert from_spec("xeb:9:2:1") == gen_xeb(9, 2, 1)
    assert from_spec("xeb:9:2", seed=1) == gen_xeb(9, 2, 1)
    for bad in ("nope:3", "bv", "bv:x", "bv:1"):
        with pytest.raises(InvalidArgument):
            from_spec(bad)


def test_xeb_single_qubit_angles():
    c = gen_xeb(4, 2)
    for g in c.gates:
        if g.kind in ("RX", "RY"):
            assert g.angle == pytest.approx(math.pi / 2)
        elif g.kind == "RZ":
            assert g.angle == pytest.approx(math.pi / 4)
