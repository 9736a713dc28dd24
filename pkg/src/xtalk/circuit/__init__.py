from .benchmarks import from_spec, gen_bv, gen_ising, gen_qaoa, gen_xeb, mesh_tiling
from .decompose import decompose
from .ir import Circuit, Gate, Layer
from .route import route
from .slicing import dependencies, slice_layers
from .textio import load_circuit, parse_circuit, serialize_circuit

__all__ = [
    "Circuit",
    "Gate",
    "Layer",
    "decompose",
    "dependencies",
    "from_spec",
    "gen_bv",
    "gen_ising",
    "gen_qaoa",
    "gen_xeb",
    "load_circuit",
    "mesh_tiling",
    "parse_circuit",
    "route",
    "serialize_circuit",
    "slice_layers",
]
