"""Frequency-aware compilation for crosstalk mitigation on tunable-transmon devices."""

from .circuit import Circuit, Gate, decompose, from_spec, load_circuit, parse_circuit, route
from .crosstalk import CrosstalkGraph, Coloring, gen_crosstalk_graph, greedy_color
from .device import (
    ConnectivityGraph,
    DeviceModel,
    FrequencyPartition,
    build_express_cube,
    build_mesh,
    default_mesh_device,
    load_device_config,
    sample_device,
)
from .estimator import FrequencyAwareScheduler
from .exceptions import XtalkError
from .freqassign import smt_find
from .noise import NoiseParams, evaluate
from .scheduler import CompileOptions, Schedule, compile, validate_schedule

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "Coloring",
    "CompileOptions",
    "ConnectivityGraph",
    "CrosstalkGraph",
    "DeviceModel",
    "FrequencyAwareScheduler",
    "FrequencyPartition",
    "Gate",
    "NoiseParams",
    "Schedule",
    "XtalkError",
    "build_express_cube",
    "build_mesh",
    "compile",
    "decompose",
    "default_mesh_device",
    "evaluate",
    "from_spec",
    "gen_crosstalk_graph",
    "greedy_color",
    "load_circuit",
    "load_device_config",
    "parse_circuit",
    "route",
    "sample_device",
    "smt_find",
    "validate_schedule",
]
