"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

import math
import os

from .circuit import Circuit, from_spec, load_circuit
from .device import DeviceModel, default_mesh_device, load_device_config
from .exceptions import InvalidArgument


def check_device(device):
    """Return ``device`` as a :class:`DeviceModel`; a path is loaded as a config file."""
    if isinstance(device, DeviceModel):
        return device
    if isinstance(device, (str, os.PathLike)):
        return load_device_config(device)
    raise InvalidArgument(f"expected a DeviceModel or a config path, got {type(device).__name__}")


def check_circuit(circuit, seed=0):
    """Return a :class:`Circuit` from a circuit, a file path or a generator spec."""
    if isinstance(circuit, Circuit):
        return circuit
    if isinstance(circuit, os.PathLike) or (isinstance(circuit, str) and os.path.isfile(circuit)):
        return load_circuit(circuit)
    if isinstance(circuit, str):
        return from_spec(circuit, seed=seed)
    raise InvalidArgument(f"expected a Circuit, a path or a generator spec, got {type(circuit).__name__}")


def check_circuits(circuits, seed=0):
    if isinstance(circuits, (Circuit, str, os.PathLike)):
        circuits = [circuits]
    out = [check_circuit(c, seed) for c in circuits]
    if not out:
        raise InvalidArgument("no circuits given")
    return out


def check_positive_int(value, name, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidArgument(f"{name} must be a positive integer, got {value!r}")
    return value


def device_for(circuit, seed=0):
    """Smallest square mesh with default parameters that fits ``circuit``."""
    side = max(2, math.isqrt(circuit.n_qubits - 1) + 1) if circuit.n_qubits > 1 else 2
    return default_mesh_device(side * side, seed=seed)
