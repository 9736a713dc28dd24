"""Route, decompose, compile, validate and evaluate one circuit."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass

from .circuit import decompose, route
from .exceptions import StageError
from .noise import Metrics, NoiseParams, evaluate
from .scheduler import CompileOptions, Schedule, compile, validate_schedule

STAGES = ("route", "decompose", "compile", "validate", "evaluate")


@contextmanager
def stage(name):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


@dataclass
class RunResult:
    schedule: Schedule
    metrics: Metrics
    compile_ms: float


def prepare(circuit, device, decomposition="hybrid"):
    """Map ``circuit`` onto ``device`` and rewrite it into native gates."""
    with stage("route"):
        routed = route(circuit, device.graph)
    with stage("decompose"):
        return decompose(routed, decomposition)


def run(strategy, device, native, opts=None, params=None, check=True):
    """Compile an already prepared circuit and score it."""
    opts = opts or CompileOptions()
    with stage("compile"):
        t0 = time.perf_counter()
        sched = compile(strategy, device, native, opts)
        compile_ms = (time.perf_counter() - t0) * 1e3
    if check:
        with stage("validate"):
            report = validate_schedule(sched, device, native)
            if not report.ok:
                raise ValueError("; ".join(report.violations[:5]))
    with stage("evaluate"):
        params = params or NoiseParams.from_device(device)
        metrics = evaluate(sched, device, params)
    metrics.compile_ms = compile_ms
    return RunResult(sched, metrics, compile_ms)
