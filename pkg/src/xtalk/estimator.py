"""Scikit-learn style front end: ``fit`` a device, ``transform`` circuits."""

from __future__ import annotations

import math

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .circuit.decompose import normalize_decomposition
from .crosstalk import gen_crosstalk_graph
from .exceptions import InvalidArgument
from .noise import CROSSTALK_MODES, NoiseParams, evaluate
from .pipeline import prepare
from .scheduler import CompileOptions, _context, compile, normalize_strategy
from .validation import check_circuits, check_device, check_positive_int


class FrequencyAwareScheduler(BaseEstimator):
    """Compile circuits into frequency-annotated schedules for one device.

    Parameters
    ----------
    strategy : {"ColorDynamic", "N", "U", "S", "G"}
    distance : int
        Crosstalk distance of the crosstalk graph.
    max_colors : int or None
        Cap on interaction colours per cycle (ColorDynamic only).
    conflict_threshold : int
        In-flight crosstalk neighbours that postpone a gate.
    tolerance : float
        Binary-search tolerance of the frequency solver, GHz.
    decomposition : {"hybrid", "cz_only", "iswap_only"}
    crosstalk_mode : {"transition", "literal"}

    Attributes
    ----------
    device_ : DeviceModel
    options_ : CompileOptions
    noise_params_ : NoiseParams
    crosstalk_graph_ : CrosstalkGraph
    idle_frequencies_ : tuple of float
        Parking frequency of every qubit.
    """

    def __init__(
        self,
        strategy="ColorDynamic",
        distance=1,
        max_colors=None,
        conflict_threshold=3,
        tolerance=1e-3,
        decomposition="hybrid",
        crosstalk_mode="transition",
    ):
        self.strategy = strategy
        self.distance = distance
        self.max_colors = max_colors
        self.conflict_threshold = conflict_threshold
        self.tolerance = tolerance
        self.decomposition = decomposition
        self.crosstalk_mode = crosstalk_mode

    def _validate_params(self):
        strategy = normalize_strategy(self.strategy)
        check_positive_int(self.distance, "distance")
        check_positive_int(self.max_colors, "max_colors", allow_none=True)
        check_positive_int(self.conflict_threshold, "conflict_threshold")
        if not self.tolerance > 0:
            raise InvalidArgument("tolerance must be positive")
        normalize_decomposition(self.decomposition)
        if self.crosstalk_mode not in CROSSTALK_MODES:
            raise InvalidArgument(f"crosstalk_mode must be one of {CROSSTALK_MODES}")
        return strategy

    def fit(self, device, y=None):
        """Precompute the crosstalk graph and parking frequencies of ``device``."""
        self.strategy_ = self._validate_params()
        self.device_ = check_device(device)
        self.options_ = CompileOptions(
            distance=self.distance,
            max_colors=self.max_colors,
            conflict_threshold=self.conflict_threshold,
            tolerance=self.tolerance,
        )
        self.noise_params_ = NoiseParams.from_device(self.device_, self.crosstalk_mode)
        self.crosstalk_graph_ = gen_crosstalk_graph(self.device_.graph, self.distance)
        self.idle_frequencies_ = _context(self.device_, self.distance, self.tolerance).idle_freq
        return self

    def transform(self, circuits):
        """List of schedules, one per circuit (circuit objects, paths or specs)."""
        check_is_fitted(self, "device_")
        out = []
        for c in check_circuits(circuits):
            native = prepare(c, self.device_, self.decomposition)
            out.append(compile(self.strategy_, self.device_, native, self.options_))
        return out

    def fit_transform(self, device, circuits):
        return self.fit(device).transform(circuits)

    def evaluate(self, circuits):
        """Noise-model metrics of each compiled circuit."""
        return [evaluate(s, self.device_, self.noise_params_) for s in self.transform(circuits)]

    def score(self, circuits, y=None):
        """Geometric-mean estimated success over ``circuits`` (0 if any is 0)."""
        succ = [m.success for m in self.evaluate(circuits)]
        if min(succ) <= 0.0:
            return 0.0
        return math.exp(sum(math.log(p) for p in succ) / len(succ))
