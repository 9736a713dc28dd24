"""Colour-to-frequency assignment with maximal pairwise separation.

Given ``n`` colours, find frequencies in ``[lo, hi]`` maximising ``delta``
subject to, for every pair of distinct colours,

    |w_i - w_j| >= delta   and   |w_i + alpha - w_j| >= delta.

The feasibility test is exact.  Sort the frequencies ``y_0 < ... < y_{n-1}``
and write ``a = |alpha|``; each pairwise gap ``D`` must lie in
``[delta, a - delta]`` ("near") or ``[a + delta, inf)`` ("far").  Gaps grow
with index distance, so for each ``i`` the near partners form a prefix
``i+1..c_i`` with ``c_i`` non-decreasing in ``i``.  Every choice of cut-offs
is a system of difference constraints, which is satisfiable iff its
constraint graph has no positive cycle.  A depth-first search over the
cut-offs with incremental longest-path closure decides it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InvalidArgument

DEFAULT_TOLERANCE = 1e-3  # GHz
_EPS = 1e-12


@dataclass(frozen=True)
class FrequencyAssignment:
    omega_of_color: dict
    delta: float
    region: tuple

    def frequencies(self):
        return [self.omega_of_color[c] for c in sorted(self.omega_of_color)]


class _Closure:
    """Longest-path closure ``L[i, j]`` = tightest known lower bound on ``y_j - y_i``."""

    def __init__(self, n):
        self.L = np.full((n, n), -np.inf)
        np.fill_diagonal(self.L, 0.0)

    def copy(self):
        c = _Closure.__new__(_Closure)
        c.L = self.L.copy()
        return c

    def add(self, p, q, w):
        """Impose ``y_q - y_p >= w``; False if that creates a positive cycle."""
        L = self.L
        if L[p, q] >= w:
            return True
        cand = L[:, p][:, None] + w + L[q, :][None, :]
        np.maximum(L, cand, out=L)
        return not (np.diag(L) > _EPS).any()


def feasible(n_colors, delta, alpha, omega_lo, omega_hi):
    """Frequencies for ``n_colors`` colours at separation ``delta``, or None.

    The returned list is ascending and starts at ``omega_lo``.
    """
    if n_colors < 1:
        raise InvalidArgument("n_colors must be >= 1")
    if omega_lo > omega_hi:
        raise InvalidArgument("empty frequency range")
    if delta < 0:
        raise InvalidArgument("delta must be non-negative")
    width = omega_hi - omega_lo
    if n_colors == 1:
        return [omega_lo]
    if delta == 0:
        return list(np.linspace(omega_lo, omega_hi, n_colors))
    if (n_colors - 1) * delta > width + _EPS:
        return None
    y = _search(n_colors, delta, abs(alpha), width)
    if y is None:
        return None
    return [omega_lo + v for v in y]


def _search(n, delta, a, width):
    base = _Closure(n)
    for i in range(n - 1):
        if not base.add(i, i + 1, delta):
            return None
    if not base.add(n - 1, 0, -width):
        return None
    near_ok = 2 * delta <= a + _EPS

    def dfs(i, floor, cl):
        if i == n - 1:
            return [float(v) for v in cl.L[0, :]]
        hi_cut = n - 1 if near_ok else i
        for cut in range(max(floor, i), hi_cut + 1):
            nxt = cl.copy()
            ok = True
            if cut > i:
                ok = nxt.add(cut, i, -(a - delta))
            if ok and cut < n - 1:
                ok = nxt.add(i, cut + 1, a + delta)
            if ok:
                found = dfs(i + 1, cut, nxt)
                if found is not None:
                    return found
        return None

    return dfs(0, 0, base)


@lru_cache(maxsize=4096)
def _solve(n, alpha, lo, hi, tol):
    width = hi - lo
    if n <= 1:
        return width, (hi,) * n
    best = feasible(n, width, alpha, lo, hi)
    if best is not None:
        d_lo = width
    else:
        d_lo, d_hi = 0.0, width
        best = feasible(n, 0.0, alpha, lo, hi)
        while d_hi - d_lo > tol:
            mid = 0.5 * (d_lo + d_hi)
            sol = feasible(n, mid, alpha, lo, hi)
            if sol is None:
                d_hi = mid
            else:
                d_lo, best = mid, sol
    # slide the solution up so the highest frequency sits at the region top
    shift = hi - best[-1]
    return d_lo, tuple(v + shift for v in best)


def color_order(coloring):
    """Colours by decreasing multiplicity, ties by ascending colour id."""
    return sorted(range(coloring.n_colors), key=lambda c: (-coloring.multiplicity.get(c, 0), c))


def smt_find(coloring, alpha, region, tolerance=DEFAULT_TOLERANCE):
    """Binary-search the largest feasible separation and map colours to frequencies.

    More frequently used colours receive higher frequencies.
    """
    lo, hi = float(region[0]), float(region[1])
    if lo > hi:
        raise InvalidArgument("empty frequency region")
    n = coloring.n_colors
    if n == 0:
        return FrequencyAssignment({}, hi - lo, (lo, hi))
    delta, freqs = _solve(n, float(alpha), lo, hi, float(tolerance))
    order = color_order(coloring)
    omega = {c: freqs[len(freqs) - 1 - rank] for rank, c in enumerate(order)}
    return FrequencyAssignment(omega, delta, (lo, hi))


def assign_idle(conn_coloring, partition, alpha, tolerance=DEFAULT_TOLERANCE):
    """Parking frequencies per connectivity colour, maximally separated."""
    return smt_find(conn_coloring, alpha, partition.parking, tolerance)


def check_assignment(fa, alpha, multiplicity=None, slack=1e-9):
    """List of human-readable violations of the assignment invariants."""
    problems = []
    lo, hi = fa.region
    items = sorted(fa.omega_of_color.items())
    for c, w in items:
        if not lo - slack <= w <= hi + slack:
            problems.append(f"colour {c} at {w} outside [{lo}, {hi}]")
    for i, (ci, wi) in enumerate(items):
        for cj, wj in items[i + 1 :]:
            gaps = (abs(wi - wj), abs(wi + alpha - wj), abs(wj + alpha - wi))
            if min(gaps) < fa.delta - slack:
                problems.append(f"colours {ci},{cj} closer than delta={fa.delta}")
    if multiplicity is not None:
        for ci, wi in items:
            for cj, wj in items:
                if multiplicity.get(ci, 0) > multiplicity.get(cj, 0) and wi < wj - slack:
                    problems.append(f"colour {ci} used more often than {cj} but sits lower")
    return problems
