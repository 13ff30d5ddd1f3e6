"""Brute-force oracles: independent numerical checks of the structural theorems.

These are falsifiers, not estimators: each scan hammers one closed-form claim
(vertex optimality of the worst undesirable input, the worst direction being
collinear with +/-C, positive homogeneity of reach times) with exhaustive or
quasi-random sampling and reports the worst observed violation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import reach
from .errors import CapacityError, LpError, UnsupportedLossError
from .model import ActuatorSplit, IntegratorSystem
from .resilience import quantitative_resilience

#: Relative violations at or below this are attributed to LP tolerance and clamped.
VIOLATION_CLAMP = 1e-9

#: Hard cap on the number of grid points in grid_worst_w.
GRID_CAP = 1_000_000


@dataclass(frozen=True)
class ScanReport:
    """Worst value found by a scan versus the closed-form theory value."""

    worst_value: float
    worst_argument: np.ndarray
    theory_value: float
    max_violation: float

    def to_dict(self) -> dict:
        def ext(x: float) -> "float | str":
            return "inf" if math.isinf(x) else float(x)

        return {
            "worst_value": ext(self.worst_value),
            "worst_argument": [float(v) for v in np.atleast_1d(self.worst_argument)],
            "theory_value": ext(self.theory_value),
            "max_violation": float(self.max_violation),
        }


def _relative_excess(found: float, theory: float) -> float:
    """Clamped relative amount by which a scan exceeded the theory value."""
    if math.isinf(found) and math.isinf(theory):
        return 0.0
    if math.isinf(found):
        return math.inf
    excess = (found - theory) / max(1.0, abs(theory))
    return 0.0 if excess <= VIOLATION_CLAMP else excess


def grid_worst_w(
    split: ActuatorSplit, d: np.ndarray, points_per_axis: int
) -> ScanReport:
    """Scan a uniform grid over W_c for a w worse than the vertex-enumeration T_M*."""
    d = np.atleast_1d(np.asarray(d, dtype=float))
    if not np.any(d):
        raise LpError("direction d must be nonzero")
    if points_per_axis < 2:
        raise CapacityError("points_per_axis must be >= 2 (vertices must be included)")
    if points_per_axis**split.p > GRID_CAP:
        raise CapacityError(
            f"grid of {points_per_axis}^{split.p} points exceeds the cap of {GRID_CAP}"
        )
    theory = reach.malfunctioning_reach_time(split, d).time
    axes = [
        np.linspace(lo, hi, points_per_axis)
        for lo, hi in zip(split.w_min, split.w_max)
    ]
    worst = -math.inf
    worst_w = None
    for w_tuple in itertools.product(*axes):
        w = np.array(w_tuple)
        t = reach.malfunction_time_for_w(split, w, d)
        if t > worst:
            worst = t
            worst_w = w
    return ScanReport(
        worst_value=worst,
        worst_argument=worst_w,
        theory_value=theory,
        max_violation=_relative_excess(worst, theory),
    )


def _unit_directions(n: int, samples: int, seed: int) -> np.ndarray:
    """Deterministic low-discrepancy unit directions.

    A Kronecker (R_d) sequence on the unit cube, pushed through Box-Muller to
    Gaussian coordinates and normalized; the seed offsets the sequence.
    """
    if samples <= 0:
        return np.empty((0, n))
    pairs = max(1, (n + 1) // 2)
    dim = 2 * pairs
    # Root of x^(dim+1) = x + 1 gives the R_d irrational basis.
    phi = 2.0
    for _ in range(60):
        phi = (1.0 + phi) ** (1.0 / (dim + 1))
    alpha = np.array([phi ** -(j + 1) for j in range(dim)])
    idx = np.arange(1, samples + 1)[:, None]
    u = np.mod(0.5 + (seed % 100_000) * alpha + idx * alpha, 1.0)
    u1 = np.clip(u[:, 0::2], 1e-12, 1.0)
    u2 = u[:, 1::2]
    radius = np.sqrt(-2.0 * np.log(u1))
    normals = np.empty((samples, dim))
    normals[:, 0::2] = radius * np.cos(2.0 * math.pi * u2)
    normals[:, 1::2] = radius * np.sin(2.0 * math.pi * u2)
    vec = normals[:, :n]
    norms = np.linalg.norm(vec, axis=1)
    norms[norms == 0.0] = 1.0
    return vec / norms[:, None]


def direction_scan(split: ActuatorSplit, samples: int, seed: int) -> ScanReport:
    """Scan unit directions for a time ratio above max(t(C), t(-C)).

    Only meaningful on resilient single-loss splits (off the resilient set the
    ratio is unbounded and the theorem says nothing).
    """
    if split.p != 1:
        raise UnsupportedLossError("direction_scan requires a single lost column")
    c = split.c[:, 0]
    if not np.any(c):
        raise UnsupportedLossError("direction_scan requires a nonzero lost column")
    report = quantitative_resilience(split)
    if not report.resilient:
        raise UnsupportedLossError(
            "direction_scan requires a resilient split (ratio is unbounded otherwise)"
        )
    c_unit = c / np.linalg.norm(c)
    t_plus = reach.time_ratio(split, c_unit)
    t_minus = reach.time_ratio(split, -c_unit)
    theory = max(t_plus, t_minus)

    worst = theory
    worst_d = c_unit if t_plus >= t_minus else -c_unit
    for d in _unit_directions(split.base.n, samples, seed):
        t = reach.time_ratio(split, d)
        if t > worst:
            worst = t
            worst_d = d
    return ScanReport(
        worst_value=worst,
        worst_argument=worst_d,
        theory_value=theory,
        max_violation=_relative_excess(worst, theory),
    )


def homogeneity_probe(
    obj: "IntegratorSystem | ActuatorSplit",
    d: np.ndarray,
    scales: "list[float] | tuple[float, ...]",
) -> float:
    """Max relative error of T*(alpha d) versus alpha T*(d) over the scales.

    Checks T_N* always, and T_M* additionally when given a split.  Infinite
    times are skipped (homogeneity is trivial there).
    """
    d = np.atleast_1d(np.asarray(d, dtype=float))
    if not np.any(d):
        raise LpError("direction d must be nonzero")
    scales = [float(a) for a in scales]
    if any(a <= 0.0 for a in scales):
        raise LpError("scales must be positive")

    # Homogeneity in d is an order-1 statement; evaluate there regardless of
    # the system's declared order.
    evaluators = []
    if isinstance(obj, ActuatorSplit):
        evaluators.append(lambda dd: reach.nominal_reach_time(obj.base, dd, order=1).time)
        evaluators.append(lambda dd: reach.malfunctioning_reach_time(obj, dd, order=1).time)
    else:
        evaluators.append(lambda dd: reach.nominal_reach_time(obj, dd, order=1).time)

    err = 0.0
    for evaluate in evaluators:
        base = evaluate(d)
        if not math.isfinite(base) or base == 0.0:
            continue
        for a in scales:
            scaled = evaluate(a * d)
            err = max(err, abs(scaled - a * base) / (a * base))
    return err
