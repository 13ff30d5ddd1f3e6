"""Quantitative resilience: lambda+/- LPs, closed forms r(C), r(-C), verdicts.

For a single lost column C with box [w_min, w_max], the closed form is

    lam+ = max{lam : B v = +lam C, v in U_c}
    lam- = max{lam : B v = -lam C, v in U_c}
    r(C)  = (w_min + lam+) / (w_max + lam+)
    r(-C) = (w_max - lam-) / (w_min - lam-)

and the system is resilient to that loss iff it is controllable and both
values lie in (0, 1]; then r_q = min(r(C), r(-C)) and r_{k,q} = r_q^(1/k).
The reach-time route (four reach times along +/-C) is kept as an independent
cross-check: both verdicts must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import lp, reach
from .errors import UnsupportedLossError
from .model import ActuatorSplit, IntegratorSystem, split as make_split

#: Singular values below this fraction of the largest count as zero for rank.
RANK_RTOL = 1e-10

#: Relative margin for the interior-membership tests of Prop-style diagnostics.
INTERIOR_MARGIN = 1e-7


@dataclass(frozen=True)
class ResilienceReport:
    """Per-lost-column resilience record."""

    lost_column: int
    order: int
    lambda_plus: float
    lambda_minus: float
    r_plus: float
    r_minus: float
    r_q: float
    r_kq: float
    controllable: bool
    resilient: bool
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def ext(x: float) -> "float | str":
            return "inf" if math.isinf(x) else float(x)

        return {
            "lost_column": self.lost_column,
            "order": self.order,
            "lambda_plus": ext(self.lambda_plus),
            "lambda_minus": ext(self.lambda_minus),
            "r_plus": float(self.r_plus),
            "r_minus": float(self.r_minus),
            "r_q": float(self.r_q),
            "r_kq": float(self.r_kq),
            "controllable": self.controllable,
            "resilient": self.resilient,
            "diagnostics": dict(self.diagnostics),
        }


@dataclass(frozen=True)
class ReachTimeVerdict:
    """Resilience decided through the four reach times along +/-C."""

    t_n_plus: float
    t_m_plus: float
    t_n_minus: float
    t_m_minus: float
    resilient: bool

    @property
    def min_ratio(self) -> float:
        """min over +/-C of T_N*/T_M* (equals r_q when resilient)."""
        ratios = []
        for tn, tm in ((self.t_n_plus, self.t_m_plus), (self.t_n_minus, self.t_m_minus)):
            if math.isinf(tm):
                ratios.append(0.0)
            elif tm == 0.0:
                ratios.append(1.0)
            else:
                ratios.append(tn / tm)
        return min(ratios)


def check_controllability(sys: IntegratorSystem) -> bool:
    """rank(B_bar) = n and 0 interior to the image polytope {B_bar u : u in box}.

    Interiority is established by 2n directional LPs: the image must extend a
    positive distance along +e_j and -e_j for every basis direction.
    """
    sv = np.linalg.svd(sys.b_bar, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return False
    if np.sum(sv > RANK_RTOL * sv[0]) < sys.n:
        return False
    for j in range(sys.n):
        for sign in (1.0, -1.0):
            e = np.zeros(sys.n)
            e[j] = sign
            out = lp.max_scaled_direction(sys.b_bar, sys.u_min, sys.u_max, e)
            if out.status not in (lp.OPTIMAL, lp.UNBOUNDED):
                return False
    return True


def _single_column(split: ActuatorSplit) -> np.ndarray:
    if split.p != 1:
        raise UnsupportedLossError(
            f"this operation covers a single lost column; got p={split.p}"
        )
    return split.c[:, 0]


def lambda_pair(split: ActuatorSplit) -> tuple[float, float]:
    """(lam+, lam-): max speeds of the remaining actuators along +/-C."""
    c = _single_column(split)
    if not np.any(c):
        raise UnsupportedLossError("C = 0 has no lambda pair; see quantitative_resilience")
    out = []
    for sgn in (1.0, -1.0):
        scaling = lp.max_scaled_direction(split.b, split.u_min, split.u_max, sgn * c)
        if scaling.status == lp.UNBOUNDED:
            out.append(math.inf)
        elif scaling.status == lp.OPTIMAL:
            out.append(scaling.value)
        else:
            out.append(0.0)
    return out[0], out[1]


def r_pair(split: ActuatorSplit) -> tuple[float, float]:
    """Closed-form (r(C), r(-C)) for a single nonzero lost column.

    An unbounded lambda (B has a kernel direction aligned with C) sends both
    quotients to their limit 1; a vanishing denominator is reported as r = 0.
    """
    _single_column(split)
    lam_p, lam_m = lambda_pair(split)
    w_min = float(split.w_min[0])
    w_max = float(split.w_max[0])

    def quotient(num: float, den: float) -> float:
        if abs(den) <= 1e-12 * max(1.0, abs(num)):
            return 0.0
        return num / den

    r_p = 1.0 if math.isinf(lam_p) else quotient(w_min + lam_p, w_max + lam_p)
    r_m = 1.0 if math.isinf(lam_m) else quotient(w_max - lam_m, w_min - lam_m)
    return r_p, r_m


def quantitative_resilience(
    split: ActuatorSplit, order: int | None = None
) -> ResilienceReport:
    """Full single-loss resilience report for a split (Algorithm-1 style)."""
    k = split.base.order if order is None else int(order)
    if split.p != 1:
        raise UnsupportedLossError(
            f"quantitative resilience covers a single lost column; got p={split.p}"
        )
    col = split.lost_columns[0]
    c = split.c[:, 0]
    controllable = check_controllability(split.base)
    diagnostics: dict = {}

    if not controllable:
        diagnostics["note"] = "system not controllable; not resilient to any loss"
        return ResilienceReport(col, k, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, False, False, diagnostics)

    if not np.any(c):
        # Losing a zero column costs nothing: the malfunctioning system equals
        # the nominal one for every w.
        diagnostics["zero_column"] = True
        return ResilienceReport(col, k, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, True, True, diagnostics)

    lam_p, lam_m = lambda_pair(split)
    r_p, r_m = r_pair(split)
    if math.isinf(lam_p) or math.isinf(lam_m):
        diagnostics["unbounded_lambda"] = True

    threshold = lp.lambda_threshold(c)
    in_unit = lambda r: threshold < r <= 1.0 + threshold  # noqa: E731
    resilient = in_unit(r_p) and in_unit(r_m)
    for name, r in (("r_plus", r_p), ("r_minus", r_m)):
        if -threshold < r <= threshold:
            diagnostics[f"{name}_boundary"] = True
    r_q = min(r_p, r_m) if resilient else 0.0
    r_q = min(r_q, 1.0)
    r_kq = r_q ** (1.0 / k)
    return ResilienceReport(
        col, k, lam_p, lam_m, r_p, r_m, r_q, r_kq, True, resilient, diagnostics
    )


def resilience_via_reach_times(split: ActuatorSplit) -> ReachTimeVerdict:
    """Independent verdict from four order-1 reach times along +/-C (cross-check)."""
    c = _single_column(split)
    if not np.any(c):
        raise UnsupportedLossError("C = 0: use quantitative_resilience for the zero-column path")
    base1 = split.base.with_order(1)
    split1 = make_split(base1, split.lost_columns)
    t_n_p = reach.nominal_reach_time(base1, c).time
    t_m_p = reach.malfunctioning_reach_time(split1, c).time
    t_n_m = reach.nominal_reach_time(base1, -c).time
    t_m_m = reach.malfunctioning_reach_time(split1, -c).time
    resilient = (
        check_controllability(split.base)
        and math.isfinite(t_m_p)
        and math.isfinite(t_m_m)
    )
    return ReachTimeVerdict(t_n_p, t_m_p, t_n_m, t_m_m, resilient)


def polytope_containment_check(split: ActuatorSplit) -> bool:
    """Diagnostic: -X subset of the interior of Y, X = C W_c, Y = B U_c.

    Tested per vertex x of X with 2n feasibility LPs: -x + eps*(+/-e_j) must be
    reachable in Y for a positive margin eps.  Resilience implies this holds;
    the converse is not asserted.
    """
    b = split.b
    n = split.base.n
    scale = float(
        np.abs(b).max(initial=0.0)
        * max(np.abs(split.u_min).max(initial=0.0), np.abs(split.u_max).max(initial=0.0), 1.0)
    )
    eps = INTERIOR_MARGIN * max(scale, 1.0)
    obj = np.zeros(split.m)
    for w in reach.w_vertices(split):
        x = split.c @ w
        for j in range(n):
            for sign in (1.0, -1.0):
                target = -x
                target = target.copy()
                target[j] += sign * eps
                out = lp.solve(
                    lp.LpProblem(
                        objective=obj,
                        eq_matrix=b,
                        eq_rhs=target,
                        lower=split.u_min,
                        upper=split.u_max,
                    )
                )
                if out.status != lp.OPTIMAL:
                    return False
    return True
