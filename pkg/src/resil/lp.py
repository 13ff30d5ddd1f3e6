"""Dense linear-program kernel: maximize c.x subject to A x = b, l <= x <= u.

This is the single numeric engine behind every reach-time and lambda+/-
computation.  The problems are tiny (at most ~15 variables, ~6 equality rows)
but are solved in very large numbers by the brute-force oracles, so the solver
is a hand-rolled two-phase bounded-variable simplex rather than a call into a
general-purpose package: one solve costs a few tens of microseconds and is
bitwise deterministic (Bland's anti-cycling rule, no randomized or
tie-breaking-by-magnitude pivoting).

Statuses follow the usual trichotomy: OPTIMAL / INFEASIBLE / UNBOUNDED.  A
well-posed instance of the sizes used here is always resolved; the solver has
no "numerical failure" escape hatch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

#: Relative feasibility tolerance for LpOutcome invariants.
FEAS_TOL = 1e-9

# Internal pivot tolerances.  These are on dimensionless quantities (reduced
# costs after scaling, basis-direction entries), not on raw matrix entries.
_RCOST_TOL = 1e-10
_PIVOT_TOL = 1e-11
_MAX_ITER = 10_000


@dataclass(frozen=True)
class LpProblem:
    """maximize objective . x  s.t.  eq_matrix @ x = eq_rhs,  lower <= x <= upper."""

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        c = np.atleast_1d(np.asarray(self.objective, dtype=float))
        a = np.atleast_2d(np.asarray(self.eq_matrix, dtype=float))
        b = np.atleast_1d(np.asarray(self.eq_rhs, dtype=float))
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        q, v = a.shape
        if c.shape != (v,) or b.shape != (q,) or lo.shape != (v,) or hi.shape != (v,):
            raise LpError(
                f"inconsistent dimensions: A is {q}x{v}, c {c.shape}, "
                f"b {b.shape}, lower {lo.shape}, upper {hi.shape}"
            )
        if np.any(lo > hi):
            raise LpError("lower bound exceeds upper bound")
        for arr, what in ((c, "objective"), (a, "eq_matrix"), (b, "eq_rhs")):
            if not np.all(np.isfinite(arr)):
                raise LpError(f"{what} contains non-finite entries")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise LpError("bounds contain NaN")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_matrix", a)
        object.__setattr__(self, "eq_rhs", b)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: float | None = None
    argument: np.ndarray | None = None


def _initial_point(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Start each variable on a finite bound (lower preferred), or 0 if free."""
    x = np.where(np.isfinite(lo), lo, np.where(np.isfinite(hi), hi, 0.0))
    return x.astype(float)


def _simplex(
    a: np.ndarray,
    c: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    x: np.ndarray,
    basis: np.ndarray,
    binv: np.ndarray,
) -> str:
    """Bounded-variable revised simplex (maximization), mutating x, basis, binv.

    Assumes x is basic-feasible for the current basis and binv is the inverse
    of the basis matrix.  Returns "optimal" or "unbounded".  Entering/leaving
    choices use Bland's rule (smallest variable index), which guarantees
    termination without cycling.
    """
    q, v = a.shape
    in_basis = np.zeros(v, dtype=bool)
    in_basis[basis] = True
    movable = ~(lo == hi)

    for _ in range(_MAX_ITER):
        y = c[basis] @ binv
        rcost = c - y @ a

        # Entering variable: smallest index whose reduced cost allows
        # improvement in a direction with room to move (Bland's rule).
        eligible = (~in_basis) & movable & (
            ((rcost > _RCOST_TOL) & (x < hi)) | ((rcost < -_RCOST_TOL) & (x > lo))
        )
        if not eligible.any():
            return OPTIMAL
        e = int(np.argmax(eligible))
        s = 1.0 if rcost[e] > 0.0 else -1.0

        # Basic-variable response to a unit move of x[e] in direction s.
        w = binv @ a[:, e]
        delta_b = -s * w

        # Ratio test: own-bound limit first, then blocking basic variables.
        step = hi[e] - x[e] if s > 0 else x[e] - lo[e]
        leave_pos = -1
        leave_var = v  # sentinel larger than any index, for Bland tie-breaks
        for i in range(q):
            di = delta_b[i]
            bi = basis[i]
            if di > _PIVOT_TOL:
                room = (hi[bi] - x[bi]) / di
            elif di < -_PIVOT_TOL:
                room = (x[bi] - lo[bi]) / (-di)
            else:
                continue
            if room == np.inf:
                continue
            if room < 0.0:
                room = 0.0
            if room < step - 1e-15 or (room <= step + 1e-15 and bi < leave_var):
                step = room
                leave_pos = i
                leave_var = bi

        if not np.isfinite(step):
            return UNBOUNDED

        x[e] += s * step
        x[basis] += delta_b * step
        if leave_pos >= 0:
            bl = basis[leave_pos]
            # Snap the leaving variable exactly onto the bound it hit.
            x[bl] = hi[bl] if delta_b[leave_pos] > 0 else lo[bl]
            basis[leave_pos] = e
            in_basis[bl] = False
            in_basis[e] = True
            # Rank-one update of the basis inverse; refactorize on small pivots.
            piv = w[leave_pos]
            if abs(piv) < 1e-7:
                try:
                    binv[:] = np.linalg.inv(a[:, basis])
                except np.linalg.LinAlgError as exc:  # pragma: no cover
                    raise LpError("singular basis encountered") from exc
            else:
                row = binv[leave_pos] / piv
                binv -= np.outer(w, row)
                binv[leave_pos] = row
        else:
            # The entering variable hit its own opposite bound; basis unchanged.
            x[e] = hi[e] if s > 0 else lo[e]

    raise LpError("simplex iteration limit exceeded")


def solve(problem: LpProblem) -> LpOutcome:
    """Solve a bounded-variable equality-constrained LP (maximization)."""
    a = problem.eq_matrix
    b = problem.eq_rhs
    c = problem.objective
    lo = problem.lower
    hi = problem.upper
    q, v = a.shape

    # Scale rows so that the artificial-variable columns and feasibility
    # tolerances are commensurate across constraints of very different
    # magnitudes (the spacecraft matrix mixes 1e-6 and 1e-2 entries).
    row_scale = np.maximum(np.abs(a).max(axis=1), np.abs(b))
    row_scale[row_scale == 0.0] = 1.0
    a = a / row_scale[:, None]
    b = b / row_scale

    x0 = _initial_point(lo, hi)
    resid = b - a @ x0

    # Phase 1: one artificial variable per row, signed so it starts feasible at
    # |residual| with bound [0, inf); maximize minus their sum.
    sign = np.where(resid >= 0.0, 1.0, -1.0)
    a1 = np.hstack([a, np.diag(sign)])
    lo1 = np.concatenate([lo, np.zeros(q)])
    hi1 = np.concatenate([hi, np.full(q, np.inf)])
    x1 = np.concatenate([x0, np.abs(resid)])
    c1 = np.concatenate([np.zeros(v), -np.ones(q)])
    basis = np.arange(v, v + q)
    binv = np.diag(sign)  # inverse of the initial artificial basis

    _simplex(a1, c1, lo1, hi1, x1, basis, binv)
    b_scale = 1.0 + np.abs(b).max(initial=0.0)
    if x1[v:].sum() > FEAS_TOL * b_scale * q:
        return LpOutcome(status=INFEASIBLE)

    # Phase 2: freeze artificials at zero, optimize the real objective.
    x1[v:] = 0.0
    hi1[v:] = 0.0
    c2 = np.concatenate([c, np.zeros(q)])
    status = _simplex(a1, c2, lo1, hi1, x1, basis, binv)
    if status == UNBOUNDED:
        return LpOutcome(status=UNBOUNDED)

    arg = x1[:v].copy()
    np.clip(arg, lo, hi, out=arg)
    return LpOutcome(status=OPTIMAL, value=float(c @ arg), argument=arg)


# --------------------------------------------------------------------------
# Directional scaling problem:  max { lam >= 0 : M x = lam d, x in box }.
# This hosts the lam = 1/T transformation behind every reach-time quantity.
# --------------------------------------------------------------------------

#: Status for "only lam = 0 is feasible" (the direction is on the image boundary).
ZERO = "zero"
#: Status for "no x in the box with M x on the nonnegative ray of d at all".
NEGATIVE_CERTIFICATE = "negative-certificate"


@dataclass(frozen=True)
class DirectionScaling:
    """Outcome of max_scaled_direction.

    status is one of "optimal" (lam > threshold attained), "zero",
    "negative-certificate", or "unbounded" (lam can grow without bound, i.e.
    reach time 0).  value is lam* for "optimal"/"zero", +inf for "unbounded",
    and None for "negative-certificate".  argument is the maximizing x when
    one exists.
    """

    status: str
    value: float | None = None
    argument: np.ndarray | None = None


def lambda_threshold(d: np.ndarray) -> float:
    """Strict positivity threshold for lam decisions, scaled by the direction."""
    return 1e-9 * (1.0 + float(np.linalg.norm(d)))


def max_scaled_direction(
    m: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    d: np.ndarray,
    rhs_shift: np.ndarray | None = None,
) -> DirectionScaling:
    """Maximize lam >= 0 subject to M x = lam d + rhs_shift with x in the box.

    rhs_shift defaults to zero; reach-time callers use it to fold the frozen
    adversarial term -C w into the right-hand side.

    The direction is normalized to unit length internally and the positivity
    threshold is applied to the normalized multiplier, so the lam > 0 decision
    is invariant under rescaling of d.  (Applying the threshold to the raw
    multiplier would silently change verdicts with the units of d and destroy
    the positive homogeneity of the reach times built on top of this LP.)
    """
    m = np.atleast_2d(np.asarray(m, dtype=float))
    d = np.atleast_1d(np.asarray(d, dtype=float))
    n, v = m.shape
    if d.shape != (n,):
        raise LpError(f"direction must have length {n}, got shape {d.shape}")
    if not np.any(d):
        raise LpError("direction d must be nonzero")
    norm = float(np.linalg.norm(d))
    d_unit = d / norm
    shift = np.zeros(n) if rhs_shift is None else np.atleast_1d(np.asarray(rhs_shift, dtype=float))

    # Variables: (x, lam_hat).  Constraint M x - lam_hat d_unit = shift,
    # lam_hat in [0, inf); lam = lam_hat / ||d||.
    obj = np.zeros(v + 1)
    obj[-1] = 1.0
    a = np.hstack([m, -d_unit[:, None]])
    lo = np.concatenate([np.atleast_1d(lower).astype(float), [0.0]])
    hi = np.concatenate([np.atleast_1d(upper).astype(float), [np.inf]])
    out = solve(LpProblem(objective=obj, eq_matrix=a, eq_rhs=shift, lower=lo, upper=hi))

    if out.status == INFEASIBLE:
        return DirectionScaling(status=NEGATIVE_CERTIFICATE)
    if out.status == UNBOUNDED:
        return DirectionScaling(status=UNBOUNDED, value=np.inf)
    lam_hat = max(out.value, 0.0)
    x = out.argument[:v]
    if lam_hat > lambda_threshold(d_unit):
        return DirectionScaling(status=OPTIMAL, value=lam_hat / norm, argument=x)
    return DirectionScaling(status=ZERO, value=lam_hat / norm, argument=x)
