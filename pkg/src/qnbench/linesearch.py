"""Inexact Wolfe line search: backtracking from a unit trial step.

A trial step is accepted only when it satisfies both the sufficient-decrease
(Armijo) inequality and the curvature inequality

    f(x + a p) <= f(x) + c1 * a * g'p        (Armijo)
    grad f(x + a p)' p >= c2 * g'p           (curvature)

with 0 < c1 < c2 < 1.  Trials start at a = 1 and contract by a fixed factor,
so the returned step never exceeds 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WOLFE_SATISFIED = "wolfe_satisfied"
ARMIJO_ONLY = "armijo_only"
EXHAUSTED = "exhausted"


class DescentDirectionError(ValueError):
    """The supplied direction is not a descent direction (g'p >= 0)."""


@dataclass(frozen=True)
class WolfeParams:
    """Step-acceptance constants; defaults are the benchmark configuration."""

    c1: float = 1e-4
    c2: float = 0.9
    backtrack: float = 0.5
    max_trials: int = 60

    def __post_init__(self):
        if not 0.0 < self.c1 < self.c2 < 1.0:
            raise ValueError(f"need 0 < c1 < c2 < 1, got c1={self.c1}, c2={self.c2}")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError(f"backtrack factor must be in (0, 1), got {self.backtrack}")
        if self.max_trials < 1:
            raise ValueError(f"max_trials must be >= 1, got {self.max_trials}")


@dataclass(frozen=True)
class LineSearchOutcome:
    alpha: float
    f_new: float
    grad_new: np.ndarray | None  # None only when status == EXHAUSTED
    f_evals: int
    g_evals: int
    status: str


def wolfe_search(f, x, p, f_x, g_x, params: WolfeParams = WolfeParams()) -> LineSearchOutcome:
    """Backtrack from a unit step until both Wolfe conditions hold.

    If the trial budget runs out, the largest Armijo-passing step seen is
    returned with status ``armijo_only`` (the caller's curvature guard deals
    with the failed curvature condition); with no Armijo-passing step at all
    the status is ``exhausted``.  Non-finite trial values reject the trial and
    contract, so overflowing evaluations shrink the step instead of aborting
    the run.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    slope = float(np.dot(g_x, p))
    if not np.isfinite(slope) or slope >= 0.0:
        raise DescentDirectionError(f"directional derivative {slope!r} is not negative")

    f_count = 0
    g_count = 0
    alpha = 1.0
    last_alpha = alpha
    last_f = float(f_x)
    armijo_fallback = None
    for _ in range(params.max_trials):
        with np.errstate(over="ignore", invalid="ignore"):
            f_trial = float(f.evaluate(x + alpha * p))
        f_count += 1
        if np.isfinite(f_trial) and f_trial <= f_x + params.c1 * alpha * slope:
            with np.errstate(over="ignore", invalid="ignore"):
                g_trial = np.asarray(f.gradient(x + alpha * p), dtype=float)
            g_count += 1
            if np.all(np.isfinite(g_trial)):
                if float(np.dot(g_trial, p)) >= params.c2 * slope:
                    return LineSearchOutcome(
                        alpha, f_trial, g_trial, f_count, g_count, WOLFE_SATISFIED
                    )
                if armijo_fallback is None:
                    armijo_fallback = (alpha, f_trial, g_trial)
        last_alpha, last_f = alpha, f_trial
        alpha *= params.backtrack

    if armijo_fallback is not None:
        alpha, f_trial, g_trial = armijo_fallback
        return LineSearchOutcome(alpha, f_trial, g_trial, f_count, g_count, ARMIJO_ONLY)
    return LineSearchOutcome(last_alpha, last_f, None, f_count, g_count, EXHAUSTED)
