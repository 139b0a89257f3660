"""Convergence diagnostics computed from recorded solver runs.

Executable forms of the quantities the convergence analysis reasons about:
the operator potential ``psi(B) = trace(B) - ln det(B)``, the error-ratio
series ``||x_{k+1} - x*|| / ||x_k - x*||``, and the direction-quality
quotient ``||(B - G*) p_bar|| / ||p_bar||``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from qnbench.linalg import cholesky, log_determinant_spd
from qnbench.solvers import SolveResult

RATIO_DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class ConvergenceDiagnostics:
    psi_series: list[float]
    q_ratios: list[float]
    dir_quality: list[float]
    assumption2_flags: list[bool]


def psi(B) -> float:
    """trace(B) - ln det(B); positive for every SPD matrix, minimal (= n) at I."""
    B = np.asarray(B, dtype=float)
    lower = cholesky(B)
    return float(np.trace(B)) - log_determinant_spd(lower)


def superlinear_ratio_series(trace, x_star, final_x=None, denom_floor=RATIO_DENOM_FLOOR):
    """Ratios ||x_{k+1} - x*|| / ||x_k - x*|| along a recorded trace.

    ``final_x`` extends the trace with the terminal iterate, giving the last
    ratio.  Ratios whose denominator underflows ``denom_floor`` are dropped.
    """
    x_star = np.asarray(x_star, dtype=float)
    xs = [np.asarray(r.x, dtype=float) for r in trace]
    if final_x is not None:
        xs.append(np.asarray(final_x, dtype=float))
    errs = [float(np.linalg.norm(x - x_star)) for x in xs]
    return [
        errs[k + 1] / errs[k]
        for k in range(len(errs) - 1)
        if errs[k] > denom_floor
    ]


def direction_quality(B, hess_star, p_bar) -> float:
    """||(B - hess_star) p_bar|| / ||p_bar||."""
    p_bar = np.asarray(p_bar, dtype=float)
    norm_p = float(np.linalg.norm(p_bar))
    if norm_p == 0.0:
        raise ValueError("p_bar must be nonzero")
    residual = (np.asarray(B, float) - np.asarray(hess_star, float)) @ p_bar
    return float(np.linalg.norm(residual)) / norm_p


def diagnose_run(result: SolveResult, x_star, hess_star=None) -> ConvergenceDiagnostics:
    """Assemble all diagnostic series from one recorded run.

    ``psi_series`` covers every operator the run maintained (B_0 .. B_m for a
    b-form two-phase run).  ``dir_quality`` is only populated when the exact
    limiting Hessian is supplied, which for quadratic objectives is the
    constant Hessian.
    """
    psi_series = [psi(u.operator) for u in result.updates]
    if result.updates:
        psi_series.append(psi(result.updates[-1].operator_next))
    q_ratios = superlinear_ratio_series(result.trace, x_star, result.final_x)
    if hess_star is not None:
        dir_quality = [
            direction_quality(u.operator, hess_star, u.p_bar)
            for u in result.updates
            if u.p_bar is not None
        ]
    else:
        dir_quality = []
    flags = [u.coupling < 0.0 for u in result.updates if u.coupling is not None]
    return ConvergenceDiagnostics(psi_series, q_ratios, dir_quality, flags)


def diagnostics_to_csv(diag: ConvergenceDiagnostics) -> str:
    """CSV with one row per iteration index; shorter series leave blanks."""
    out = io.StringIO()
    out.write("k,psi,q_ratio,dir_quality,assumption2_descent\n")
    rows = max(len(diag.psi_series), len(diag.q_ratios),
               len(diag.dir_quality), len(diag.assumption2_flags))

    def cell(series, k, fmt=repr):
        return fmt(series[k]) if k < len(series) else ""

    for k in range(rows):
        flag = cell(diag.assumption2_flags, k, lambda v: "true" if v else "false")
        out.write(f"{k},{cell(diag.psi_series, k)},{cell(diag.q_ratios, k)},"
                  f"{cell(diag.dir_quality, k)},{flag}\n")
    return out.getvalue()
