"""BFGS baseline and the two-phase quasi-Newton solver.

Both solvers share the Wolfe line search and the termination logic.  The
two-phase method takes, per iteration, an intermediate step along the current
operator's direction, rebuilds the operator as the convex combination

    B_next = lam * B + (1 - lam) * B_bfgs(B, s, y)

of the old operator and its BFGS update (s and y coming from the intermediate
step), and then takes the real step from the *original* point along
``-B_next^{-1} grad``.

Two equivalent realizations are provided: ``b_form`` (default) keeps B and
solves via Cholesky; ``h_form_literal`` keeps the inverse H, applies the
inverse-Hessian BFGS update, and combines through the literal double inversion
``(lam H^{-1} + (1 - lam) H_bar^{-1})^{-1}``.  The literal form exists for
cross-validation.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from qnbench.linalg import (
    SPDError,
    cholesky,
    inverse_spd,
    solve_spd,
    symmetrize,
)
from qnbench.linesearch import EXHAUSTED, WolfeParams, wolfe_search

MODE_B_FORM = "b_form"
MODE_H_FORM_LITERAL = "h_form_literal"

CONVERGED = "converged"
MAX_ITER = "max_iter"
LINE_SEARCH_EXHAUSTED = "line_search_exhausted"
SPD_FAILURE = "spd_failure"

DEFAULT_UPDATE_SKIP_TOL = 1e-12


class CurvatureError(ValueError):
    """The update pair violates the curvature condition s'y > 0."""


@dataclass(frozen=True)
class SolverConfig:
    """Tunable scalars shared by both solvers.

    ``lam`` only affects the two-phase method.  ``update_skip_tol`` is the
    relative curvature threshold below which an update is skipped instead of
    applied (s'y <= tol * ||s|| * ||y||).
    """

    lam: float = 0.5
    tol: float = 1e-6
    max_iter: int = 500
    wolfe: WolfeParams = field(default_factory=WolfeParams)
    update_skip_tol: float = DEFAULT_UPDATE_SKIP_TOL
    mode: str = MODE_B_FORM

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lam must be in (0, 1), got {self.lam}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.mode not in (MODE_B_FORM, MODE_H_FORM_LITERAL):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class IterateRecord:
    """State at the start of iteration k plus the step that left it.

    ``alpha_bar``, ``cos_theta`` and ``status_bar`` are None for the BFGS
    baseline, which has no intermediate phase.
    """

    k: int
    x: np.ndarray
    f: float
    grad_norm: float
    alpha_bar: float | None
    alpha: float
    cos_theta: float | None
    update_skipped: bool
    status_bar: str | None
    status: str


@dataclass(frozen=True)
class UpdateRecord:
    """Operator update data for one iteration, kept for diagnostics.

    ``operator`` is the matrix the solver maintains: B_k in ``b_form`` runs of
    the two-phase solver, H_k for BFGS and ``h_form_literal``.  ``coupling``
    is ``(p - p_bar)' grad(x_bar)`` for the two-phase method (None for BFGS);
    its sign is a recorded hypothesis flag, never enforced.
    """

    s: np.ndarray
    y: np.ndarray
    p: np.ndarray
    p_bar: np.ndarray | None
    operator: np.ndarray
    operator_next: np.ndarray
    skipped: bool
    coupling: float | None


@dataclass(frozen=True)
class SolveResult:
    final_x: np.ndarray
    final_f: float
    final_grad_norm: float
    iterations: int
    f_evals: int
    g_evals: int
    termination: str
    trace: list[IterateRecord]
    updates: list[UpdateRecord]

    @property
    def converged(self) -> bool:
        return self.termination == CONVERGED

    def iterate_sequence(self):
        """All iterates x_0 .. x_m including the final point."""
        return [record.x for record in self.trace] + [self.final_x]


def _curvature_gap(s, y, skip_tol):
    sy = float(np.dot(s, y))
    floor = skip_tol * float(np.linalg.norm(s)) * float(np.linalg.norm(y))
    return sy, floor


def bfgs_update_B(B, s, y, skip_tol: float = DEFAULT_UPDATE_SKIP_TOL):
    """Rank-two Hessian-approximation update B - Bss'B/(s'Bs) + yy'/(y's)."""
    B = np.asarray(B, dtype=float)
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    sy, floor = _curvature_gap(s, y, skip_tol)
    if sy <= floor:
        raise CurvatureError(f"s'y = {sy:.3e} fails the curvature floor {floor:.3e}")
    Bs = B @ s
    sBs = float(np.dot(s, Bs))
    if sBs <= 0.0:
        raise SPDError(f"s'Bs = {sBs:.3e} is not positive")
    return B - np.outer(Bs, Bs) / sBs + np.outer(y, y) / sy


def bfgs_update_H(H, s, y, skip_tol: float = DEFAULT_UPDATE_SKIP_TOL):
    """Inverse-Hessian update (I - r sy')H(I - r ys') + r ss', r = 1/(y's)."""
    H = np.asarray(H, dtype=float)
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    sy, floor = _curvature_gap(s, y, skip_tol)
    if sy <= floor:
        raise CurvatureError(f"s'y = {sy:.3e} fails the curvature floor {floor:.3e}")
    rho = 1.0 / sy
    n = s.size
    left = np.eye(n) - rho * np.outer(s, y)
    return symmetrize(left @ H @ left.T + rho * np.outer(s, s))


def two_phase_combine(B, B_bar, lam: float):
    """Convex combination lam * B + (1 - lam) * B_bar; SPD for SPD inputs."""
    B = np.asarray(B, dtype=float)
    B_bar = np.asarray(B_bar, dtype=float)
    if B.shape != B_bar.shape:
        raise ValueError(f"dimension mismatch: {B.shape} vs {B_bar.shape}")
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must be in (0, 1), got {lam}")
    return lam * B + (1.0 - lam) * B_bar


def combine_H_literal(H, H_bar, lam: float):
    """Inverse of the convex combination of inverses, per the literal form."""
    H_inv = inverse_spd(H)
    H_bar_inv = inverse_spd(H_bar)
    return inverse_spd(two_phase_combine(H_inv, H_bar_inv, lam))


def solve_bfgs(f, x0, cfg: SolverConfig | None = None) -> SolveResult:
    """Standard BFGS with the inverse-Hessian update, started from H = I.

    Parameters
    ----------
    f : ObjectiveFunction
        Objective with analytic gradient (gradient-checked beforehand).
    x0 : array_like
        Starting point.
    cfg : SolverConfig, optional
        Tolerances and line-search constants; benchmark defaults when omitted.
    """
    cfg = cfg if cfg is not None else SolverConfig()
    x = np.array(x0, dtype=float)
    fx = float(f.evaluate(x))
    g = np.asarray(f.gradient(x), dtype=float)
    f_evals, g_evals = 1, 1
    H = np.eye(x.size)
    trace: list[IterateRecord] = []
    updates: list[UpdateRecord] = []
    k = 0
    while True:
        grad_norm = float(np.linalg.norm(g))
        if grad_norm <= cfg.tol:
            termination = CONVERGED
            break
        if k >= cfg.max_iter:
            termination = MAX_ITER
            break
        p = -(H @ g)
        if float(np.dot(g, p)) >= 0.0:
            termination = SPD_FAILURE
            break
        outcome = wolfe_search(f, x, p, fx, g, cfg.wolfe)
        f_evals += outcome.f_evals
        g_evals += outcome.g_evals
        if outcome.status == EXHAUSTED:
            termination = LINE_SEARCH_EXHAUSTED
            break
        x_next = x + outcome.alpha * p
        s = x_next - x
        y = outcome.grad_new - g
        sy, floor = _curvature_gap(s, y, cfg.update_skip_tol)
        skipped = sy <= floor
        H_next = H if skipped else bfgs_update_H(H, s, y, cfg.update_skip_tol)
        trace.append(
            IterateRecord(k, x, fx, grad_norm, None, outcome.alpha, None,
                          skipped, None, outcome.status)
        )
        updates.append(UpdateRecord(s, y, p, None, H, H_next, skipped, None))
        x, fx, g, H = x_next, outcome.f_new, outcome.grad_new, H_next
        k += 1
    return SolveResult(x, fx, float(np.linalg.norm(g)), k, f_evals, g_evals,
                       termination, trace, updates)


def solve_two_phase(f, x0, cfg: SolverConfig | None = None) -> SolveResult:
    """Two-phase quasi-Newton iteration.

    Per iteration: (i) intermediate direction ``p_bar = -B^{-1} g``; (ii) a
    Wolfe step along it gives ``x_bar`` and the pair ``s = x_bar - x``,
    ``y = grad(x_bar) - g``; (iii) the operator is rebuilt as the convex
    combination of B and its BFGS update; (iv) the real step leaves ``x``
    along ``-B_next^{-1} g`` (gradient at x, not x_bar) under a second Wolfe
    search.  When the curvature floor rejects the pair, the update is skipped
    and the intermediate point is taken as the next iterate.

    Parameters as in :func:`solve_bfgs`; ``cfg.mode`` chooses between the
    Cholesky-based ``b_form`` and the literal inverse form.
    """
    cfg = cfg if cfg is not None else SolverConfig()
    b_form = cfg.mode == MODE_B_FORM
    x = np.array(x0, dtype=float)
    fx = float(f.evaluate(x))
    g = np.asarray(f.gradient(x), dtype=float)
    f_evals, g_evals = 1, 1
    n = x.size
    if b_form:
        B = np.eye(n)
        L = cholesky(B)
    else:
        H = np.eye(n)
    trace: list[IterateRecord] = []
    updates: list[UpdateRecord] = []
    k = 0
    while True:
        grad_norm = float(np.linalg.norm(g))
        if grad_norm <= cfg.tol:
            termination = CONVERGED
            break
        if k >= cfg.max_iter:
            termination = MAX_ITER
            break

        p_bar = -solve_spd(L, g) if b_form else -(H @ g)
        if float(np.dot(g, p_bar)) >= 0.0:
            termination = SPD_FAILURE
            break
        first = wolfe_search(f, x, p_bar, fx, g, cfg.wolfe)
        f_evals += first.f_evals
        g_evals += first.g_evals
        if first.status == EXHAUSTED:
            termination = LINE_SEARCH_EXHAUSTED
            break
        alpha_bar = first.alpha
        x_bar = x + alpha_bar * p_bar
        g_bar = first.grad_new
        s = x_bar - x
        y = g_bar - g

        # cos theta compares s against B s; the h form only holds B's inverse,
        # so realizing B s costs one factored solve (diagnostics only)
        Bs = B @ s if b_form else solve_spd(cholesky(H), s)
        denom = float(np.linalg.norm(Bs)) * float(np.linalg.norm(s))
        cos_theta = float(np.dot(s, Bs)) / denom if denom > 0.0 else None

        sy, floor = _curvature_gap(s, y, cfg.update_skip_tol)
        skipped = sy <= floor
        if skipped:
            # No usable curvature pair: keep the operator and accept the
            # intermediate point, whose direction the operator produced.
            p = p_bar
            alpha = alpha_bar
            x_next, f_next, g_next = x_bar, first.f_new, g_bar
            status = first.status
            if b_form:
                B_next, L_next = B, L
            else:
                H_next = H
        else:
            try:
                if b_form:
                    B_bar = bfgs_update_B(B, s, y, cfg.update_skip_tol)
                    B_next = two_phase_combine(B, B_bar, cfg.lam)
                    L_next = cholesky(B_next)
                    p = -solve_spd(L_next, g)
                else:
                    H_bar = bfgs_update_H(H, s, y, cfg.update_skip_tol)
                    H_next = combine_H_literal(H, H_bar, cfg.lam)
                    p = -(H_next @ g)
            except SPDError:
                termination = SPD_FAILURE
                break
            if float(np.dot(g, p)) >= 0.0:
                termination = SPD_FAILURE
                break
            second = wolfe_search(f, x, p, fx, g, cfg.wolfe)
            f_evals += second.f_evals
            g_evals += second.g_evals
            if second.status == EXHAUSTED:
                termination = LINE_SEARCH_EXHAUSTED
                break
            alpha = second.alpha
            x_next = x + alpha * p
            f_next, g_next = second.f_new, second.grad_new
            status = second.status

        coupling = float(np.dot(p - p_bar, g_bar))
        trace.append(
            IterateRecord(k, x, fx, grad_norm, alpha_bar, alpha, cos_theta,
                          skipped, first.status, status)
        )
        if b_form:
            updates.append(UpdateRecord(s, y, p, p_bar, B, B_next, skipped, coupling))
            B, L = B_next, L_next
        else:
            updates.append(UpdateRecord(s, y, p, p_bar, H, H_next, skipped, coupling))
            H = H_next
        x, fx, g = x_next, f_next, g_next
        k += 1
    return SolveResult(x, fx, float(np.linalg.norm(g)), k, f_evals, g_evals,
                       termination, trace, updates)


def trace_to_csv(result: SolveResult) -> str:
    """Trace as CSV: k,f,grad_norm,alpha_bar,alpha,cos_theta,update_skipped.

    A terminal summary row holds the final iterate's f and gradient norm with
    the step columns empty.
    """
    out = io.StringIO()
    out.write("k,f,grad_norm,alpha_bar,alpha,cos_theta,update_skipped\n")

    def fmt(value):
        return "" if value is None else repr(float(value))

    for r in result.trace:
        skipped = "true" if r.update_skipped else "false"
        out.write(f"{r.k},{fmt(r.f)},{fmt(r.grad_norm)},{fmt(r.alpha_bar)},"
                  f"{fmt(r.alpha)},{fmt(r.cos_theta)},{skipped}\n")
    out.write(f"{result.iterations},{fmt(result.final_f)},"
              f"{fmt(result.final_grad_norm)},,,,\n")
    return out.getvalue()
