"""Differentiable objective abstraction plus finite-difference gradient checks.

Solvers consume analytic gradients only; the central-difference machinery here
exists to verify those gradients before a function is trusted anywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

DEFAULT_FD_STEP = 1e-6
DEFAULT_CHECK_TOL = 1e-5
DEFAULT_CHECK_SEED = 20240817
DEFAULT_CHECK_SCALE = 0.1


@dataclass(frozen=True)
class ObjectiveFunction:
    """Named objective with analytic gradient and a standard starting point.

    ``evaluate`` and ``gradient`` must be pure and reentrant; the benchmark
    harness may call them from several runs without coordination.
    """

    name: str
    dimension: int
    evaluate: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    standard_start: np.ndarray

    def __post_init__(self):
        start = np.asarray(self.standard_start, dtype=float)
        if start.shape != (self.dimension,):
            raise ValueError(
                f"{self.name}: start has shape {start.shape}, expected ({self.dimension},)"
            )
        if not np.all(np.isfinite(start)):
            raise ValueError(f"{self.name}: start must be finite")
        object.__setattr__(self, "standard_start", start)


@dataclass(frozen=True)
class GradientCheckReport:
    """Worst relative analytic-vs-central-difference discrepancy over probes."""

    max_rel_error: float
    worst_coordinate: int
    probe_points: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tol


def fd_gradient(f: ObjectiveFunction, x, h: float = DEFAULT_FD_STEP):
    """Central-difference gradient ``(f(x + h e_i) - f(x - h e_i)) / (2h)``."""
    if h <= 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        f_plus = float(f.evaluate(x + step))
        f_minus = float(f.evaluate(x - step))
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise ValueError(
                f"{f.name}: non-finite evaluation probing coordinate {i} at {x!r}"
            )
        grad[i] = (f_plus - f_minus) / (2.0 * h)
    return grad


def check_gradient(
    f: ObjectiveFunction,
    points: Sequence[np.ndarray],
    h: float = DEFAULT_FD_STEP,
    tol: float = DEFAULT_CHECK_TOL,
) -> GradientCheckReport:
    """Compare the analytic gradient against central differences at ``points``.

    The per-point relative error is ``||g_analytic - g_fd|| / max(1, ||g_analytic||)``;
    the report keeps the worst error and the coordinate where it occurred.
    """
    points = list(points)
    if not points:
        raise ValueError("points must be nonempty")
    worst = 0.0
    worst_coord = 0
    for x in points:
        x = np.asarray(x, dtype=float)
        approx = fd_gradient(f, x, h)
        exact = np.asarray(f.gradient(x), dtype=float)
        if not np.all(np.isfinite(exact)):
            raise ValueError(f"{f.name}: non-finite analytic gradient at {x!r}")
        diff = exact - approx
        rel = float(np.linalg.norm(diff)) / max(1.0, float(np.linalg.norm(exact)))
        if rel > worst:
            worst = rel
            worst_coord = int(np.argmax(np.abs(diff)))
    return GradientCheckReport(worst, worst_coord, len(points), tol)


def default_check_points(
    f: ObjectiveFunction,
    count: int = 5,
    scale: float = DEFAULT_CHECK_SCALE,
    seed: int = DEFAULT_CHECK_SEED,
):
    """Standard start plus ``count`` seeded Gaussian perturbations of it."""
    rng = np.random.default_rng(seed)
    start = f.standard_start
    points = [start]
    for _ in range(count):
        points.append(start + scale * rng.standard_normal(start.size))
    return points
