import math

import numpy as np
import pytest

from qnbench import (
    SPDError,
    SolverConfig,
    diagnose_run,
    diagnostics_to_csv,
    direction_quality,
    lookup,
    psi,
    solve_two_phase,
    superlinear_ratio_series,
)
from qnbench.solvers import IterateRecord

from _util import make_spd, quadratic_hessian


class TestPsi:
    def test_identity(self):
        assert psi(np.eye(3)) == 3.0

    def test_diagonal(self):
        assert psi(np.diag([2.0, 2.0])) == pytest.approx(4.0 - math.log(4.0), rel=1e-12)

    def test_log_cancellation(self):
        assert psi(np.diag([math.e, 1.0])) == pytest.approx(math.e, rel=1e-12)

    def test_requires_spd(self):
        with pytest.raises(SPDError):
            psi(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_minimum_at_identity(self):
        rng = np.random.default_rng(21)
        for n in (2, 5, 10):
            for _ in range(20):
                value = psi(make_spd(rng, n))
                assert value >= n  # each eigenvalue contributes at least 1
                assert value > 0.0


def _fake_trace(points):
    return [IterateRecord(k, np.asarray(x, dtype=float), 0.0, 1.0, None, 1.0,
                          None, False, None, "wolfe_satisfied")
            for k, x in enumerate(points)]


class TestSuperlinearRatios:
    def test_geometric_sequence(self):
        trace = _fake_trace([[2.0 ** -k] for k in range(8)])
        ratios = superlinear_ratio_series(trace, np.zeros(1))
        assert ratios == pytest.approx([0.5] * 7)

    def test_quadratically_convergent_sequence(self):
        points = [[2.0 ** -(2 ** k)] for k in range(6)]
        ratios = superlinear_ratio_series(_fake_trace(points), np.zeros(1))
        assert all(b < a for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] == 2.0 ** -16

    def test_final_iterate_extends_series(self):
        trace = _fake_trace([[1.0], [0.5]])
        short = superlinear_ratio_series(trace, np.zeros(1))
        extended = superlinear_ratio_series(trace, np.zeros(1), final_x=np.array([0.1]))
        assert len(extended) == len(short) + 1
        assert extended[-1] == pytest.approx(0.2)

    def test_underflowing_denominators_dropped(self):
        trace = _fake_trace([[1.0], [1e-14], [1e-15]])
        ratios = superlinear_ratio_series(trace, np.zeros(1))
        assert len(ratios) == 1  # only the 1.0 -> 1e-14 ratio survives

    def test_two_phase_run_on_qf1_ends_superlinearly(self):
        p = lookup("Quadratic QF1")
        res = solve_two_phase(p.objective, p.objective.standard_start)
        ratios = superlinear_ratio_series(res.trace, p.known_optimum.x, res.final_x)
        last3 = ratios[-3:]
        assert all(b < a for a, b in zip(last3, last3[1:]))
        assert last3[-1] <= 0.1


class TestDirectionQuality:
    def test_zero_when_operator_matches(self):
        hess = np.diag([2.0, 5.0])
        assert direction_quality(hess, hess, np.array([0.3, -0.4])) == 0.0

    def test_scaled_identity(self):
        p = np.array([0.6, 0.8])  # unit vector
        assert direction_quality(2.0 * np.eye(2), np.eye(2), p) == pytest.approx(1.0)

    def test_zero_direction_rejected(self):
        with pytest.raises(ValueError):
            direction_quality(np.eye(2), np.eye(2), np.zeros(2))

    def test_eventually_decreasing_on_quadratic(self):
        p = lookup("Quadratic QF1")
        res = solve_two_phase(p.objective, p.objective.standard_start)
        hess = quadratic_hessian(p.objective)
        series = [direction_quality(u.operator, hess, u.p_bar) for u in res.updates]
        assert series[-1] <= 0.5 * series[0]


class TestDiagnoseRun:
    def test_series_shapes_and_positivity(self):
        p = lookup("Tridia")
        res = solve_two_phase(p.objective, p.objective.standard_start)
        diag = diagnose_run(res, p.known_optimum.x, quadratic_hessian(p.objective))
        assert len(diag.psi_series) == res.iterations + 1
        assert all(v > 0.0 for v in diag.psi_series)
        assert len(diag.dir_quality) == res.iterations
        assert len(diag.assumption2_flags) == res.iterations
        assert 0 < len(diag.q_ratios) <= res.iterations

    def test_quartile_minimum_on_strongly_convex_quadratics(self):
        # asymptotic regime needs a tight run; the benchmark tolerance stops
        # before superlinear onset is visible on the stiffest quadratic
        cfg = SolverConfig(tol=1e-10)
        for name in ("DQDRTIC", "Quadratic QF1", "Tridia"):
            p = lookup(name)
            res = solve_two_phase(p.objective, p.objective.standard_start, cfg)
            diag = diagnose_run(res, p.known_optimum.x)
            q = diag.q_ratios
            argmin = int(np.argmin(q))
            assert argmin >= 0.75 * (len(q) - 1), name
            assert q[-1] <= 0.1, name

    def test_without_hessian_no_direction_series(self):
        p = lookup("Raydan2")
        res = solve_two_phase(p.objective, p.objective.standard_start)
        diag = diagnose_run(res, p.known_optimum.x)
        assert diag.dir_quality == []

    def test_psi_positive_across_every_suite_run(self, default_runs):
        # psi of an SPD operator is at least the matrix order
        for (name, solver), res in default_runs.items():
            if solver != "two-phase":
                continue
            for u in res.updates:
                assert psi(u.operator) >= 10.0, name
            if res.updates:
                assert psi(res.updates[-1].operator_next) >= 10.0, name


class TestDiagnosticsCsv:
    def test_structure(self):
        p = lookup("Tridia")
        res = solve_two_phase(p.objective, p.objective.standard_start)
        diag = diagnose_run(res, p.known_optimum.x, quadratic_hessian(p.objective))
        text = diagnostics_to_csv(diag)
        lines = text.strip().split("\n")
        assert lines[0] == "k,psi,q_ratio,dir_quality,assumption2_descent"
        assert len(lines) - 1 == len(diag.psi_series)
        first = lines[1].split(",")
        assert float(first[1]) == diag.psi_series[0]
