import math

import numpy as np
import pytest

from expheat import (
    BLOWUP,
    COMPLETED,
    Nonlinearity,
    RadialField,
    SolverConfig,
    TRUNCATED_PLANE,
    UNIT_DISC,
    build_grid,
    evolve,
    field_from_function,
    heat_propagate_exact,
    integrate_trajectory,
    lp_norm,
    step_imex,
    to_profile,
    write_run_csv,
)

S0 = 0.25  # initial Gaussian variance parameter: u0 = e^{-r^2/(4 s0)}


def heat_gaussian(r, s):
    return np.exp(-(r**2) / (4.0 * s))


def semigroup_image(r, s, t):
    return (s / (s + t)) * np.exp(-(r**2) / (4.0 * (s + t)))


class TestExactPropagator:
    def test_gaussian_semigroup(self):
        g = build_grid(2048, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: heat_gaussian(r, S0))
        img = heat_propagate_exact(u0, 0.1)
        exact = semigroup_image(g.nodes, S0, 0.1)
        assert np.max(np.abs(img.values - exact)) <= 1e-4

    def test_mass_preserved(self):
        g = build_grid(4096, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: heat_gaussian(r, S0))
        img = heat_propagate_exact(u0, 0.1)
        m0 = float(g.weights @ u0.values)
        m1 = float(g.weights @ img.values)
        assert abs(m1 - m0) <= 1e-6 * m0

    def test_sup_bound_from_kernel(self):
        # ||K_t * phi||_inf <= ||phi||_{L^1} / (4 pi t)
        g = build_grid(1024, 1.0, TRUNCATED_PLANE, 12.0)
        rng = np.random.default_rng(5)
        vals = np.zeros_like(g.nodes)
        for _ in range(5):
            c, w, a = rng.uniform(0, 6), rng.uniform(0.2, 1.0), rng.uniform(-1, 1)
            vals += a * np.exp(-(((g.nodes - c) / w) ** 2))
        phi = RadialField(g, vals)
        for t in (0.05, 0.2):
            img = heat_propagate_exact(phi, t)
            l1 = float(g.weights @ np.abs(phi.values))
            assert np.max(np.abs(img.values)) <= l1 / (4.0 * math.pi * t) * (1.0 + 1e-10)

    def test_nonpositive_time_rejected(self):
        g = build_grid(64, 1.0, TRUNCATED_PLANE, 12.0)
        with pytest.raises(ValueError):
            heat_propagate_exact(field_from_function(g, np.ones_like), 0.0)


class TestStepImex:
    def test_zero_stays_zero(self):
        g = build_grid(128, 1.0, TRUNCATED_PLANE, 12.0)
        u = field_from_function(g, lambda r: 0.0 * r)
        out = step_imex(u, 1e-2, Nonlinearity(), SolverConfig())
        assert np.max(np.abs(out.values)) == 0.0

    def test_diffusion_only_step_matches_semigroup(self):
        g = build_grid(2048, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: heat_gaussian(r, S0))
        dt = 0.01
        out = step_imex(u0, dt, None, SolverConfig())
        exact = semigroup_image(g.nodes, S0, dt)
        assert np.max(np.abs(out.values - exact)) <= 1e-4

    def test_near_stationary_input_residual_shrinks(self):
        # a shooting profile is a discrete near-equilibrium of the focusing
        # flow; the one-step residual on a mid annulus shrinks with the grid
        nl = Nonlinearity()
        residuals = []
        for n in (1024, 2048):
            g = build_grid(n, 2.0, UNIT_DISC)
            t_needed = -math.log(g.nodes[1]) + 0.5
            traj = integrate_trajectory(0.6, t_needed, 1e-10, nl, max_step=1e-3)
            q = to_profile(traj, g)
            dt = 1e-7
            out = step_imex(q.field, dt, nl, SolverConfig(theta=1.0))
            rate = np.abs(out.values - q.field.values) / dt
            window = (g.nodes >= 0.05) & (g.nodes <= 0.95)
            residuals.append(float(np.max(rate[window])))
        assert residuals[1] < residuals[0]

    def test_rejects_state_at_threshold(self):
        g = build_grid(64, 1.0, UNIT_DISC)
        u = field_from_function(g, lambda r: 12.5 + 0.0 * r)
        with pytest.raises(Exception):
            step_imex(u, 1e-3, Nonlinearity(), SolverConfig())


class TestEvolve:
    def test_zero_data_completes(self):
        g = build_grid(128, 1.0, TRUNCATED_PLANE, 12.0)
        rec = evolve(
            field_from_function(g, lambda r: 0.0 * r),
            Nonlinearity(sign="defocusing"),
            SolverConfig(t_end=0.1, dt_init=1e-2),
        )
        assert rec.outcome.kind == COMPLETED
        assert np.max(np.abs(rec.u_final)) == 0.0

    def test_diffusion_only_matches_semigroup_with_refinement(self):
        def sup_error(n, dt):
            g = build_grid(n, 2.0, TRUNCATED_PLANE, 12.0)
            u0 = field_from_function(g, lambda r: heat_gaussian(r, S0))
            rec = evolve(
                u0, None,
                SolverConfig(t_end=0.1, dt_init=dt, dt_min=dt, snapshot_stride=1000),
            )
            return float(np.max(np.abs(rec.u_final - semigroup_image(g.nodes, S0, 0.1))))

        e1 = sup_error(512, 0.02)
        e2 = sup_error(1024, 0.01)
        assert e1 / e2 >= 3.0

    def test_defocusing_run_bounds_and_monotonicity(self):
        g = build_grid(512, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: 3.0 * np.exp(-(r**2)))
        rec = evolve(u0, Nonlinearity(sign="defocusing"), SolverConfig(t_end=0.5))
        assert rec.outcome.kind == COMPLETED
        l2 = np.array([s.l2 for s in rec.snapshots])
        j = np.array([s.energy_j for s in rec.snapshots])
        linf = np.array([s.linf for s in rec.snapshots])
        assert np.all(np.diff(l2) <= 1e-12)  # L^2 contraction
        assert np.all(np.diff(j) <= 1e-10 * np.maximum(1.0, np.abs(j[:-1])))
        bound = math.sqrt(2.0) * l2[0] * 1.01
        assert np.max(linf[rec.times >= 0.01]) <= bound

    def test_blowup_declared_and_monotone_in_amplitude(self):
        g = build_grid(512, 2.0, TRUNCATED_PLANE, 12.0)
        nl = Nonlinearity()
        cfg = SolverConfig(t_end=2.0, dt_init=2e-3)
        detections = []
        for amp in (1.9, 1.2 * 1.9):
            u0 = field_from_function(g, lambda r: amp * np.exp(-(r**2)))
            rec = evolve(u0, nl, cfg)
            assert rec.outcome.kind == BLOWUP
            assert rec.outcome.t_detect is not None
            detections.append(rec.outcome.t_detect)
        assert detections[1] < detections[0]  # larger data blows up sooner

    def test_forced_times_are_hit(self):
        g = build_grid(256, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: np.exp(-(r**2)))
        rec = evolve(
            u0, Nonlinearity(sign="defocusing"),
            SolverConfig(t_end=0.2, forced_times=(0.05, 0.13)),
        )
        for ft in (0.05, 0.13):
            assert np.min(np.abs(rec.times - ft)) <= 1e-12

    def test_record_monotone_accumulators(self):
        g = build_grid(256, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: 2.0 * np.exp(-(r**2)))
        rec = evolve(u0, Nonlinearity(sign="defocusing"), SolverConfig(t_end=0.3))
        assert np.all(np.diff(rec.times) > 0.0)
        assert np.all(np.diff(rec.dissipation_cum) >= 0.0)
        assert np.all(np.diff(rec.v_functional) >= 0.0)

    def test_csv_schema_and_determinism(self, tmp_path):
        g = build_grid(128, 2.0, TRUNCATED_PLANE, 12.0)
        u0 = field_from_function(g, lambda r: np.exp(-(r**2)))
        cfg = SolverConfig(t_end=0.05)
        paths = []
        for name in ("a.csv", "b.csv"):
            rec = evolve(u0, Nonlinearity(sign="defocusing"), cfg)
            p = tmp_path / name
            write_run_csv(rec, str(p))
            paths.append(p)
        head = paths[0].read_text().splitlines()[0]
        assert head == "t,l2,linf,h1_semi,energy_j,dissipation_cum,v_functional"
        assert paths[0].read_bytes() == paths[1].read_bytes()
