import math

import numpy as np
import pytest

from expheat import (
    CROSSING,
    NO_CROSSING,
    NewtonError,
    Nonlinearity,
    UNIT_DISC,
    bisect_boundary,
    build_grid,
    discrete_laplacian,
    extrapolate_boundary,
    integrate_trajectory,
    scan_alpha,
    solve_regular_bvp,
    to_profile,
    validate_singular,
    write_profile_csv,
    write_scan_csv,
)
from expheat.grid import hat_weights
from expheat.shooting import PROFILE_MAX_STEP


class TestIntegrateTrajectory:
    def test_zero_slope_is_trivial(self):
        traj = integrate_trajectory(0.0, 10.0)
        c = traj.classification
        assert c.kind == NO_CROSSING
        assert c.y_end == 0.0 and c.ydot_end == 0.0

    def test_forcing_disabled_hook_is_linear(self):
        traj = integrate_trajectory(1.3, 20.0, nl=None)
        assert traj.classification.kind == NO_CROSSING
        assert traj.classification.y_end == pytest.approx(1.3 * 20.0, rel=1e-9)
        assert traj.classification.ydot_end == pytest.approx(1.3, rel=1e-12)

    def test_initial_conditions_reproduced(self):
        traj = integrate_trajectory(2.0, 5.0)
        assert traj.y[0] == 0.0
        assert traj.ydot[0] == 2.0

    def test_concavity_along_samples(self):
        traj = integrate_trajectory(2.0, 40.0)
        assert np.all(np.diff(traj.ydot) <= 1e-8)

    def test_crossing_matches_reference_tolerance(self):
        a, tm = 2.0, 40.0
        coarse = integrate_trajectory(a, tm, tol=1e-10)
        ref = integrate_trajectory(a, tm, tol=1e-12)
        assert coarse.classification.kind == ref.classification.kind == CROSSING
        assert coarse.classification.t_cross == pytest.approx(
            ref.classification.t_cross, abs=1e-6
        )

    def test_crossing_time_independent_of_horizon(self):
        t40 = integrate_trajectory(2.0, 40.0).classification.t_cross
        t60 = integrate_trajectory(2.0, 60.0).classification.t_cross
        assert t40 == pytest.approx(t60, abs=1e-8)

    def test_negative_slope_rejected(self):
        with pytest.raises(ValueError):
            integrate_trajectory(-1.0, 10.0)

    def test_defocusing_nl_rejected(self):
        with pytest.raises(ValueError, match="focusing"):
            integrate_trajectory(1.0, 10.0, nl=Nonlinearity(sign="defocusing"))


class TestScan:
    def test_empty_scan(self):
        table = scan_alpha([], 40.0)
        assert table.rows == ()
        assert table.windows() == []

    def test_both_classifications_found(self):
        table = scan_alpha(np.geomspace(0.05, 10.0, 25), 40.0)
        kinds = {row.kind for row in table.rows}
        assert CROSSING in kinds and NO_CROSSING in kinds
        lo, hi = table.widest_window()
        assert 0.0 < lo < hi < 10.0

    def test_classification_stable_in_tolerance_away_from_edge(self):
        for a in (0.5, 2.0, 5.0):
            k8 = integrate_trajectory(a, 40.0, tol=1e-8).classification.kind
            k10 = integrate_trajectory(a, 40.0, tol=1e-10).classification.kind
            assert k8 == k10

    def test_nonincreasing_alphas_rejected(self):
        with pytest.raises(ValueError):
            scan_alpha([1.0, 0.5], 40.0)


class TestBisectBoundary:
    def test_boundary_location_and_certificate(self):
        b = bisect_boundary(0.9, 1.1, 40.0)
        assert 0.95 < b < 1.02
        below = integrate_trajectory(b - 1e-3, 40.0).classification
        above = integrate_trajectory(b + 1e-3, 40.0).classification
        # measured orientation: the window sits below, crossings above, and
        # the crossing time is large just outside the edge
        assert below.kind == NO_CROSSING
        assert above.kind == CROSSING
        assert above.t_cross > 0.8 * 40.0

    def test_swapped_bracket_rejected(self):
        with pytest.raises(ValueError, match="swapped"):
            bisect_boundary(1.1, 0.9, 40.0)

    def test_identical_classification_rejected(self):
        with pytest.raises(ValueError, match="identically"):
            bisect_boundary(2.0, 3.0, 40.0)

    def test_extrapolated_boundary_matches_bvp_slope(self):
        # the raw boundary drifts like alpha0 + C/t_max; removing the O(1/t)
        # bias lands within 2e-3 of the Newton solution's boundary slope
        b40 = bisect_boundary(0.9, 1.2, 40.0)
        b60 = bisect_boundary(0.9, 1.2, 60.0)
        alpha0 = extrapolate_boundary(b40, 40.0, b60, 60.0)

        g = build_grid(1024, 1.0, UNIT_DISC)
        res = solve_regular_bvp(g, Nonlinearity(), init_amplitude=1.3)
        r = g.nodes
        u = res.field.values
        h1, h2 = r[-1] - r[-2], r[-2] - r[-3]
        slope = (
            u[-3] * h1 / (h2 * (h1 + h2))
            - u[-2] * (h1 + h2) / (h1 * h2)
            + u[-1] * (2 * h1 + h2) / (h1 * (h1 + h2))
        )
        assert alpha0 == pytest.approx(-slope, abs=2e-3)


class TestToProfile:
    def test_forcing_disabled_gives_harmonic_log(self):
        g = build_grid(1024, 2.0, UNIT_DISC)
        t_needed = -math.log(g.nodes[1]) + 0.5
        traj = integrate_trajectory(0.8, t_needed, nl=None, max_step=0.05)
        prof = to_profile(traj, g)
        assert prof.field.values[-1] == 0.0
        expected = -0.8 * np.log(g.nodes[1:])
        assert np.max(np.abs(prof.field.values[1:] - expected)) <= 1e-6
        lap = discrete_laplacian(prof.field)
        window = (g.nodes >= 0.1) & (g.nodes <= 0.9)
        assert np.max(np.abs(lap.values[window])) <= 1e-3

    def test_bounded_trajectory_plateau(self):
        # near the bounded slope the trajectory converges; inner node values
        # approach the cap
        g = build_grid(512, 2.0, UNIT_DISC)
        t_needed = -math.log(g.nodes[1]) + 0.5
        traj = integrate_trajectory(0.9, t_needed, max_step=0.05)
        prof = to_profile(traj, g)
        assert prof.field.values[1] == pytest.approx(prof.cap_value, rel=1e-2)

    def test_grid_deeper_than_trajectory_rejected(self):
        g = build_grid(4096, 2.0, UNIT_DISC)  # needs t up to 16.6
        traj = integrate_trajectory(0.6, 10.0)
        with pytest.raises(ValueError, match="trajectory stops"):
            to_profile(traj, g)

    def test_crossing_trajectory_rejected(self):
        g = build_grid(64, 1.0, UNIT_DISC)
        traj = integrate_trajectory(2.0, 40.0)
        with pytest.raises(ValueError, match="non-crossing"):
            to_profile(traj, g)

    def test_stationarity_residual_shrinks_under_refinement(self):
        nl = Nonlinearity()
        resids = []
        for n in (1024, 2048):
            g = build_grid(n, 2.0, UNIT_DISC)
            t_needed = -math.log(g.nodes[1]) + 0.5
            traj = integrate_trajectory(0.6, t_needed, max_step=PROFILE_MAX_STEP)
            prof = to_profile(traj, g)
            res = discrete_laplacian(prof.field).values + nl.f(prof.field.values)
            window = (g.nodes >= 0.05) & (g.nodes <= 0.95)
            w = hat_weights(g.nodes[window])
            resids.append(math.sqrt(float(w @ res[window] ** 2)))
        assert resids[1] < resids[0] / 2.0


class TestRegularBvp:
    def test_positive_solution_from_suitable_amplitude(self):
        g = build_grid(1024, 1.0, UNIT_DISC)
        res = solve_regular_bvp(g, Nonlinearity(), init_amplitude=1.3)
        u = res.field.values
        assert res.scaled_residual <= 1e-10
        assert u[-1] == 0.0
        assert np.all(u[:-1] > 0.0)
        assert u[0] == pytest.approx(2.097, abs=5e-3)

    def test_default_amplitude_reaches_trivial_solution(self):
        # the zero solution attracts small initial guesses; reported, not hidden
        g = build_grid(256, 1.0, UNIT_DISC)
        res = solve_regular_bvp(g, Nonlinearity(), init_amplitude=1.0)
        assert np.max(np.abs(res.field.values)) <= 1e-5

    def test_cross_method_profile_agreement(self):
        # shoot at the Newton solution's own boundary slope and compare
        # profiles; this is the attainable two-route check (the horizon-
        # bisected slope carries an O(1/t_max) bias, see the ledger)
        g = build_grid(1024, 1.0, UNIT_DISC)
        res = solve_regular_bvp(g, Nonlinearity(), init_amplitude=1.3)
        r = g.nodes
        u = res.field.values
        h1, h2 = r[-1] - r[-2], r[-2] - r[-3]
        alpha0 = -(
            u[-3] * h1 / (h2 * (h1 + h2))
            - u[-2] * (h1 + h2) / (h1 * h2)
            + u[-1] * (2 * h1 + h2) / (h1 * (h1 + h2))
        )
        t_needed = -math.log(r[1]) + 0.5
        traj = integrate_trajectory(alpha0, t_needed, max_step=0.01)
        prof = to_profile(traj, g)
        assert np.max(np.abs(prof.field.values - u)) <= 1e-3

    def test_nonconvergence_raises(self):
        g = build_grid(256, 1.0, UNIT_DISC)
        with pytest.raises(NewtonError):
            solve_regular_bvp(g, Nonlinearity(), init_amplitude=2.5, max_iter=10)

    def test_wrong_domain_rejected(self):
        g = build_grid(256, 1.0, "truncated_plane", 12.0)
        with pytest.raises(ValueError, match="unit disc"):
            solve_regular_bvp(g, Nonlinearity())


@pytest.fixture(scope="module")
def profile():
    g = build_grid(1024, 2.0, UNIT_DISC)
    t_needed = 2.0 * math.log(2048) + 0.5  # deep enough for the 2x refinement
    traj = integrate_trajectory(0.6, t_needed, max_step=PROFILE_MAX_STEP)
    return to_profile(traj, g)


class TestValidateSingular:
    def test_f_mass_and_localization(self, profile):
        rep = validate_singular(profile, Nonlinearity())
        # int f(Q) = 2 pi (alpha - ydot(T)) via the trajectory, so the value
        # must sit below 2 pi alpha and the refinement gap stays small
        assert 0.0 < rep.f_l1 < 2.0 * math.pi * 0.6
        assert rep.rel_gap <= 0.05
        assert rep.strictly_decreasing
        assert len(rep.localization) == 5

    def test_growth_signature_of_singular_window(self):
        # inside the window y(t_max) keeps rising while ydot decays: the
        # numerical signature of the unbounded branch
        ys, yds = [], []
        for tm in (30.0, 40.0, 60.0):
            c = integrate_trajectory(0.6, tm).classification
            assert c.kind == NO_CROSSING
            ys.append(c.y_end)
            yds.append(c.ydot_end)
        assert ys[0] < ys[1] < ys[2]
        assert yds[0] > yds[1] > yds[2] > 0.0


class TestWriters:
    def test_scan_csv(self, tmp_path):
        table = scan_alpha([0.5, 2.0], 20.0)
        p = tmp_path / "scan.csv"
        write_scan_csv(table, str(p))
        lines = p.read_text().splitlines()
        assert lines[0] == "alpha,classification,T_or_none,y_end,ydot_end"
        assert len(lines) == 3
        assert lines[1].split(",")[1] == NO_CROSSING
        assert lines[2].split(",")[1] == CROSSING

    def test_profile_csv(self, tmp_path):
        g = build_grid(64, 1.0, UNIT_DISC)
        traj = integrate_trajectory(0.8, -math.log(g.nodes[1]) + 1.0, max_step=0.05)
        prof = to_profile(traj, g)
        p = tmp_path / "profile.csv"
        write_profile_csv(prof, str(p))
        lines = p.read_text().splitlines()
        assert lines[0] == "r,Q"
        assert len(lines) == 66
