"""Radial stationary solutions on the unit disc by shooting.

Writing u(x) = y(t) with r = |x| = e^{-t} turns the stationary equation
-Lap(u) = f(u) on the punctured disc into the forced oscillator

    -y''(t) = e^{-2t} f(y(t)),   y(0) = 0,  y'(0) = alpha > 0,

integrated here with an adaptive embedded Runge-Kutta pair and event
detection for the first zero of y.  Trajectories are classified as
crossing (y vanishes before the horizon) or non-crossing; non-crossing
trajectories transform back to radial profiles Q(r) = y(-ln r), the
candidates for bounded (unique) and singular (a whole window of slopes)
stationary solutions.  A damped Newton solve of the discrete boundary
value problem provides the cross-method check for the bounded one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import PchipInterpolator
from scipy.linalg import solve_banded

from .errors import NewtonError
from .grid import RadialField, RadialGrid, UNIT_DISC, build_grid, laplacian_tridiagonal
from .nonlinearity import FOCUSING, FULL, Nonlinearity
from .orlicz import luxemburg_norm

CROSSING = "crossing"
NO_CROSSING = "no_crossing_by_tmax"
GUARD_OVERFLOW = "guard_overflow"
SCAN_ERROR = "error"

# sample spacing for trajectories meant to become profiles: the monotone
# cubic interpolant's curvature error enters the discrete Laplacian through
# 1/r^2 and must stay below the stencil error of fine grids
PROFILE_MAX_STEP = 1e-3


@dataclass(frozen=True)
class Classification:
    kind: str
    t_cross: float | None
    y_end: float
    ydot_end: float


@dataclass(frozen=True)
class ShootingTrajectory:
    alpha: float
    t: np.ndarray
    y: np.ndarray
    ydot: np.ndarray
    classification: Classification
    t_max: float
    tol: float


def _require_stationary_nl(nl: Nonlinearity) -> None:
    if nl.sign != FOCUSING or nl.variant != FULL:
        raise ValueError("the stationary problem uses the focusing full nonlinearity")


def integrate_trajectory(
    alpha: float,
    t_max: float,
    tol: float = 1e-10,
    nl: Nonlinearity | None = Nonlinearity(),
    max_step: float = math.inf,
) -> ShootingTrajectory:
    """Integrate the shooting problem from slope alpha.

    ``nl=None`` disables the forcing entirely (free motion y = alpha*t),
    a hook used to validate the integrator and the profile transform.
    Reaching |y| = overflow_guard terminates with the distinct
    ``guard_overflow`` classification carrying the last valid state.
    """
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    if alpha == 0.0:
        t = np.array([0.0, t_max])
        zeros = np.zeros_like(t)
        return ShootingTrajectory(
            alpha=0.0, t=t, y=zeros, ydot=zeros.copy(),
            classification=Classification(NO_CROSSING, None, 0.0, 0.0),
            t_max=t_max, tol=tol,
        )
    if nl is None:
        def rhs(t, z):
            return (z[1], 0.0)
        events = []
    else:
        _require_stationary_nl(nl)
        guard = nl.overflow_guard

        def rhs(t, z):
            y = z[0]
            return (z[1], -math.exp(-2.0 * t) * y * math.expm1(min(y * y, 340.0)))

        def cross(t, z):
            return z[0]

        cross.terminal = True
        cross.direction = -1.0

        def hit_guard(t, z):
            return abs(z[0]) - guard

        hit_guard.terminal = True
        events = [cross, hit_guard]

    sol = solve_ivp(
        rhs, (0.0, t_max), [0.0, alpha],
        rtol=tol, atol=1e-2 * tol, events=events or None, max_step=max_step,
        dense_output=False,
    )
    if not sol.success:  # pragma: no cover - integrator failure path
        raise RuntimeError(f"trajectory integration failed: {sol.message}")
    t, y, yd = sol.t, sol.y[0], sol.y[1]
    if events and sol.t_events[0].size:
        t_c = float(sol.t_events[0][0])
        cls = Classification(CROSSING, t_c, float(y[-1]), float(yd[-1]))
    elif events and sol.t_events[1].size:
        cls = Classification(GUARD_OVERFLOW, None, float(y[-1]), float(yd[-1]))
    else:
        cls = Classification(NO_CROSSING, None, float(y[-1]), float(yd[-1]))
    return ShootingTrajectory(
        alpha=float(alpha), t=t, y=y, ydot=yd,
        classification=cls, t_max=t_max, tol=tol,
    )


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    kind: str
    t_cross: float | None
    y_end: float
    ydot_end: float


@dataclass(frozen=True)
class ScanTable:
    rows: tuple[ScanRow, ...]
    t_max: float
    tol: float

    def windows(self) -> list[tuple[int, int]]:
        """Index ranges [i, j] of maximal contiguous non-crossing runs."""
        out = []
        start = None
        for i, row in enumerate(self.rows):
            if row.kind == NO_CROSSING:
                if start is None:
                    start = i
            else:
                if start is not None:
                    out.append((start, i - 1))
                    start = None
        if start is not None:
            out.append((start, len(self.rows) - 1))
        return out

    def widest_window(self) -> tuple[float, float]:
        """Alpha bounds of the longest non-crossing run."""
        wins = self.windows()
        if not wins:
            raise ValueError("scan found no non-crossing window")
        i, j = max(wins, key=lambda ij: ij[1] - ij[0])
        return self.rows[i].alpha, self.rows[j].alpha


def scan_alpha(
    alphas, t_max: float, tol: float = 1e-10, nl: Nonlinearity | None = Nonlinearity()
) -> ScanTable:
    """Classify each slope; per-entry failures are recorded, not raised."""
    alphas = np.asarray(alphas, dtype=float)
    if alphas.size and np.any(np.diff(alphas) <= 0.0):
        raise ValueError("alphas must be increasing")
    rows = []
    for a in alphas:
        try:
            traj = integrate_trajectory(a, t_max, tol, nl)
            c = traj.classification
            rows.append(ScanRow(float(a), c.kind, c.t_cross, c.y_end, c.ydot_end))
        except Exception:
            rows.append(ScanRow(float(a), SCAN_ERROR, None, math.nan, math.nan))
    return ScanTable(rows=tuple(rows), t_max=t_max, tol=tol)


def bisect_boundary(
    lo: float,
    hi: float,
    t_max: float,
    tol: float = 1e-10,
    width: float = 1e-6,
    nl: Nonlinearity | None = Nonlinearity(),
) -> float:
    """Bisect between slopes that classify differently at the horizon.

    Accepts the bracket in either orientation (crossing below or above) as
    long as lo < hi and the two endpoints disagree; returns the midpoint of
    the final bracket of the requested width.
    """
    if not lo < hi:
        raise ValueError("need lo < hi (swapped bracket rejected)")

    def is_crossing(a: float) -> bool:
        return integrate_trajectory(a, t_max, tol, nl).classification.kind == CROSSING

    c_lo = is_crossing(lo)
    c_hi = is_crossing(hi)
    if c_lo == c_hi:
        raise ValueError("bracket endpoints classify identically; nothing to bisect")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if is_crossing(mid) == c_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def extrapolate_boundary(b1: float, t1: float, b2: float, t2: float) -> float:
    """Remove the leading O(1/t_max) horizon bias from two boundary estimates.

    The crossing time diverges like C/(alpha - alpha0) at the window edge,
    so the bisected boundary at horizon T sits near alpha0 + C/T; two
    horizons determine alpha0.
    """
    if t1 == t2:
        raise ValueError("need two distinct horizons")
    return (t2 * b2 - t1 * b1) / (t2 - t1)


@dataclass(frozen=True)
class SingularProfile:
    field: RadialField
    alpha: float
    trajectory: ShootingTrajectory

    @property
    def cap_value(self) -> float:
        """The truncation value stored at the r = 0 node."""
        return float(self.field.values[0])


def to_profile(traj: ShootingTrajectory, grid: RadialGrid) -> SingularProfile:
    """Transform a non-crossing trajectory to the radial profile y(-ln r).

    Needs r_1 >= e^{-t_max} so every positive-radius node is covered by the
    trajectory; the r = 0 node carries y(t_max) as a truncation cap (the
    genuine profile is unbounded for singular slopes).  Interpolation is
    monotone cubic, so the concave increasing y produces no overshoot.
    """
    if traj.classification.kind != NO_CROSSING:
        raise ValueError("profiles need a non-crossing trajectory (y > 0 up to t_max)")
    if grid.domain_kind != UNIT_DISC:
        raise ValueError("profiles live on the unit disc")
    t_inner = -math.log(grid.nodes[1])
    if t_inner > traj.t[-1] * (1.0 + 1e-12):
        raise ValueError(
            f"grid needs t = {t_inner:.3f} at r_1 but the trajectory stops "
            f"at t = {traj.t[-1]:.3f}"
        )
    interp = PchipInterpolator(traj.t, traj.y)
    vals = np.empty_like(grid.nodes)
    with np.errstate(divide="ignore"):
        t_nodes = -np.log(grid.nodes[1:])
    vals[1:] = interp(np.clip(t_nodes, 0.0, traj.t[-1]))
    vals[0] = traj.y[-1]
    vals[-1] = 0.0
    return SingularProfile(field=RadialField(grid, vals), alpha=traj.alpha, trajectory=traj)


@dataclass(frozen=True)
class BvpResult:
    field: RadialField
    scaled_residual: float
    iterations: int
    damping_engaged: bool


def solve_regular_bvp(
    grid: RadialGrid,
    nl: Nonlinearity,
    init_amplitude: float = 1.0,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> BvpResult:
    """Damped Newton for the discrete system Lap(u) + f(u) = 0, u(1) = 0.

    Convergence is measured in the row-scaled sup norm
    max_i |res_i| / (1 + |L_ii|): the raw residual carries the O(1/h^2)
    row weights of the Laplacian (~1e15 near the origin of a graded grid),
    which floating point cannot push to 1e-10.  Whether damping engaged is
    reported; the trivial solution u = 0 attracts small initial amplitudes,
    so callers wanting the positive solution should start near it.
    """
    if grid.domain_kind != UNIT_DISC:
        raise ValueError("the boundary value problem is posed on the unit disc")
    _require_stationary_nl(nl)
    lower, diag, upper = laplacian_tridiagonal(grid)
    n = grid.n_nodes
    scale = 1.0 + np.abs(diag)
    scale[-1] = 1.0

    def residual(u: np.ndarray) -> np.ndarray:
        res = diag * u
        res[1:] += lower[1:] * u[:-1]
        res[:-1] += upper[:-1] * u[1:]
        res += nl.f(u)
        res[-1] = u[-1]
        return res

    def scaled_sup(res: np.ndarray) -> float:
        return float(np.max(np.abs(res) / scale))

    u = init_amplitude * (1.0 - grid.nodes**2)
    damping_engaged = False
    for it in range(max_iter):
        res = residual(u)
        r0 = scaled_sup(res)
        if r0 <= tol:
            return BvpResult(RadialField(grid, u), r0, it, damping_engaged)
        ab = np.zeros((3, n))
        ab[0, 1:] = upper[:-1]
        ab[1, :] = diag + nl.fprime(u)
        ab[2, :-1] = lower[1:]
        ab[1, -1] = 1.0
        ab[0, -1] = 0.0
        ab[2, -2] = 0.0
        step = solve_banded((1, 1), ab, -res)
        lam = 1.0
        while lam > 1e-10:
            u_try = u + lam * step
            if (
                np.max(np.abs(u_try)) < nl.overflow_guard
                and scaled_sup(residual(u_try)) < r0
            ):
                break
            lam *= 0.5
            damping_engaged = True
        u = u + lam * step
    raise NewtonError(
        f"no convergence after {max_iter} damped iterations "
        f"(scaled residual {scaled_sup(residual(u)):.3e})"
    )


@dataclass(frozen=True)
class SingularValidation:
    f_l1: float
    f_l1_refined: float
    rel_gap: float
    localization_radii: tuple[float, ...]
    localization: tuple[float, ...]
    strictly_decreasing: bool


def validate_singular(
    q: SingularProfile,
    nl: Nonlinearity,
    radii: tuple[float, ...] = (0.5, 0.2, 0.1, 0.05, 0.02),
) -> SingularValidation:
    """Integrability of f(Q) and localization of the Orlicz norm near 0.

    int_{B_1} f(Q) dx is evaluated from r_1 outward (the r = 0 node carries
    a truncation cap, not a sample) on the profile's grid and on one with
    doubled node count rebuilt from the same trajectory; the relative gap
    is the convergence certificate.  Localized Luxemburg norms over
    |x| < r are reported for the given radii.
    """
    _require_stationary_nl(nl)
    grid = q.field.grid
    r1 = float(grid.nodes[1])

    def f_mass(profile: SingularProfile) -> float:
        g = profile.field.grid
        mask = g.nodes >= g.nodes[1]
        return float(g.weights[mask] @ nl.f(profile.field.values[mask]))

    coarse = f_mass(q)
    n = grid.n_nodes - 1
    fine_grid = build_grid(2 * n, grid.grading_exponent, grid.domain_kind, grid.radius)
    fine = f_mass(to_profile(q.trajectory, fine_grid))
    gap = abs(fine - coarse) / max(abs(fine), abs(coarse), 1e-300)

    loc = tuple(
        luxemburg_norm(q.field, sub_radius=rad, min_radius=r1) for rad in radii
    )
    decreasing = all(loc[i + 1] < loc[i] for i in range(len(loc) - 1))
    return SingularValidation(
        f_l1=coarse,
        f_l1_refined=fine,
        rel_gap=gap,
        localization_radii=tuple(float(r) for r in radii),
        localization=loc,
        strictly_decreasing=decreasing,
    )


def write_scan_csv(table: ScanTable, path: str) -> None:
    """Scan table CSV: alpha, classification, T_or_none, y_end, ydot_end."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("alpha,classification,T_or_none,y_end,ydot_end\n")
        for row in table.rows:
            t_str = "" if row.t_cross is None else f"{row.t_cross:.17g}"
            fh.write(
                f"{row.alpha:.17g},{row.kind},{t_str},"
                f"{row.y_end:.17g},{row.ydot_end:.17g}\n"
            )


def write_profile_csv(profile: SingularProfile, path: str) -> None:
    """Two-column CSV of the profile: r, Q."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,Q\n")
        for r, v in zip(profile.field.grid.nodes, profile.field.values):
            fh.write(f"{r:.17g},{v:.17g}\n")
