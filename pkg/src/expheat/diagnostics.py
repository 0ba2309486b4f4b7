"""Diagnostic suites run over recorded evolutions.

All of these consume an EvolutionRecord with full-field snapshots and
re-derive quantities independently of the stepper: the dissipation check
compares energy drops against the accumulated ||du/dt||^2 integral, the
truncation diagnostic runs the level-set energy recursion that underlies
the defocusing sup bound, and the convexity diagnostic scans the
differential inequality that forces focusing blow-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import RadialField, h1_seminorm
from .heat import EvolutionRecord
from .nonlinearity import DEFOCUSING


@dataclass(frozen=True)
class DissipationReport:
    max_residual: float
    residuals: np.ndarray
    j_nonincreasing: bool


def dissipation_check(rec: EvolutionRecord) -> DissipationReport:
    """Residual of J(t2) - J(t1) + int_{t1}^{t2} ||du/dt||^2 per interval.

    The time derivative inside the integral comes from forward differences
    of the stepped fields (accumulated during the run), never from the PDE
    right-hand side, so this is an independent consistency check.
    """
    if rec.fields is None:
        raise ValueError("dissipation check needs full-field snapshots")
    if len(rec.times) < 2:
        raise ValueError("need at least two snapshots")
    j = np.array([s.energy_j for s in rec.snapshots])
    d = rec.dissipation_cum
    res = np.abs(np.diff(j) + np.diff(d))
    return DissipationReport(
        max_residual=float(np.max(res)),
        residuals=res,
        j_nonincreasing=bool(np.all(np.diff(j) <= 1e-12 * np.maximum(1.0, np.abs(j[:-1])))),
    )


@dataclass(frozen=True)
class DeGiorgiParams:
    m_level: float  # truncation ceiling M
    t0: float
    alpha_dg: float  # exponent > 2 in the recursion
    k_max: int = 8

    def __post_init__(self) -> None:
        if self.m_level <= 0.0 or self.t0 <= 0.0:
            raise ValueError("need M > 0 and t0 > 0")
        if self.alpha_dg <= 2.0:
            raise ValueError("need alpha_dg > 2")
        if self.k_max < 1:
            raise ValueError("need k_max >= 1")


@dataclass(frozen=True)
class DeGiorgiReport:
    levels: np.ndarray  # c_k
    u_levels: np.ndarray  # U_k, k = 0..k_max
    a_const: float
    c_const: float
    recursion_ok: np.ndarray  # bool per k = 1..k_max
    nonincreasing: bool
    tends_to_zero: bool


def degiorgi_diagnostic(rec: EvolutionRecord, p: DeGiorgiParams) -> DeGiorgiReport:
    """Truncation-level energies U_k and their decay recursion.

    With c_k = M(1 - 2^{-k}) and T_k = t0(1 - 2^{-k}),

        U_k = sup_{t >= T_k} ||(u - c_k)_+||_{L^2}^2
              + 2 int_{T_k}^{t_end} ||grad (u - c_k)_+||^2 dt

    over the recorded snapshots, and each step should obey
    U_k <= A C^{k-1} U_{k-1}^{alpha/2} with A = 2^{alpha/2+4} ||u0||^2 /
    (M^alpha t0) and C = 2^{alpha+1}.  Decay of U_k to zero is the discrete
    trace of the sup bound u <= M for t >= t0.
    """
    if rec.fields is None:
        raise ValueError("the truncation diagnostic needs full-field snapshots")
    if rec.nonlinearity is None or rec.nonlinearity.sign != DEFOCUSING:
        raise ValueError("the truncation diagnostic applies to defocusing runs")
    t = rec.times
    if t[-1] <= p.t0:
        raise ValueError("t_end must exceed t0")

    l2_u0_sq = rec.snapshots[0].l2 ** 2
    ks = np.arange(p.k_max + 1)
    levels = p.m_level * (1.0 - 0.5**ks)
    t_k = p.t0 * (1.0 - 0.5**ks)
    w = rec.grid.weights

    u_levels = np.empty(p.k_max + 1)
    for k in range(p.k_max + 1):
        sel = np.where(t >= t_k[k] - 1e-15)[0]
        sup_l2sq = 0.0
        grads = np.empty(len(sel))
        for j, idx in enumerate(sel):
            trunc = np.clip(rec.fields[idx] - levels[k], 0.0, None)
            sup_l2sq = max(sup_l2sq, float(w @ (trunc * trunc)))
            grads[j] = h1_seminorm(RadialField(rec.grid, trunc)) ** 2
        integral = float(np.trapezoid(grads, t[sel])) if len(sel) > 1 else 0.0
        u_levels[k] = sup_l2sq + 2.0 * integral

    a_const = 2.0 ** (p.alpha_dg / 2.0 + 4.0) * l2_u0_sq / (
        p.m_level**p.alpha_dg * p.t0
    )
    c_const = 2.0 ** (p.alpha_dg + 1.0)
    kk = np.arange(1, p.k_max + 1)
    bounds = a_const * c_const ** (kk - 1.0) * u_levels[:-1] ** (p.alpha_dg / 2.0)
    recursion_ok = u_levels[1:] <= bounds * (1.0 + 1e-12) + 1e-300
    return DeGiorgiReport(
        levels=levels,
        u_levels=u_levels,
        a_const=a_const,
        c_const=c_const,
        recursion_ok=recursion_ok,
        nonincreasing=bool(np.all(np.diff(u_levels) <= 1e-12 * np.maximum(u_levels[:-1], 1e-300))),
        tends_to_zero=bool(u_levels[-1] < 1e-6),
    )


@dataclass(frozen=True)
class ConvexityReport:
    t_alpha: float | None  # first snapshot time after which the inequality holds
    alpha_probe: float
    claim1_positive: bool  # int_0^t ||du/dt||^2 > 0 at the end of the run
    checked_times: np.ndarray
    inequality_ok: np.ndarray


def convexity_diagnostic(rec: EvolutionRecord, alpha_probe: float) -> ConvexityReport:
    """Scan V V'' >= (1 + alpha) (V')^2 with V(t) = (1/2) int_0^t ||u||^2 ds.

    V comes from the run's accumulated integral, V' = ||u(t)||^2/2 from the
    snapshots, V'' from centered differences of V' on the (nonuniform)
    snapshot times.  Returns the first snapshot time from which the
    inequality holds at every later checked snapshot, or None ("never").
    """
    if alpha_probe <= 0.0:
        raise ValueError("alpha_probe must be positive")
    if len(rec.times) < 3:
        raise ValueError("need at least 3 snapshots")
    t = rec.times
    v = rec.v_functional
    vp = 0.5 * np.array([s.l2**2 for s in rec.snapshots])
    vpp = (vp[2:] - vp[:-2]) / (t[2:] - t[:-2])
    # a vanishing V' makes the inequality hold vacuously; such degenerate
    # snapshots (stationary or zero runs) must not count as an onset
    ok = (v[1:-1] * vpp >= (1.0 + alpha_probe) * vp[1:-1] ** 2) & (vp[1:-1] > 0.0)
    t_alpha = None
    for i in range(len(ok)):
        if np.all(ok[i:]) and ok.size - i > 0:
            t_alpha = float(t[1 + i])
            break
    return ConvexityReport(
        t_alpha=t_alpha,
        alpha_probe=alpha_probe,
        claim1_positive=bool(rec.dissipation_cum[-1] > 0.0),
        checked_times=t[1:-1],
        inequality_ok=ok,
    )


@dataclass(frozen=True)
class SequenceLemmaCase:
    c_const: float
    beta: float
    x0: float
    n_max: int = 60
    # update(n, x_n) -> x_{n+1}; defaults to the extremal rule C^n * x_n^beta
    update: Callable[[int, float], float] | None = None

    def __post_init__(self) -> None:
        if self.c_const <= 1.0:
            raise ValueError("need C > 1")
        if self.beta <= 1.0:
            raise ValueError("need beta > 1")
        if self.x0 < 0.0:
            raise ValueError("need x0 >= 0")

    @property
    def c0_star(self) -> float:
        return self.c_const ** (-1.0 / (self.beta - 1.0) ** 2)


@dataclass(frozen=True)
class SequenceLemmaResult:
    trace: np.ndarray
    converged_to_zero: bool
    bound_applies: bool  # x0 <= C0*
    bound_ok: bool  # x_n <= C^{-(1+n(beta-1))/(beta-1)^2} whenever it applies


def sequence_lemma_check(case: SequenceLemmaCase) -> SequenceLemmaResult:
    """Iterate x_{n+1} <= C^n x_n^beta and verify the closed-form decay bound.

    Starting at or below the threshold C0* = C^{-1/(beta-1)^2} forces
    x_n <= C^{-(1+n(beta-1))/(beta-1)^2} -> 0; above the threshold the lemma
    is silent, so divergence is only reported.
    """
    update = case.update or (lambda n, x: case.c_const**n * x**case.beta)
    xs = [case.x0]
    for n in range(case.n_max):
        x_next = update(n, xs[-1])
        if x_next < 0.0:
            raise ValueError("sequence became negative; lemma hypotheses need x_n >= 0")
        xs.append(x_next)
        if not math.isfinite(x_next) or x_next > 1e100:
            break
    trace = np.array(xs)
    applies = case.x0 <= case.c0_star * (1.0 + 1e-12)
    bound_ok = True
    if applies:
        n = np.arange(len(trace))
        bound = case.c_const ** (
            -(1.0 + n * (case.beta - 1.0)) / (case.beta - 1.0) ** 2
        )
        bound_ok = bool(np.all(trace <= bound * (1.0 + 1e-12)))
    return SequenceLemmaResult(
        trace=trace,
        converged_to_zero=bool(np.any(trace < 1e-12)),
        bound_applies=applies,
        bound_ok=bound_ok,
    )
