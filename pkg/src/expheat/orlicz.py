"""Luxemburg norms, Orlicz embedding checks, and exponential-moment quadrature.

The Orlicz space here is built from phi(s) = e^{s^2} - 1, the sharp target
of the planar Sobolev embedding.  The Luxemburg norm of a field u is

    ||u|| = inf { lam > 0 : int phi(|u|/lam) dx <= 1 },

computed by bisection on ln(lam): the integral is strictly decreasing in
lam wherever it is positive, and the admissible set is a half line [A, inf),
so the returned value is the smallest probed lam whose integral is <= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import gamma

from .errors import BracketError, OverflowGuardError
from .grid import RadialField, RadialGrid, build_grid, h1_seminorm, hat_weights, lp_norm

# largest exponent passed to expm1; e^{169} matches the |u| <= 13 guard
_EXP_ARG_CAP = 169.0


def _masked_quadrature(
    field: RadialField, sub_radius: float | None, min_radius: float | None
) -> tuple[np.ndarray, np.ndarray]:
    """Node values and hat weights restricted to min_radius <= r <= sub_radius.

    Weights are rebuilt on the restricted node sequence, so the quadrature
    covers exactly the annulus (or sub-disc) spanned by the kept nodes.
    """
    r = field.grid.nodes
    lo = 0.0 if min_radius is None else min_radius
    hi = field.grid.radius if sub_radius is None else sub_radius
    if sub_radius is not None and not (0.0 < sub_radius <= field.grid.radius):
        raise ValueError("sub_radius must lie in (0, R]")
    mask = (r >= lo) & (r <= hi)
    if np.count_nonzero(mask) < 2:
        raise ValueError("restriction keeps fewer than 2 nodes")
    if lo == 0.0 and hi == field.grid.radius:
        return field.values, field.grid.weights
    return field.values[mask], hat_weights(r[mask])


def orlicz_integral(
    field: RadialField,
    lam: float,
    sub_radius: float | None = None,
    min_radius: float | None = None,
) -> float:
    """int phi(|u|/lam) dx by grid quadrature; inf when it overflows."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    v, w = _masked_quadrature(field, sub_radius, min_radius)
    s = (v / lam) ** 2
    small = s <= _EXP_ARG_CAP
    total = float(w[small] @ np.expm1(s[small]))
    big = ~small
    if np.any(big):
        with np.errstate(divide="ignore"):
            logs = s[big] + np.log(w[big])
        if np.any(logs > 0.0):
            return math.inf
        total += float(np.sum(np.exp(logs)))
    return total


def luxemburg_norm(
    field: RadialField,
    sub_radius: float | None = None,
    rel_tol: float = 1e-10,
    min_radius: float | None = None,
) -> float:
    """Luxemburg norm of u, optionally restricted to the disc |x| < sub_radius.

    ``min_radius`` drops nodes below it from the quadrature; profiles whose
    r = 0 node carries a truncation cap are integrated from r_1 outward this
    way.  Bisection runs on ln(lam) over the bracket
    [1e-8 * sup|u|, 1e3 * sup|u|]; failure to bracket from above is reported
    as a distinct error.
    """
    if rel_tol <= 0.0:
        raise ValueError("rel_tol must be positive")
    v, w = _masked_quadrature(field, sub_radius, min_radius)
    vmax = float(np.max(np.abs(v)))
    if vmax == 0.0:
        return 0.0

    def exceeds_one(ln_lam: float) -> bool:
        lam = math.exp(ln_lam)
        s = (np.abs(v) / lam) ** 2
        small = s <= _EXP_ARG_CAP
        big = ~small
        if np.any(big):
            with np.errstate(divide="ignore"):
                logs = s[big] + np.log(w[big])
            if np.any(logs > 0.0):
                return True
            extra = float(np.sum(np.exp(logs)))
        else:
            extra = 0.0
        return float(w[small] @ np.expm1(s[small])) + extra > 1.0

    lo = math.log(1e-8 * vmax)
    hi = math.log(1e3 * vmax)
    if exceeds_one(hi):
        raise BracketError(
            "Orlicz integral exceeds 1 even at lam = 1e3 * sup|u|; no bracket"
        )
    for _ in range(8):
        if exceeds_one(lo):
            break
        lo -= 7.0  # ~3 decades; handles fields far below unit Orlicz mass
    else:
        return math.exp(lo)
    gap = math.log1p(rel_tol)
    for _ in range(200):
        if hi - lo <= gap:
            break
        mid = 0.5 * (lo + hi)
        if exceeds_one(mid):
            lo = mid
        else:
            hi = mid
    # the hi end certifies integral <= 1, which keeps the L^p embedding
    # inequality exact on the discrete quadrature
    return math.exp(hi)


@dataclass(frozen=True)
class EmbeddingReport:
    p: float
    lp: float
    luxemburg: float
    ratio: float
    bound: float


def embedding_check(field: RadialField, p: int) -> EmbeddingReport:
    """Ratio ||u||_{L^p} / ||u||_orlicz against the Gamma(p/2+1)^{1/p} bound."""
    if p < 2 or p % 2 != 0:
        raise ValueError("embedding check needs an even exponent p >= 2")
    lux = luxemburg_norm(field)
    if lux == 0.0:
        raise ValueError("embedding ratio undefined for the zero field")
    lp = lp_norm(field, float(p))
    return EmbeddingReport(
        p=float(p),
        lp=lp,
        luxemburg=lux,
        ratio=lp / lux,
        bound=float(gamma(p / 2.0 + 1.0) ** (1.0 / p)),
    )


def mt_functional(field: RadialField, alpha: float) -> float:
    """int (e^{alpha u^2} - 1) dx over the grid domain."""
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    peak = alpha * float(np.max(np.abs(field.values))) ** 2
    if peak > _EXP_ARG_CAP:
        raise OverflowGuardError(
            f"alpha * sup|u|^2 = {peak:.3g} exceeds the exp guard {_EXP_ARG_CAP}"
        )
    return float(field.grid.weights @ np.expm1(alpha * field.values**2))


def moser_field(grid: RadialGrid, k: float) -> RadialField:
    """The standard concentrating profile with unit gradient norm:

        u_k(r) = sqrt(ln k / 2 pi)            for r <= 1/k,
                 ln(1/r) / sqrt(2 pi ln k)    for 1/k < r <= 1,
                 0                            for r > 1.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    r = grid.nodes
    lk = math.log(k)
    vals = np.zeros_like(r)
    inner = r <= 1.0 / k
    ring = (r > 1.0 / k) & (r <= 1.0)
    vals[inner] = math.sqrt(lk / (2.0 * math.pi))
    with np.errstate(divide="ignore"):
        vals[ring] = -np.log(r[ring]) / math.sqrt(2.0 * math.pi * lk)
    return RadialField(grid, vals)


@dataclass(frozen=True)
class MoserScanTable:
    """Ratios mt_functional(u_k, alpha) / ||u_k||_{L^2}^2 across the family."""

    alphas: tuple[float, ...]
    ks: tuple[int, ...]
    ratios: np.ndarray  # shape (len(alphas), len(ks))
    functionals: np.ndarray
    l2_squared: np.ndarray  # per k, after gradient normalization
    seminorms: np.ndarray  # measured discrete gradient norms before rescaling


def mt_sharpness_scan(
    grid: RadialGrid, alphas: tuple[float, ...], ks: tuple[int, ...]
) -> MoserScanTable:
    """Probe boundedness of the exponential-moment/L^2 ratio across u_k.

    Each profile is rescaled by its measured discrete gradient seminorm, so
    the constraint side of the inequality is exactly 1 on the grid.  Below
    the critical coefficient 4*pi the ratio column stays bounded in k; above
    it the concentrating inner disc makes the ratio grow without bound.
    The table only reports; callers decide what to assert.
    """
    semis = np.empty(len(ks))
    fields = []
    for j, k in enumerate(ks):
        u = moser_field(grid, k)
        semis[j] = h1_seminorm(u)
        fields.append(RadialField(grid, u.values / semis[j]))
    ratios = np.empty((len(alphas), len(ks)))
    functionals = np.empty_like(ratios)
    l2sq = np.array([lp_norm(u, 2.0) ** 2 for u in fields])
    for i, a in enumerate(alphas):
        for j, u in enumerate(fields):
            functionals[i, j] = mt_functional(u, a)
            ratios[i, j] = functionals[i, j] / l2sq[j]
    return MoserScanTable(
        alphas=tuple(float(a) for a in alphas),
        ks=tuple(int(k) for k in ks),
        ratios=ratios,
        functionals=functionals,
        l2_squared=l2sq,
        seminorms=semis,
    )


@dataclass(frozen=True)
class RefinementValue:
    value: float
    value_refined: float
    rel_gap: float


def exp_integrability(field: RadialField, alpha: float, q: float) -> RefinementValue:
    """int (e^{alpha u^2} - 1)^q dx at the field's resolution and at 2x.

    The refined evaluation interpolates the field monotone-cubically onto a
    grid with doubled node count (same grading and domain); the relative gap
    between the two values is the convergence certificate.
    """
    if q < 1.0:
        raise ValueError("need q >= 1")
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    peak = alpha * float(np.max(np.abs(field.values))) ** 2
    if peak > _EXP_ARG_CAP:
        raise OverflowGuardError("alpha * sup|u|^2 exceeds the exp guard")

    def value_on(g: RadialGrid, vals: np.ndarray) -> float:
        return float(g.weights @ np.expm1(alpha * vals**2) ** q)

    g = field.grid
    coarse = value_on(g, field.values)
    n = g.n_nodes - 1
    fine = build_grid(2 * n, g.grading_exponent, g.domain_kind, g.radius)
    vals_fine = PchipInterpolator(g.nodes, field.values)(fine.nodes)
    refined = value_on(fine, vals_fine)
    denom = max(abs(refined), abs(coarse), 1e-300)
    return RefinementValue(
        value=coarse, value_refined=refined, rel_gap=abs(refined - coarse) / denom
    )
