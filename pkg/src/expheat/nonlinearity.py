"""The nonlinearity family f(u) = +/- u(e^{u^2}-1) and its variants.

The "full" variant is f(u) = s*u*(e^{u^2}-1) with closed-form antiderivative
F(u) = s*(e^{u^2}-1-u^2)/2; the "pure_exp" variant drops the -u term,
f(u) = s*u*e^{u^2}, F(u) = s*(e^{u^2}-1)/2.  The sign s = +1 (focusing)
amplifies, s = -1 (defocusing) damps: u*f(u) <= 0 everywhere when defocusing.

Evaluations are guarded: e^{u^2} overflows double precision near |u| ~ 27,
and quantities like u*f'(u) lose all meaning well before that, so any
|u| above ``overflow_guard`` (default 13, e^{169} ~ 1e73) raises instead
of silently returning infinities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OverflowGuardError

FOCUSING = "focusing"
DEFOCUSING = "defocusing"
FULL = "full"
PURE_EXP = "pure_exp"

# below this |u|, ratio evaluations switch to series to avoid 0/0
_SERIES_THRESHOLD = 1e-2


@dataclass(frozen=True)
class Nonlinearity:
    sign: str = FOCUSING
    variant: str = FULL
    overflow_guard: float = 13.0

    def __post_init__(self) -> None:
        if self.sign not in (FOCUSING, DEFOCUSING):
            raise ValueError(f"sign must be focusing or defocusing, got {self.sign!r}")
        if self.variant not in (FULL, PURE_EXP):
            raise ValueError(f"variant must be full or pure_exp, got {self.variant!r}")
        if self.overflow_guard <= 0.0:
            raise ValueError("overflow_guard must be positive")

    @property
    def s(self) -> float:
        return 1.0 if self.sign == FOCUSING else -1.0

    def _check(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if np.max(np.abs(u), initial=0.0) > self.overflow_guard:
            raise OverflowGuardError(
                f"|u| exceeds overflow guard {self.overflow_guard}"
            )
        return u

    def f(self, u):
        """f(u) with the configured sign and variant."""
        u = self._check(u)
        if self.variant == FULL:
            out = self.s * u * np.expm1(u * u)
        else:
            out = self.s * u * np.exp(u * u)
        return out if out.ndim else float(out)

    def antiderivative(self, u):
        """F(u) = int_0^u f(v) dv, in closed form."""
        u = self._check(u)
        if self.variant == FULL:
            out = 0.5 * self.s * (np.expm1(u * u) - u * u)
        else:
            out = 0.5 * self.s * np.expm1(u * u)
        return out if out.ndim else float(out)

    def fprime(self, u):
        """f'(u)."""
        u = self._check(u)
        usq = u * u
        if self.variant == FULL:
            out = self.s * (np.expm1(usq) + 2.0 * usq * np.exp(usq))
        else:
            out = self.s * (1.0 + 2.0 * usq) * np.exp(usq)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class MarginReport:
    """Scan of the superquadraticity ratio (u f(u) - 2F(u)) / F(u)."""

    inf_ratio: float
    argmin: float
    sample_spec: str


def _margin_ratio(nl: Nonlinearity, u: np.ndarray) -> np.ndarray:
    """(u f - 2F)/F, with a series branch near u = 0.

    For both variants u f - 2F = x^2/2 + x^3/3 + x^4/8 + x^5/30 + O(x^6)
    in x = u^2; the denominators differ (F ~ x^2/4 full, ~ x/2 pure_exp),
    so the ratio tends to 2 for the full variant and to 0 for pure_exp.
    """
    x = u * u
    out = np.empty_like(u)
    small = np.abs(u) < _SERIES_THRESHOLD
    xs = x[small]
    numer = xs * xs * (0.5 + xs * (1.0 / 3.0 + xs * (0.125 + xs / 30.0)))
    if nl.variant == FULL:
        denom = xs * xs * (0.25 + xs * (1.0 / 12.0 + xs * (1.0 / 48.0 + xs / 240.0)))
    else:
        denom = xs * (0.5 + xs * (0.25 + xs * (1.0 / 12.0 + xs / 48.0)))
    out[small] = numer / denom
    big = ~small
    ub = u[big]
    out[big] = (ub * nl.f(ub) - 2.0 * nl.antiderivative(ub)) / nl.antiderivative(ub)
    return out


def superquadratic_margin(
    nl: Nonlinearity,
    u_min: float = 1e-4,
    u_max: float | None = None,
    n_samples: int = 4096,
) -> MarginReport:
    """Infimum of (u f(u) - 2F(u))/F(u) over a log-spaced scan of |u|.

    Only meaningful when F > 0, i.e. for the focusing sign.  The full
    variant has ratio >= 2 with the infimum attained as u -> 0; for
    pure_exp the ratio decays to 0 with u, which is reported, not asserted.
    """
    if nl.sign != FOCUSING:
        raise ValueError("superquadratic margin is meaningless for defocusing f (F <= 0)")
    if u_max is None:
        u_max = nl.overflow_guard
    if not (0.0 < u_min < u_max):
        raise ValueError("need 0 < u_min < u_max")
    u = np.geomspace(u_min, u_max, n_samples)
    ratios = _margin_ratio(nl, u)
    k = int(np.argmin(ratios))
    spec = f"log-spaced |u| in [{u_min:g}, {u_max:g}], {n_samples} samples"
    return MarginReport(inf_ratio=float(ratios[k]), argmin=float(u[k]), sample_spec=spec)


@dataclass(frozen=True)
class LipschitzReport:
    max_ratio_f: float
    max_ratio_fprime: float
    n_pairs: int


def lipschitz_ratio_check(
    pairs: np.ndarray, eps: float, nl: Nonlinearity
) -> LipschitzReport:
    """Largest observed constant in the two mean-value bounds

        |f(U1)-f(U2)|  <= C |U1-U2| * sum_i (e^{(1+eps) U_i^2} - 1)
        |f'(U1)-f'(U2)| <= C |U1-U2| * sum_i (e^{2(1+eps) U_i^2} - 1)^{1/2}.

    A finite, seed-stable maximum over a large sample certifies a candidate
    C on that sample.  Pairs with U1 = U2 are degenerate and rejected.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    p = np.asarray(pairs, dtype=float)
    if p.ndim != 2 or p.shape[1] != 2:
        raise ValueError("pairs must have shape (m, 2)")
    u1, u2 = p[:, 0], p[:, 1]
    if np.any(u1 == u2):
        raise ValueError("degenerate pair with U1 = U2")
    scale = np.sqrt(2.0 * (1.0 + eps))
    if max(np.max(np.abs(u1)), np.max(np.abs(u2))) * scale > nl.overflow_guard:
        raise OverflowGuardError("pair values too large for the (1+eps) exponentials")

    gap = np.abs(u1 - u2)
    denom_f = gap * (np.expm1((1.0 + eps) * u1 * u1) + np.expm1((1.0 + eps) * u2 * u2))
    denom_fp = gap * (
        np.sqrt(np.expm1(2.0 * (1.0 + eps) * u1 * u1))
        + np.sqrt(np.expm1(2.0 * (1.0 + eps) * u2 * u2))
    )
    # guard division: denominators vanish only when both U's are 0, which
    # the degeneracy check has excluded except in the u -> 0 tail where the
    # numerator vanishes at the same cubic rate
    with np.errstate(invalid="ignore", divide="ignore"):
        rf = np.abs(nl.f(u1) - nl.f(u2)) / denom_f
        rfp = np.abs(nl.fprime(u1) - nl.fprime(u2)) / denom_fp
    rf = rf[np.isfinite(rf)]
    rfp = rfp[np.isfinite(rfp)]
    return LipschitzReport(
        max_ratio_f=float(np.max(rf)),
        max_ratio_fprime=float(np.max(rfp)),
        n_pairs=len(p),
    )
