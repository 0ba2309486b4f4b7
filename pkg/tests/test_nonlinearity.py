import math

import mpmath
import numpy as np
import pytest

from expheat import (
    DEFOCUSING,
    FOCUSING,
    FULL,
    PURE_EXP,
    Nonlinearity,
    OverflowGuardError,
    lipschitz_ratio_check,
    superquadratic_margin,
)

E = math.e


class TestEvaluations:
    @pytest.mark.parametrize("sign", [FOCUSING, DEFOCUSING])
    @pytest.mark.parametrize("variant", [FULL, PURE_EXP])
    def test_origin_values(self, sign, variant):
        nl = Nonlinearity(sign=sign, variant=variant)
        assert nl.f(0.0) == 0.0
        assert nl.antiderivative(0.0) == 0.0
        if variant == FULL:
            assert nl.fprime(0.0) == 0.0

    def test_closed_form_antiderivative(self):
        nl = Nonlinearity()
        assert nl.antiderivative(1.0) == pytest.approx((E - 2.0) / 2.0, rel=1e-14)

    def test_sign_convention(self):
        foc = Nonlinearity(sign=FOCUSING)
        de = Nonlinearity(sign=DEFOCUSING)
        u = np.array([-2.0, -0.5, 0.3, 1.7])
        assert np.all(np.sign(foc.f(u)) == np.sign(u))
        assert np.all(u * de.f(u) <= 0.0)

    @pytest.mark.parametrize("variant", [FULL, PURE_EXP])
    def test_oddness(self, variant):
        nl = Nonlinearity(variant=variant)
        u = np.linspace(0.05, 3.0, 40)
        assert np.allclose(nl.f(-u), -nl.f(u), rtol=1e-15)
        assert np.allclose(nl.antiderivative(-u), nl.antiderivative(u), rtol=1e-15)

    @pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("variant", [FULL, PURE_EXP])
    def test_fprime_matches_finite_differences(self, u, variant):
        nl = Nonlinearity(variant=variant)
        h = 1e-6 * max(1.0, u)
        fd = (nl.f(u + h) - nl.f(u - h)) / (2.0 * h)
        assert nl.fprime(u) == pytest.approx(fd, rel=1e-6)

    @pytest.mark.parametrize("u", [0.3, 1.1, 2.4])
    def test_antiderivative_matches_f(self, u):
        nl = Nonlinearity()
        h = 1e-6
        fd = (nl.antiderivative(u + h) - nl.antiderivative(u - h)) / (2.0 * h)
        assert fd == pytest.approx(nl.f(u), rel=1e-6)

    def test_overflow_guard(self):
        nl = Nonlinearity()
        with pytest.raises(OverflowGuardError):
            nl.f(13.5)
        with pytest.raises(OverflowGuardError):
            nl.antiderivative(np.array([0.0, 14.0]))

    def test_bad_settings_rejected(self):
        with pytest.raises(ValueError):
            Nonlinearity(sign="attracting")
        with pytest.raises(ValueError):
            Nonlinearity(variant="cubic")
        with pytest.raises(ValueError):
            Nonlinearity(overflow_guard=-1.0)


class TestSuperquadraticMargin:
    def test_small_u_limit_is_two(self):
        rep = superquadratic_margin(Nonlinearity(), u_min=1e-4, n_samples=64)
        # the ratio tends to 2 from above as u -> 0, so the scan infimum
        # sits at the smallest sample
        assert rep.inf_ratio == pytest.approx(2.0, abs=1e-6)
        assert rep.argmin == pytest.approx(1e-4, rel=1e-12)

    def test_scan_infimum_at_least_two(self):
        rep = superquadratic_margin(Nonlinearity())
        assert rep.inf_ratio >= 2.0 - 1e-3

    def test_ratio_against_arbitrary_precision(self):
        # direct evaluation at u = 3 cross-checked with 50-digit arithmetic
        nl = Nonlinearity()
        u = 3.0
        got = (u * nl.f(u) - 2.0 * nl.antiderivative(u)) / nl.antiderivative(u)
        with mpmath.workdps(50):
            x = mpmath.mpf(3) ** 2
            f = mpmath.mpf(3) * (mpmath.e**x - 1)
            big_f = (mpmath.e**x - 1 - x) / 2
            want = float((3 * f - 2 * big_f) / big_f)
        assert got == pytest.approx(want, rel=1e-12)

    def test_defocusing_rejected(self):
        with pytest.raises(ValueError, match="defocusing"):
            superquadratic_margin(Nonlinearity(sign=DEFOCUSING))

    def test_pure_exp_margin_reported_not_asserted(self):
        # removing the -u term makes F quadratic near 0, so the ratio decays
        # with the scan floor instead of staying near 2; the scan just
        # reports the (tiny, positive) infimum
        rep = superquadratic_margin(Nonlinearity(variant=PURE_EXP))
        assert 0.0 < rep.inf_ratio < 0.1
        assert rep.argmin == pytest.approx(1e-4, rel=1e-12)


class TestLipschitzRatios:
    def test_small_pair_limit_finite(self):
        nl = Nonlinearity()
        for u in (1e-3, 1e-5):
            rep = lipschitz_ratio_check(np.array([[u, 0.0]]), eps=1.0, nl=nl)
            # both sides scale like u^3, with ratio -> 1/(1+eps)
            assert rep.max_ratio_f == pytest.approx(0.5, abs=1e-3)

    def test_random_sample_stable_across_seeds(self):
        nl = Nonlinearity()
        maxima = []
        for seed in (0, 1):
            rng = np.random.default_rng(seed)
            pairs = rng.uniform(-3.0, 3.0, size=(100_000, 2))
            pairs = pairs[pairs[:, 0] != pairs[:, 1]]
            rep = lipschitz_ratio_check(pairs, eps=1.0, nl=nl)
            assert math.isfinite(rep.max_ratio_f)
            assert math.isfinite(rep.max_ratio_fprime)
            maxima.append(rep.max_ratio_f)
        assert abs(maxima[0] - maxima[1]) <= 0.05 * max(maxima)

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            lipschitz_ratio_check(np.array([[2.0, 2.0]]), eps=1.0, nl=Nonlinearity())

    def test_overflow_guard(self):
        with pytest.raises(OverflowGuardError):
            lipschitz_ratio_check(np.array([[12.0, 0.0]]), eps=1.0, nl=Nonlinearity())
