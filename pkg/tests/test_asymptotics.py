"""Tests for the asymptotic main terms, saddle machinery, and sign-change fits."""

import math

import mpmath
import pytest
from mpmath import mpf, workdps

from zetadiff import asymptotics, differences
from zetadiff.errors import DomainError, FitError


def test_envelope_bound_value():
    # closed form: 2 (2n/pi)^(1/4) e^(-2 sqrt(pi n))
    with workdps(30):
        want = 2 * (mpf(64) / mpmath.pi) ** mpf("0.25") * mpmath.exp(
            -2 * mpmath.sqrt(32 * mpmath.pi)
        )
        got = asymptotics.envelope_bound(32, 30)
        assert abs(got - want) <= mpf("1e-25")


def test_envelope_bound_domain():
    for bad in (1, 0, -5):
        with pytest.raises(DomainError):
            asymptotics.envelope_bound(bad)


def test_envelope_actually_bounds():
    pts = differences.sequence_many("b", list(range(2, 101)), 15)
    for p in pts:
        assert abs(p.value) <= asymptotics.envelope_bound(p.n, 15)


def test_b_asym_structure():
    est = asymptotics.b_asym(50)
    with workdps(30):
        amp_want = (2 * mpf(50) / mpmath.pi) ** mpf("0.25") * mpmath.exp(
            -2 * mpmath.sqrt(50 * mpmath.pi)
        )
        phase_want = 2 * mpmath.sqrt(50 * mpmath.pi) - 5 * mpmath.pi / 8
        assert abs(est.amplitude - amp_want) <= mpf("1e-20")
        assert abs(est.phase - phase_want) <= mpf("1e-20")
        assert abs(est.main - est.amplitude * mpmath.cos(est.phase)) <= mpf("1e-20")


def test_b_asym_tracks_exact():
    # at n = 200 the main term lands within one envelope-decay unit
    n = 200
    exact = differences.b(n, 20).value
    est = asymptotics.b_asym(n)
    with workdps(30):
        unit = mpf(n) ** mpf("-0.25") * mpmath.exp(-2 * mpmath.sqrt(mpmath.pi * n))
        assert abs(exact - est.main) / unit < 5


def test_a_asym_reduces_to_b():
    for n in (1, 5, 12):
        a_est = asymptotics.a_asym(n, (1, 1))
        b_est = asymptotics.b_asym(n)
        assert abs(a_est.main - b_est.main) <= mpf("1e-25")


def test_a_asym_bad_convention():
    with pytest.raises(DomainError):
        asymptotics.a_asym(10, (1, 2), convention="upside-down")


def test_select_phase_convention():
    # frozen residuals in envelope units at n = 200; the derived phase wins
    want = {(1, 2): 0.111451, (1, 3): 0.0104846, (2, 3): 0.235099}
    for shift, resid in want.items():
        sel = asymptotics.select_phase_convention(shift, n=200)
        assert sel.chosen == "derived"
        got = float(sel.scaled_residuals["derived"])
        assert abs(got - resid) <= 0.05 * resid
        for other in ("mshift", "plain"):
            assert sel.scaled_residuals[other] > sel.scaled_residuals["derived"]


def test_an12_identity_exact():
    # A_n(1,2) - an12_main(n) equals a_n(1,2) exactly, so the residual is
    # pure roundoff at the working precision
    with workdps(60):
        big = differences.A(50, (1, 2), 45).value
        small = differences.a(50, (1, 2), 45).value
        main = asymptotics.an12_main(50, 55)
        assert abs(big - main - small) < mpf("1e-30")


def test_an12_domain():
    for bad in (1, 0, True, 2.0):
        with pytest.raises(DomainError):
            asymptotics.an12_main(bad)


def test_saddle_data():
    data = asymptotics.saddle(100)
    with workdps(30):
        want = mpmath.mpc(1, 1) * mpmath.sqrt(100 * mpmath.pi)
        assert abs(data.sigma - want) <= mpf("1e-20")
        assert abs(data.direction - 5 * mpmath.pi / 8) <= mpf("1e-20")
        # sigma is the leading-order saddle, so omega'(sigma) = O(1/sqrt(n))
        h = mpf("1e-10")
        for n, cap in ((100, 3.0), (400, 3.0)):
            d = asymptotics.saddle(n)
            d1 = (
                asymptotics.exact_omega(d.sigma + h, n)
                - asymptotics.exact_omega(d.sigma - h, n)
            ) / (2 * h)
            assert abs(d1) < cap / math.sqrt(n)


def test_saddle_domain():
    with pytest.raises(DomainError):
        asymptotics.saddle(0)
    with pytest.raises(DomainError):
        asymptotics.saddle(10, k=0)


def test_saddle_formula_basic():
    # exact for a pure Gaussian: f = x^2/2 at x0 = 0 gives sqrt(2 pi / N)
    with workdps(30):
        got = asymptotics.saddle_formula(0, 1, 4, 30)
        assert abs(got - mpmath.sqrt(mpmath.pi / 2)) <= mpf("1e-25")


def test_saddle_formula_zero_curvature():
    with pytest.raises(DomainError):
        asymptotics.saddle_formula(0, 0, 1)


def test_saddle_pipeline_main():
    # frozen relative error of the reassembled main term at n = 200
    exact = differences.b(200, 30).value
    est = asymptotics.saddle_pipeline_main(200)
    rel = float(abs((est - exact) / exact))
    assert abs(rel - 0.0780314) <= 0.02 * 0.0780314
    assert rel < 0.10
    assert (est > 0) == (exact > 0)


def test_predicted_main_zeros():
    zeros = asymptotics.predicted_main_zeros(500)
    assert len(zeros) == 24
    assert abs(zeros[0] - 3.5465635815916023) < 1e-9
    assert abs(zeros[-1] - 495.7948624909423) < 1e-6
    for j, z in enumerate(zeros):
        assert abs(z - math.pi * (j + 1 + 1.125) ** 2 / 4) < 1e-9


def test_sign_change_indices():
    got = asymptotics.sign_change_indices(200)
    assert got == [3, 7, 13, 21, 29, 40, 52, 65, 80, 97, 115, 135, 157, 180]


def test_sign_change_domain():
    with pytest.raises(DomainError):
        asymptotics.sign_change_indices(1)


def test_beta_fit_frozen():
    fit = asymptotics.beta_fit(range(1, 201), K=2 * math.sqrt(math.pi))
    assert fit.sign_changes == (3, 7, 13, 21, 29, 40, 52, 65, 80, 97, 115, 135, 157, 180)
    assert abs(fit.L - 0.40410398371501) < 1e-12
    assert abs(fit.max_abs_dev - 1.0186940259619917) < 1e-9
    assert abs(fit.alpha - 0.78640) < 1e-4
    assert abs(fit.alpha_over_quarter_pi - 1.0) < 0.01
    assert fit.K_fit is None
    assert abs(fit.K_given - 3.5449077018110318) < 1e-12
    # predicted locations reproduce the quadratic model at the change indices
    assert len(fit.predicted) == len(fit.sign_changes)
    assert abs(fit.predicted[0] - 3.450081431450514) < 1e-9


def test_beta_fit_estimates_decay_constant():
    fit = asymptotics.beta_fit(range(1, 201))
    assert fit.K_given is None
    assert abs(fit.K_fit - 3.5655058582917056) < 1e-9
    # within 1% of the true decay constant 2 sqrt(pi)
    assert abs(fit.K_fit - 2 * math.sqrt(math.pi)) < 0.01 * 2 * math.sqrt(math.pi)


def test_beta_fit_too_short():
    with pytest.raises(FitError):
        asymptotics.beta_fit(range(1, 11))
