"""Multiprecision primitive layer: caches, special values, reflection."""

import mpmath
import pytest
from mpmath import mpf, workdps

from zetadiff import mpcore
from zetadiff.errors import DomainError


def test_zeta_int_matches_closed_forms():
    with workdps(40):
        assert abs(mpcore.zeta_int(2, 40) - mpmath.pi ** 2 / 6) < mpf("1e-38")
        assert abs(mpcore.zeta_int(4, 40) - mpmath.pi ** 4 / 90) < mpf("1e-38")


def test_zeta_int_rejects_bad_exponents():
    for bad in (1, 0, -3, True, 2.0):
        with pytest.raises(DomainError):
            mpcore.zeta_int(bad, 20)


def test_zeta_cache_survives_precision_bumps():
    v_low = mpcore.zeta_int(3, 20)
    v_high = mpcore.zeta_int(3, 60)
    with workdps(60):
        assert abs(v_low - v_high) < mpf("1e-18")
    # the cache refilled at 60 digits must still serve 20-digit requests
    again = mpcore.zeta_int(3, 20)
    assert again == v_low


def test_hurwitz_int_matches_direct_evaluation():
    with workdps(45):
        direct = mpmath.zeta(5, mpf(1) / 3)
        assert abs(mpcore.hurwitz_int(5, (1, 3), 45) - direct) < mpf("1e-40")
        # integer shift path
        assert abs(mpcore.hurwitz_int(4, 7, 45) - mpmath.zeta(4, 7)) < mpf("1e-40")


def test_hurwitz_shift_validation():
    with pytest.raises(DomainError):
        mpcore.hurwitz_int(3, (3, 2), 20)  # m > k
    with pytest.raises(DomainError):
        mpcore.hurwitz_int(3, (0, 2), 20)
    with pytest.raises(DomainError):
        mpcore.hurwitz_int(3, 0, 20)


def test_euler_gamma_and_harmonic():
    with workdps(50):
        assert abs(mpcore.euler_gamma(50) - mpmath.euler) < mpf("1e-48")
    from fractions import Fraction

    assert mpcore.harmonic(5) == Fraction(137, 60)
    assert mpcore.harmonic(0) == Fraction(0)
    with workdps(40):
        h = mpcore.harmonic_mpf(100, 40)
        exact = sum(Fraction(1, j) for j in range(1, 101))
        assert abs(h - mpmath.mpf(exact.numerator) / exact.denominator) < mpf("1e-36")


def test_digamma_rational_half_closed_form():
    # psi(1/2) = -gamma - 2 ln 2
    with workdps(45):
        expected = -mpmath.euler - 2 * mpmath.log(2)
        assert abs(mpcore.digamma_rational((1, 2), 45) - expected) < mpf("1e-42")


def test_gamma_cx_matches_mpmath_and_flags_poles():
    with workdps(40):
        s = mpmath.mpc("1.5", "2.5")
        assert abs(mpcore.gamma_cx(s, 40) - mpmath.gamma(s)) < mpf("1e-36")
    with pytest.raises(DomainError):
        mpcore.gamma_cx(-2, 30)


def test_zeta_cx_reflection_agrees_with_direct():
    # the left half-plane routes through the functional equation; mpmath's
    # own analytic continuation is the independent reference
    with workdps(40):
        for s in (mpmath.mpc("-0.5", "3.0"), mpmath.mpc("-2.3", "-1.1"), mpmath.mpc("0.3", "14.0")):
            ours = mpcore.zeta_cx(s, 40)
            ref = mpmath.zeta(s)
            assert abs(ours - ref) < mpf("1e-35") * max(1, abs(ref))


def test_zeta_cx_pole_rejected():
    with pytest.raises(DomainError):
        mpcore.zeta_cx(1, 30)


def test_mobius_upto_initial_segment():
    mu = mpcore.mobius_upto(12)
    assert mu[1:] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_rational_shift_validation_and_values():
    s = mpcore.RationalShift(2, 3)
    assert float(s.as_fraction()) == pytest.approx(2 / 3)
    with pytest.raises(DomainError):
        mpcore.RationalShift(0, 3)
    with pytest.raises(DomainError):
        mpcore.RationalShift(4, 3)
