"""Difference sequences: closed forms, dual methods, cross-identities."""

import mpmath
import pytest
from mpmath import mpf, workdps

from zetadiff import differences, mpcore
from zetadiff.errors import DomainError
from zetadiff.precision import PrecisionBudget

# |d_n - D(n)| measured once at 20 digits; regression guards, not oracles
D_GAP = {10: "0.04826", 50: "0.0007321", 100: "9.558e-5", 200: "1.215e-5"}


def test_delta_small_closed_forms():
    with workdps(40):
        z2 = mpmath.zeta(2)
        z3 = mpmath.zeta(3)
        assert differences.delta(0, 20).value == 0
        assert differences.delta(1, 20).value == 0
        assert abs(differences.delta(2, 20).value - z2) < mpf("1e-19")
        assert abs(differences.delta(3, 20).value - (3 * z2 - z3)) < mpf("1e-19")


def test_delta_methods_agree():
    for n in (2, 7, 15, 30):
        vb = differences.delta(n, 14, method="binomial").value
        vs = differences.delta(n, 14, method="series").value
        with workdps(30):
            assert abs(vb - vs) < mpf("1e-12") * max(1, abs(vb))


def test_delta_rejects_unknown_method():
    with pytest.raises(DomainError):
        differences.delta(5, 12, method="contour")


def test_b_small_closed_forms():
    # b_0 = 1/2, b_1 = 1/2 - gamma, b_2 = zeta(2) - 2 gamma - 1/2
    with workdps(40):
        gamma = mpmath.euler
        assert differences.b(0, 20).value == mpf("0.5")
        assert abs(differences.b(1, 25).value - (mpf("0.5") - gamma)) < mpf("1e-24")
        expected2 = mpmath.zeta(2) - 2 * gamma - mpf("0.5")
        assert abs(differences.b(2, 25).value - expected2) < mpf("1e-23")


def test_a_at_unit_shift_reduces_to_b():
    for n in (1, 5, 12):
        va = differences.a(n, (1, 1), 18).value
        vb = differences.b(n, 18).value
        with workdps(40):
            assert abs(va - vb) < mpf("1e-18") * max(1, abs(vb))


def test_a_rejects_index_zero():
    with pytest.raises(DomainError):
        differences.a(0, (1, 2), 12)


def test_A_small_value_direct():
    # A_2(1,2) = C(2,2) zeta(2, 1/2) / 4 = zeta(2,1/2)/4 = pi^2/8
    with workdps(40):
        expected = mpmath.pi ** 2 / 8
        assert abs(differences.A(2, (1, 2), 25).value - expected) < mpf("1e-23")


def test_c_closed_form_and_growth():
    with workdps(40):
        assert abs(differences.c(1, 25).value - mpmath.zeta(2) / 2) < mpf("1e-23")
        # c_n ~ H_n + gamma - 1 grows like log n
        c50 = differences.c(50, 20).value
        h50 = mpcore.harmonic_mpf(50, 40)
        assert abs(c50 - (h50 + mpmath.euler - 1)) < mpf("0.02")


def test_d_quoted_decimals_and_limit():
    vals = {n: differences.d(n, 12).value for n in (20, 50, 100, 200)}
    assert mpmath.nstr(vals[20], 8).startswith("1.93")
    assert mpmath.nstr(vals[50], 8).startswith("1.987")
    assert mpmath.nstr(vals[100], 8).startswith("1.996")
    assert mpmath.nstr(vals[200], 8).startswith("1.9991")


def test_d_methods_agree():
    for n in (2, 10, 30):
        vb = differences.d(n, 14, method="binomial").value
        vm = differences.d(n, 14, method="moebius").value
        with workdps(30):
            assert abs(vb - vm) < mpf("1e-12") * max(1, abs(vb))


def test_D_of_tracks_d_at_matching_arguments():
    with workdps(30):
        for n, quoted in D_GAP.items():
            gap = abs(differences.d(n, 20).value - differences.D_of(n, 20))
            assert gap < mpf(n) ** mpf("0.2")
            assert abs(gap - mpf(quoted)) < mpf(quoted) * mpf("0.01")


def test_D_of_rejects_nonpositive():
    with pytest.raises(DomainError):
        differences.D_of(0, 12)
    with pytest.raises(DomainError):
        differences.D_of(-3, 12)


def test_dirichlet_diff_principal_character_is_delta():
    chi = differences.CharacterTable(1, (1,))
    for n in (2, 6, 11):
        v = differences.dirichlet_diff(chi, n, 15)
        ref = differences.delta(n, 15).value
        with workdps(30):
            assert abs(v - ref) < mpf("1e-13") * max(1, abs(ref))


def test_dirichlet_diff_mod4_matches_beta_series():
    # the odd character mod 4 gives L(chi, l) = beta(l)
    chi = differences.CharacterTable(4, (1, 0, -1, 0))
    n = 8
    v = differences.dirichlet_diff(chi, n, 18)
    with workdps(45):
        expected = mpmath.mpc(0)
        binom = [int(mpmath.binomial(n, l)) for l in range(n + 1)]
        for l in range(2, n + 1):
            beta_l = 4 ** (-mpf(l)) * (mpmath.zeta(l, mpf(1) / 4) - mpmath.zeta(l, mpf(3) / 4))
            expected += (-1) ** l * binom[l] * beta_l
        assert abs(v - expected) < mpf("1e-16")


def test_character_table_validation():
    with pytest.raises(DomainError):
        differences.CharacterTable(3, (1, 1))  # wrong length
    with pytest.raises(DomainError):
        differences.CharacterTable(4, (1, 1, 1, 1))  # not multiplicative mod 4


def test_sequence_many_matches_single_calls_bitwise():
    pts = differences.sequence_many("b", [3, 9, 17], target_digits=15)
    # the batch runs at one shared working precision sized for the largest
    # index; single calls at that same budget must agree bitwise
    from zetadiff.precision import required_working_digits

    working = required_working_digits("b", 17, 15)
    for p in pts:
        single = differences.b(p.n, PrecisionBudget(15, working)).value
        assert single == p.value


def test_sequence_many_threaded_is_bit_identical():
    serial = differences.sequence_many("b", list(range(2, 26)), 15, threads=1)
    threaded = differences.sequence_many("b", list(range(2, 26)), 15, threads=4)
    assert [p.value for p in serial] == [p.value for p in threaded]


def test_sequence_many_rejects_empty_and_unknown():
    with pytest.raises(DomainError):
        differences.sequence_many("b", [], 12)
    with pytest.raises(DomainError):
        differences.sequence_many("q", [2, 3], 12)
