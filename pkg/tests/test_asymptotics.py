import math
from fractions import Fraction

import pytest

from hurwitz.asymptotics import (
    PoleCoefficient,
    b_leading_term,
    completed_leading_term,
    gw_leading_term,
    monotone_leading_term,
    pole_coefficient,
    pole_coefficient_stirling,
    ratio_report,
)
from hurwitz.core import GSpec, completed_hurwitz, m_ds
from hurwitz.errors import DomainError, EmptyReportError
from hurwitz.exactnum import stirling


class TestPoleCoefficient:
    def test_plain_degree_three(self):
        pc = pole_coefficient(3, GSpec(K=1))
        assert pc.coefficient == Fraction(1, 18)
        assert pc.rho == 2 and pc.order == 1

    def test_plain_degree_two_both_signs(self):
        for sign in (1, -1):
            pc = pole_coefficient(2, GSpec(K=1), sign=sign)
            assert pc.coefficient == Fraction(1, 4)
            assert pc.rho == sign

    def test_u_coefficients_are_stirling(self):
        d = 4
        pc = pole_coefficient(d, GSpec(K=1, L=1))
        base = Fraction((d - 1) ** (d - 2),
                        math.factorial(d) ** 2 * math.factorial(d - 2))
        for a in range(0, d):
            expected = base * Fraction(stirling(1, d, d - a), (d - 1) ** a)
            assert pc.coefficient.coefficient((a,)) == expected

    def test_v_coefficients_are_stirling(self):
        d = 3
        pc = pole_coefficient(d, GSpec(K=1, M=1), v_order=5)
        base = Fraction((d - 1) ** (d - 2),
                        math.factorial(d) ** 2 * math.factorial(d - 2))
        for b in range(0, 6):
            expected = base * Fraction(stirling(2, b + d - 1, d - 1), (d - 1) ** b)
            assert pc.coefficient.coefficient((b,)) == expected

    def test_limit_equals_stirling_closed_form(self):
        for d in (2, 3, 4, 5):
            for k in (1, 2):
                for l in (0, 1):
                    for m in (0, 1):
                        for sign in (1, -1):
                            g = GSpec(K=k, L=l, M=m)
                            a = pole_coefficient(d, g, (), sign, v_order=4)
                            b = pole_coefficient_stirling(d, g, (), sign, v_order=4)
                            assert a.coefficient == b.coefficient
                            assert (a.rho, a.order) == (b.rho, b.order)

    def test_profile_sign(self):
        pc = pole_coefficient(3, GSpec(K=1), profiles=((2, 1),), sign=-1)
        # Nd - sum(l) = 3 - 2 = 1, so the column pole flips sign
        assert pc.coefficient == -Fraction(1, 18)

    def test_errors(self):
        with pytest.raises(DomainError):
            pole_coefficient(1, GSpec(K=1))
        with pytest.raises(DomainError):
            pole_coefficient(3, GSpec(K=0))
        with pytest.raises(DomainError):
            pole_coefficient(3, GSpec(K=1), sign=2)


class TestMonotoneLeading:
    def test_degree_three_single_block(self):
        for r in (2, 4, 10):
            assert monotone_leading_term(r, 3, 0, 0, 1) == Fraction(2 ** (r + 2), 36)

    def test_single_profile_specialisation(self):
        # 2 (d-1)^{d-2} / (d!^2 (d-2)!) * (d-1)^r at d = 4
        d = 4
        for r in (3, 5):
            expected = Fraction(2 * (d - 1) ** (d - 2 + r),
                                math.factorial(d) ** 2 * math.factorial(d - 2))
            assert monotone_leading_term(r, d, 1, 1, 1) == expected

    def test_two_blocks_degree_two(self):
        for r in (2, 6, 12):
            assert monotone_leading_term(r, 2, 0, 0, 2) == Fraction(r, 2)

    def test_saturated_strict_degree_vanishes(self):
        assert monotone_leading_term(6, 3, 0, 0, 1, a_vec=(3,)) == 0
        assert monotone_leading_term(6, 3, 0, 0, 1, a_vec=(2,)) != 0

    def test_guards(self):
        with pytest.raises(DomainError):
            monotone_leading_term(2, 1, 0, 0, 1)
        with pytest.raises(DomainError):
            monotone_leading_term(2, 3, 0, 0, 0)


class TestCompletedLeading:
    def test_degree_two_is_exact(self):
        for r in (0, 2, 4, 8):
            assert completed_leading_term(r, 2, 1) == Fraction(1, 2)
            assert completed_hurwitz(r, 1, (), d=2).value == Fraction(1, 2)

    def test_classical_binomial_form(self):
        d = 5
        for r in (4, 6):
            assert completed_leading_term(r, d, 1) == \
                Fraction(2, math.factorial(d) ** 2) * Fraction(math.comb(d, 2)) ** r

    def test_cubic_eigenvalue(self):
        assert m_ds(3, 2) == Fraction(15127, 2880)
        assert completed_leading_term(2, 3, 2) == \
            Fraction(2, 36) * Fraction(15127, 2880) ** 2


class TestBLeading:
    def test_b_zero_reduction(self):
        for d in (2, 3, 4):
            for r in range(0, 9):
                got = b_leading_term(r, d, 0, 0, 1, (), (), 0)
                want = monotone_leading_term(r, d, 0, 0, 1) if r % 2 == 0 else 0
                assert got == want

    def test_expanding_regime_two_sheets(self):
        # alpha = 2: the row term (1/24) 2^r . (d-1)=1 so no extra power
        for r in (5, 9):
            assert b_leading_term(r, 2, 0, 0, 1, (), (), 1) == Fraction(2**r, 24)

    def test_contracting_regime_two_sheets(self):
        # alpha = 1/2: column pole, norm 2 * (1/2) * (3/2) = 3/2
        for r in (6, 7):
            assert b_leading_term(r, 2, 0, 0, 1, (), (), Fraction(-1, 2)) == \
                Fraction((-1) ** r, 1) * Fraction(2, 3)

    def test_gaussian_unit_circle(self):
        # alpha = i sits on the unit circle, so both poles contribute; at
        # d = 2 the two extreme partitions are the whole sum, making the
        # leading term exact: H_r = -a^r/(2(1+i)) + (-1)^r/(2i(1+i))
        from hurwitz.exactnum import GaussianRational

        b = GaussianRational(Fraction(-1), Fraction(1))
        assert b_leading_term(2, 2, 0, 0, 1, (), (), b) == \
            GaussianRational(Fraction(0), Fraction(-1, 2))
        assert b_leading_term(3, 2, 0, 0, 1, (), (), b) == \
            GaussianRational(Fraction(1, 2), Fraction(1, 2))

    def test_domain(self):
        with pytest.raises(DomainError):
            b_leading_term(2, 2, 0, 0, 1, (), (), -2)


class TestGWLeading:
    def test_degree_one_vanishes_with_simple_insertions(self):
        from hurwitz.core import gw_correlator

        assert gw_leading_term((1,), (1,), {1: 3}) == 0
        assert gw_correlator((1,), (1,), {1: 3}) == 0

    def test_formula(self):
        got = gw_leading_term((1, 1, 1), (1, 1, 1), {2: 4})
        direct = Fraction(2, 6 * 6 * 36) * (m_ds(3, 2) / 2) ** 4
        assert got == direct


class TestRatioReport:
    def test_drops_zero_rows_and_converges(self):
        rep = ratio_report(
            lambda r: completed_hurwitz(r, 1, (), d=3).value,
            lambda r: completed_leading_term(r, 3, 1),
            range(0, 21),
        )
        assert all(e.r % 2 == 0 for e in rep.entries)
        assert rep.final_error <= Fraction(1, 10**5)
        assert not rep.diverging
        assert rep.monotone_from is not None

    def test_exact_family_is_flat(self):
        rep = ratio_report(
            lambda r: completed_hurwitz(r, 1, (), d=2).value,
            lambda r: completed_leading_term(r, 2, 1),
            range(0, 13),
        )
        assert all(e.ratio == 1 for e in rep.entries)
        assert rep.final_error == 0

    def test_empty_report(self):
        with pytest.raises(EmptyReportError):
            ratio_report(lambda r: Fraction(0), lambda r: Fraction(1), range(5))

    def test_decimal_rendering(self):
        rep = ratio_report(lambda r: Fraction(1, 3), lambda r: Fraction(1, 2), [1])
        assert rep.entries[0].ratio == Fraction(2, 3)
        assert rep.entries[0].ratio_decimal.startswith("0.6666666666")
        short = ratio_report(lambda r: Fraction(1, 3), lambda r: Fraction(1, 2), [1],
                             precision_bits=16)
        assert len(short.entries[0].ratio_decimal) < len(rep.entries[0].ratio_decimal)

    def test_csv_header_contract(self):
        rep = ratio_report(lambda r: Fraction(1), lambda r: Fraction(1), [0, 1])
        assert rep.csv_rows()[0] == ["r", "exact", "asymptotic", "ratio"]
