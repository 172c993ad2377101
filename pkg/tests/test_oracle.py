import itertools
from fractions import Fraction

import pytest

from hurwitz import oracle
from hurwitz.errors import DomainError, SizeLimitError
from hurwitz.exactnum import stirling
from hurwitz.oracle import (
    Block,
    FactorizationQuery,
    GroupAlgebraElement,
    block_walk,
    central_idempotent,
    count_factorizations,
    count_factorizations_dfs,
    cycle_type,
    idempotent_check,
    jm_symmetric_evaluate,
    permutation_character,
    resolution_of_identity,
)
from hurwitz.partitions import enumerate_partitions


class TestCounts:
    def test_single_weak_block(self):
        q = FactorizationQuery(d=2, blocks=(Block(2, "weak"),))
        assert count_factorizations(q) == Fraction(1, 2)

    def test_three_cycle_profile(self):
        q = FactorizationQuery(d=3, profiles=((3,),), blocks=(Block(2, "none"),))
        assert count_factorizations(q) == Fraction(1, 2)

    def test_strict_exhaustion(self):
        q = FactorizationQuery(d=2, blocks=(Block(2, "strict"),))
        assert count_factorizations(q) == 0

    def test_parity_vanishing(self):
        q = FactorizationQuery(d=3, profiles=((3,),), blocks=(Block(1, "none"),))
        assert count_factorizations(q) == 0

    def test_block_reset_matters(self):
        # two weak singleton blocks allow any pair; one length-2 weak block
        # forces b1 <= b2, so on a 3-cycle target the counts differ
        split = dict(block_walk(3, (Block(1, "weak"), Block(1, "weak"))))
        joined = dict(block_walk(3, (Block(2, "weak"),)))
        three_cycle = (1, 2, 0)
        assert split[three_cycle] == 3
        assert joined[three_cycle] == 2

    def test_dfs_matches_dp(self):
        constraints = ("none", "weak", "strict")
        for d in (2, 3):
            for c1, c2 in itertools.product(constraints, repeat=2):
                for k1, k2 in ((1, 1), (2, 1), (2, 2), (3, 1)):
                    for profiles in ((), ((d,),)):
                        q = FactorizationQuery(
                            d=d, profiles=profiles,
                            blocks=(Block(k1, c1), Block(k2, c2)),
                        )
                        assert count_factorizations_dfs(q) == count_factorizations(q)

    def test_guards(self):
        with pytest.raises(SizeLimitError):
            FactorizationQuery(d=7)
        with pytest.raises(SizeLimitError):
            FactorizationQuery(d=2, blocks=(Block(11, "none"),))
        with pytest.raises(DomainError):
            FactorizationQuery(d=3, profiles=((2,),))
        with pytest.raises(DomainError):
            Block(1, "sideways")


class TestGroupAlgebra:
    def test_class_sum_central(self):
        c = GroupAlgebraElement.class_sum(4, (2, 1, 1))
        assert len(c.coeffs) == 6
        for p in oracle.group(4):
            q = oracle.inverse(p)
            conj = {oracle.compose(oracle.compose(p, t), q)
                    for t in c.coeffs}
            assert conj == set(c.coeffs)

    def test_identity_and_arithmetic(self):
        e = GroupAlgebraElement.identity(3)
        j3 = GroupAlgebraElement.jucys_murphy(3, 3)
        assert (e * j3) == j3
        assert (j3 - j3).is_zero()
        assert j3.scale(2) == j3 + j3

    def test_class_coefficients_requires_central(self):
        g = GroupAlgebraElement(3, {oracle.group(3)[1]: 1})
        with pytest.raises(DomainError):
            g.class_coefficients()


class TestJucysMurphy:
    def test_first_symmetric_is_all_transpositions(self):
        for kind in ("e", "h"):
            el = jm_symmetric_evaluate(kind, 1, 4)
            expected = GroupAlgebraElement(4)
            for p, _b in oracle.transpositions(4):
                expected.coeffs[p] = Fraction(1)
            assert el == expected

    def test_elementary_exhausts(self):
        assert jm_symmetric_evaluate("e", 3, 3).is_zero()
        assert jm_symmetric_evaluate("e", 5, 4).is_zero()

    def test_h2_degree_three_expansion(self):
        # literal expansion: h_2 = 3*id + 2*(sum of 3-cycles)
        h2 = jm_symmetric_evaluate("h", 2, 3)
        coeffs = h2.class_coefficients()
        assert coeffs[(1, 1, 1)] == 3
        assert coeffs[(3,)] == 2
        assert coeffs[(2, 1)] == 0

    @pytest.mark.parametrize("d", range(2, 6))
    def test_elementary_is_codimension_indicator(self, d):
        for k in range(0, 6):
            e = jm_symmetric_evaluate("e", k, d)
            for p in oracle.group(d):
                codim = d - len(cycle_type(p))
                assert e.coefficient(p) == (1 if codim == k else 0)
            support = stirling(1, d, d - k) if d >= k else 0
            assert len(e.coeffs) == support

    def test_h_identity_coefficient_counts_monotone_walks(self):
        # [id] h_k equals the weak-monotone factorization count of id
        for d in (2, 3, 4):
            for k in (2, 3, 4):
                h = jm_symmetric_evaluate("h", k, d)
                walk = dict(block_walk(d, (Block(k, "weak"),)))
                assert h.coefficient(oracle.identity(d)) == walk.get(oracle.identity(d), 0)


class TestIdempotents:
    def test_degree_two_explicit(self):
        f_sym = central_idempotent((2,))
        f_sgn = central_idempotent((1, 1))
        swap = (1, 0)
        assert f_sym.coefficient((0, 1)) == Fraction(1, 2)
        assert f_sym.coefficient(swap) == Fraction(1, 2)
        assert f_sgn.coefficient(swap) == Fraction(-1, 2)
        assert (f_sym * f_sym) == f_sym
        assert (f_sym * f_sgn).is_zero()

    @pytest.mark.parametrize("d", range(1, 5))
    def test_resolution(self, d):
        assert resolution_of_identity(d)

    def test_content_sum_eigenvalue(self):
        # C_tau acts on the (2,1) idempotent by its content sum, 0
        c_tau = GroupAlgebraElement.class_sum(3, (2, 1))
        f = central_idempotent((2, 1))
        assert (c_tau * f).is_zero()

    @pytest.mark.parametrize("lam", [(3,), (2, 1), (2, 2), (3, 1)])
    def test_full_check(self, lam):
        report = idempotent_check(lam, z_order=4, literal_order=1,
                                  u_values=(1,), v_values=(Fraction(1, 2),))
        assert report["passed"], report


class TestPermutationModules:
    def test_trivial_module(self):
        for mu in enumerate_partitions(4):
            assert permutation_character((4,), mu) == 1

    def test_regular_module(self):
        # the (1^d) tabloids are orderings; only the identity fixes any
        assert permutation_character((1, 1, 1), (1, 1, 1)) == 6
        assert permutation_character((1, 1, 1), (2, 1)) == 0

    def test_young_rule_small(self):
        # xi^{(2,1)} = chi^{(3)} + chi^{(2,1)}
        from hurwitz.characters import char_table
        t = char_table(3)
        for mu in t.partitions:
            assert permutation_character((2, 1), mu) == \
                t.value((3,), mu) + t.value((2, 1), mu)
