from fractions import Fraction

import pytest

from funcobs.polymat import (POLY_ONE, Poly, PolyMatrix, build_system_matrices,
                             determinant, normal_rank,
                             output_decoupling_zero_polynomial, poly_gcd,
                             poly_lcm, smith_form, zero_polynomial)
from funcobs.system import SystemSextuple

import support


def P_of(sys):
    return build_system_matrices(sys)[0]


def Pe_of(sys):
    return build_system_matrices(sys)[1]


class TestPoly:
    def test_arithmetic(self):
        p = Poly([1, 1])          # 1 + s
        q = Poly([-3, 1])         # -3 + s
        assert p * q == Poly([-3, -2, 1])
        assert divmod(p * q, p) == (q, Poly())
        assert (p * q + Poly([5])) % p == Poly([5]) % p

    def test_trailing_zeros_stripped(self):
        assert Poly([1, 2, 0, 0]) == Poly([1, 2])
        assert Poly([0, 0]).is_zero()
        assert Poly().degree == -1

    def test_evaluate(self):
        p = Poly([1, 0, 1])
        assert p.evaluate(Fraction(2)) == Fraction(5)
        assert p.evaluate(1j) == 0

    def test_format(self):
        assert str(Poly([1, Fraction(3, 2), 1])) == "s^2 + 3/2*s + 1"
        assert str(Poly()) == "0"
        assert str(Poly([0, -1])) == "-s"


class TestGcd:
    def test_gcd_with_zero(self):
        p = Poly([2, 2])
        assert poly_gcd(p, Poly()) == Poly([1, 1])

    def test_coprime_linear(self):
        assert poly_gcd(Poly([1, 1]), Poly([2, 1])) == POLY_ONE

    def test_shared_factor(self):
        sp1 = Poly([1, 1])
        a = sp1 * sp1 * Poly([-3, 1])
        b = sp1 * Poly([5, 1])
        g = poly_gcd(a, b)
        assert g == sp1
        assert (a % g).is_zero() and (b % g).is_zero()

    def test_both_zero_rejected(self):
        with pytest.raises(ValueError):
            poly_gcd(Poly(), Poly())

    def test_lcm(self):
        a = Poly([1, 1]) * Poly([2, 1])
        b = Poly([1, 1]) * Poly([3, 1])
        assert poly_lcm(a, b) == (Poly([1, 1]) * Poly([2, 1]) * Poly([3, 1])).monic()


class TestSystemMatrices:
    def test_feedthrough_gap_pencil(self):
        P = P_of(support.feedthrough_gap())
        expected = PolyMatrix.from_rows([
            [Poly([1, 1]), Poly([-1]), Poly([1])],
            [Poly([1]), Poly(), Poly()],
        ])
        assert P == expected

    def test_integrator_chain_determinant(self):
        P = P_of(support.integrator_chain())
        det = determinant(P)
        assert det == Poly([1, 1])
        assert det == support.cofactor_det(P)

    def test_determinant_matches_cofactor_oracle(self, rng):
        for _ in range(40):
            n = rng.randint(0, 4)
            M = support.random_polymatrix(rng, n, n, max_degree=2)
            assert determinant(M) == support.cofactor_det(M)

    def test_degenerate_no_input(self):
        sys = SystemSextuple.from_lists(A=[[0]], C=[[1]], m=0)
        P = P_of(sys)
        assert P.shape == (2, 1)
        assert P == PolyMatrix.from_rows([[Poly([0, 1])], [Poly([1])]])

    def test_inconsistent_dimensions_rejected(self):
        with pytest.raises(ValueError):
            SystemSextuple.from_lists(A=[[0, 1]], C=[[1]])


class TestNormalRank:
    def test_golden_rank_gap(self):
        sys = support.feedthrough_gap()
        assert normal_rank(P_of(sys)) == 2
        assert normal_rank(Pe_of(sys)) == 3

    def test_golden_rank_equality(self):
        sys = support.integrator_chain()
        assert normal_rank(P_of(sys)) == 3
        assert normal_rank(Pe_of(sys)) == 3

    def test_zero_matrix(self):
        assert normal_rank(PolyMatrix.zeros(2, 3)) == 0

    def test_against_pointwise_evaluation(self, rng):
        # the rank at a handful of rational points bounds the normal rank
        # from below and reaches it away from a finite bad set
        points = [Fraction(5), Fraction(7, 2), Fraction(-13, 3), Fraction(17)]
        for _ in range(40):
            M = support.random_polymatrix(rng, rng.randint(0, 4), rng.randint(0, 4))
            nr = normal_rank(M)
            best = max((support.ref_rank_q(M.evaluate(s0)) for s0 in points),
                       default=0)
            assert best == nr


class TestSmith:
    def test_already_diagonal(self):
        M = PolyMatrix.from_rows([[Poly([0, 1]), Poly()], [Poly(), Poly([0, 0, 1])]])
        dec = smith_form(M)
        assert dec.invariant_polys == (Poly([0, 1]), Poly([0, 0, 1]))
        assert dec.U == PolyMatrix.identity(2)
        assert dec.V == PolyMatrix.identity(2)

    def test_golden_invariant_product(self):
        P = P_of(support.integrator_chain())
        dec = smith_form(P)
        prod = POLY_ONE
        for a in dec.invariant_polys:
            prod = prod * a
        assert prod.monic() == Poly([1, 1])

    def test_random_self_verification(self, rng):
        for _ in range(60):
            M = support.random_polymatrix(rng, 3, 4, max_degree=2)
            dec = smith_form(M)  # internal assert checks U P V == S
            assert len(dec.invariant_polys) == normal_rank(M)
            du, dv = determinant(dec.U), determinant(dec.V)
            assert du.degree == 0 and not du.is_zero()
            assert dv.degree == 0 and not dv.is_zero()
            for a, b in zip(dec.invariant_polys, dec.invariant_polys[1:]):
                assert a.divides(b)


class TestZeroPolynomial:
    def test_integrator_chain(self):
        sys = support.integrator_chain()
        assert zero_polynomial(P_of(sys)) == Poly([1, 1])
        assert zero_polynomial(Pe_of(sys)) == POLY_ONE

    def test_feedthrough_gap(self):
        sys = support.feedthrough_gap()
        assert zero_polynomial(P_of(sys)) == POLY_ONE
        assert zero_polynomial(Pe_of(sys)) == POLY_ONE

    def test_unimodular_invariance(self, rng):
        for _ in range(15):
            M = support.random_polymatrix(rng, 3, 3, max_degree=1)
            zp = zero_polynomial(M)
            # random elementary row/column operations
            rows = [list(r) for r in M.data]
            for _ in range(4):
                i, j = rng.sample(range(3), 2)
                f = support.random_poly(rng, 1)
                rows[i] = [a + f * b for a, b in zip(rows[i], rows[j])]
            cols = list(map(list, zip(*rows)))
            for _ in range(4):
                i, j = rng.sample(range(3), 2)
                f = support.random_poly(rng, 1)
                cols[i] = [a + f * b for a, b in zip(cols[i], cols[j])]
            M2 = PolyMatrix.from_rows(list(map(list, zip(*cols))), cols=3)
            assert zero_polynomial(M2) == zp


class TestDecouplingZeros:
    def test_fully_observable(self):
        sys = SystemSextuple.from_lists(A=[[1, 0], [0, 2]], C=[[1, 0], [0, 1]], m=0)
        assert output_decoupling_zero_polynomial(sys) == POLY_ONE

    def test_unstable_chain_observable(self):
        sys = support.unstable_chain()
        assert output_decoupling_zero_polynomial(sys) == POLY_ONE
        # cross-check with the rank test at every rational eigenvalue
        for lam in (Fraction(0), Fraction(1)):
            assert not support.pbh_unobservable(sys, lam)

    def test_hidden_stable_mode(self):
        sys = SystemSextuple.from_lists(A=[[-1, 0], [0, -1]], C=[[1, 0]], m=0)
        assert output_decoupling_zero_polynomial(sys) == Poly([1, 1])
        assert support.pbh_unobservable(sys, Fraction(-1))
