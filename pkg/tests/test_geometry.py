from fractions import Fraction

from funcobs.exactlin import QMatrix, Subspace, image_basis, kernel_basis, preimage
from funcobs.geometry import extend, reachable_within, strong_star_inclusion, vstar
from funcobs.markov import kernel_inclusion_upto
from funcobs.system import SystemSextuple

import support


def frac(x):
    return Fraction(x)


class TestExtend:
    def test_integrator_chain_blocks(self):
        ext = extend(support.integrator_chain())
        assert ext.A_e == QMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 0, 0]])
        assert ext.B_e == QMatrix.from_rows([[0], [0], [1]])
        assert ext.C_e == QMatrix.from_rows([[1, 1, 0]])
        assert ext.EF_e == QMatrix.from_rows([[0, 0, 1]])

    def test_no_input(self):
        ext = extend(support.stable_pair())
        assert ext.A_e.shape == (2, 2)
        assert ext.B_e.shape == (2, 0)
        assert ext.C_e == QMatrix.identity(2)

    def test_no_state(self):
        sys = SystemSextuple.from_lists(A=[], B=[], C=[], D=[[1, 0]], E=[], F=[[0, 1]])
        ext = extend(sys)
        assert ext.A_e == QMatrix.zeros(2, 2)
        assert ext.C_e == QMatrix.from_rows([[1, 0]])


class TestVstar:
    def test_zero_kernel_is_immediate(self):
        A = QMatrix.from_rows([[1, 0], [0, 1]])
        B = QMatrix.zeros(2, 0)
        v, steps = vstar(A, B, Subspace.zero(2))
        assert v.dim == 0 and steps == 0

    def test_integrator_chain_values(self):
        ext = extend(support.integrator_chain())
        v_cd, _ = vstar(ext.A_e, ext.B_e, kernel_basis(ext.C_e))
        assert v_cd.basis.columns() == [(frac(1), frac(-1), frac(-1))]
        v_ef, _ = vstar(ext.A_e, ext.B_e, kernel_basis(ext.EF_e))
        assert v_ef == Subspace.span(3, [[1, 0, 0], [0, 1, 0]])

    def test_fixed_point_property(self, rng):
        for _ in range(25):
            sys = support.random_system(rng)
            ext = extend(sys)
            K = kernel_basis(ext.C_e)
            v, _ = vstar(ext.A_e, ext.B_e, K)
            im_b = image_basis(ext.B_e)
            assert v == K.intersect(preimage(ext.A_e, im_b.sum(v)))
            assert v.is_subspace_of(K)

    def test_invariance(self, rng):
        for _ in range(25):
            sys = support.random_system(rng)
            ext = extend(sys)
            v, _ = vstar(ext.A_e, ext.B_e, kernel_basis(ext.C_e))
            if v.dim == 0:
                continue
            pushed = image_basis(ext.A_e @ v.basis)
            assert pushed.is_subspace_of(v.sum(image_basis(ext.B_e)))


class TestReachableWithin:
    def test_integrator_chain(self):
        ext = extend(support.integrator_chain())
        reach, _ = reachable_within(ext.A_e, ext.B_e, kernel_basis(ext.C_e))
        assert reach == Subspace.span(3, [[0, 0, 1]])

    def test_no_input_gives_zero(self):
        ext = extend(support.stable_pair())
        reach, steps = reachable_within(ext.A_e, ext.B_e, kernel_basis(ext.C_e))
        assert reach.dim == 0


class TestStrongStarInclusion:
    def test_target_equals_measurement(self, rng):
        for _ in range(10):
            sys = support.random_system(rng)
            same = sys.with_target(sys.C, sys.D)
            assert strong_star_inclusion(same).holds

    def test_no_input_vacuous(self):
        cert = strong_star_inclusion(support.stable_pair())
        assert cert.holds
        assert cert.vstar_cd_in_image.dim == 0

    def test_integrator_chain_fails_with_witness(self):
        cert = strong_star_inclusion(support.integrator_chain())
        assert not cert.holds
        assert cert.violation is not None
        ext = extend(support.integrator_chain())
        assert not (ext.EF_e @ QMatrix.column_vector(cert.violation)).is_zero()
        assert cert.reachable.contains(cert.violation)

    def test_agrees_with_toeplitz_oracle(self, rng):
        for _ in range(80):
            sys = support.random_system(rng)
            geo = strong_star_inclusion(sys).holds
            toep = kernel_inclusion_upto(sys, sys.n + sys.m).holds
            assert geo == toep
