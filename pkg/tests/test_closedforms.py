import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnhyp import closedforms as cf
from gnhyp.errors import BranchCutError, DomainError, PoleError, SingularQ, ZeroX3
from gnhyp.multiseries import eval_f4_series, eval_gn_series
from gnhyp.symmetry import RationalPoint, qn

G3_REF = 1.2054769615363604  # mpmath
ELLIPK_REF = 1.0910959103627816  # (2/pi) K(0.3), mpmath
ELLIPK_COMPLEX_REF = 1.0543313098776509 + 0.03190542184242757j


class TestG1G2:
    @pytest.mark.parametrize("x, expected", [(0.5, 2.0), (0, 1.0), (2, -1.0)])
    def test_g1(self, x, expected):
        assert cf.g1(x) == expected

    def test_g1_pole(self):
        with pytest.raises(PoleError):
            cf.g1(1)

    def test_g2_values(self):
        assert cf.g2(0.1, 0.1) == pytest.approx(1 / math.sqrt(0.6), rel=1e-15)
        assert cf.g2(0.15, 0.05) == pytest.approx(1 / math.sqrt(0.61), rel=1e-15)
        assert cf.g2(0, 0.3) == pytest.approx(cf.g1(0.3), rel=1e-15)

    def test_g2_errors(self):
        with pytest.raises(SingularQ):
            cf.g2(1, 0)
        with pytest.raises(BranchCutError):
            cf.g2(0.5, 0.5)


class TestG3:
    def test_reference(self):
        assert abs(cf.g3((0.05, 0.05, 0.05)) - G3_REF) < 1e-15

    def test_restriction(self):
        assert cf.g3((0, 0.1, 0.05)) == pytest.approx(cf.g2(0.1, 0.05), rel=1e-15)
        assert cf.g3((0, 0, 0)) == 1

    def test_u_cut(self):
        with pytest.raises(BranchCutError):
            cf.g3((0.2, 0.2, 0.2 - 1e-18))

    def test_singular(self):
        with pytest.raises(SingularQ):
            cf.g3((1, 0, 0))

    def test_needs_three(self):
        with pytest.raises(ValueError):
            cf.g3((0.1, 0.1))

    def test_arrays(self):
        pts = np.array([[0.05, 0.05, 0.05], [0.01j, -0.02, 0.03]])
        vals = cf.g3_array(pts)
        assert np.all(cf.g3_domain(pts))
        for p, v in zip(pts, vals):
            assert abs(v - cf.g3(p)) < 1e-15
        pts2 = np.array([[0.1, 0.1], [0.5, 0.5]])
        assert list(cf.g2_domain(pts2)) == [True, False]

    def test_gn_closed(self):
        assert cf.gn_closed((0.5,)) == 2
        with pytest.raises(DomainError):
            cf.gn_closed((0.01,) * 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=0.03), min_size=3, max_size=3))
def test_series_closed_agreement(x):
    a = eval_gn_series(x).value
    assert abs(a - cf.g3(x)) <= 1e-12 * abs(a)


class TestEllipticReduction:
    def test_example(self):
        red = cf.elliptic_reduction((0.05, 0.05, 0.05))
        assert red.a_plus == pytest.approx(1.05)
        assert red.a_minus == pytest.approx(0.85)
        assert abs(red.t1 - 1) < 1e-15
        assert abs(red.t3 - 20) < 1e-12
        assert abs(red.t2 - 1.2715838525995198) < 1e-12
        assert abs(red.t4 - 15.72841614740048) < 1e-11

    def test_discriminant_product_numeric(self):
        red = cf.elliptic_reduction((0.05, 0.05, 0.05))
        lhs = (red.a_plus ** 2 - 0.2) * (red.a_minus ** 2 - 0.2)
        assert abs(lhs - 0.47155625) < 1e-14
        assert abs(lhs - red.Q ** 2 * (1 - red.u)) < 1e-14

    def test_zero_x3(self):
        with pytest.raises(ZeroX3):
            cf.elliptic_reduction((0.1, 0.05, 0))

    def test_limits(self):
        lim = cf.small_x_limits(1e-6)
        assert max(lim.values()) < 1e-5

    def test_branch_swap(self):
        x = (0.03 + 0.01j, -0.02, 0.04)
        a, b = cf.elliptic_reduction(x, 1), cf.elliptic_reduction(x, -1)
        assert (a.t1, a.t3) == pytest.approx((b.t2, b.t4))
        assert abs(a.lam - b.lam) < 1e-15 and abs(a.mu - b.mu) < 1e-15


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(min_magnitude=1e-3, max_magnitude=0.05), min_size=3, max_size=3))
def test_reduction_invariants(x):
    res = cf.reduction_residuals(cf.elliptic_reduction(x), x)
    assert max(res.values()) < 1e-10


class TestEllipticIntegral:
    def test_trapezoid_against_reference(self):
        assert abs(cf.elliptic_k_trapezoid(0.3).value - ELLIPK_REF) < 1e-15
        assert abs(cf.elliptic_k_trapezoid(0.2 + 0.1j).value - ELLIPK_COMPLEX_REF) < 1e-15

    def test_trapezoid_cut(self):
        with pytest.raises(BranchCutError):
            cf.elliptic_k_trapezoid(1.5)

    def test_g3_value(self):
        ev = cf.g3_via_elliptic_integral((0.05, 0.05, 0.05))
        assert abs(ev.value - cf.g3((0.05, 0.05, 0.05))) / 1.2 < 1e-9

    def test_near_origin(self):
        assert abs(cf.g3_via_elliptic_integral((1e-9, 1e-9, 1e-9)).value - 1) < 1e-8

    def test_permute_zero_x3(self):
        x = (0.1, 0.05, 0)
        with pytest.raises(ZeroX3):
            cf.g3_via_elliptic_integral(x)
        ev = cf.g3_via_elliptic_integral((0.1, 0, 0.05))
        assert abs(ev.value - cf.g3(x)) < 1e-12


class TestF4Expansion:
    def test_k20(self):
        x = (0.05, 0.05, 0.05)
        assert abs(cf.g3_f4_expansion(x, 20).value - cf.g3(x)) / 1.2 < 1e-8

    def test_x3_zero(self):
        ev = cf.g3_f4_expansion((0.05, 0.02, 0), 5)
        assert ev.value == eval_f4_series(1, 1, 1, 1, 0.05, 0.02).value

    def test_tail(self):
        x = (0.05, 0.04, 0.01)
        first_omitted = eval_f4_series(2, 2, 1, 1, 0.05, 0.04).value * 0.01
        diff = cf.g3_f4_expansion(x, 10).value - cf.g3_f4_expansion(x, 0).value
        assert abs(diff) == pytest.approx(abs(first_omitted), rel=0.1)


class TestCauchyCoefficients:
    x = RationalPoint((F(1, 10), F(1, 5), F(1, 7)))

    def test_log_derivative_identities(self):
        assert cf.log_derivative_residuals(self.x) == (0, 0)

    def test_differences(self):
        assert cf.a_difference_residuals(self.x) == (0, 0, 0)

    def test_symmetric_point(self):
        x = RationalPoint((F(1, 10), F(1, 10), F(1, 7)))
        assert cf.a_coefficients(1, x) == cf.a_coefficients(2, x)

    def test_variable(self):
        # u = 64 v
        assert 64 * cf.ode_variable(self.x) == 64 * self.x[0] * self.x[1] * self.x[2] / qn(self.x) ** 2

    def test_complex_inputs(self):
        res = cf.a_difference_residuals((0.02 + 0.01j, -0.03, 0.05))
        assert max(abs(r) for r in res) < 1e-12

    def test_bad_index(self):
        with pytest.raises(ValueError):
            cf.a_coefficients(4, self.x)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(-20, 20, max_denominator=20).filter(lambda v: v != 0),
                min_size=3, max_size=3).map(RationalPoint))
def test_exact_identities_property(x):
    if qn(x) == 0:
        return
    assert cf.log_derivative_residuals(x) == (0, 0)
    assert cf.a_difference_residuals(x) == (0, 0, 0)
    assert cf.quartic_product_exact(x) == 0


class TestODEs:
    def test_psi0(self):
        assert cf.psi(0) == 12

    @pytest.mark.parametrize("t", [0, 0.001, 1 / 128, 0.0078125])
    def test_riccati(self, t):
        assert abs(cf.riccati_residual(t)) < 1e-10

    @pytest.mark.parametrize("t", [0, 0.005, 0.01, -0.002 + 0.001j])
    def test_linear(self, t):
        assert abs(cf.hypergeo_ode_residual(t)) < 1e-10

    def test_cut(self):
        with pytest.raises(DomainError):
            cf.riccati_residual(1 / 32)


class TestLegendre:
    def test_examples(self):
        assert cf.legendre_generating_check(0.15, 0.05) < 1e-9
        assert cf.legendre_generating_check(0.1, 0.0) < 1e-14
        a = cf.legendre_generating_check(0.15, 0.05)
        b = cf.legendre_generating_check(0.05, 0.15)
        assert abs(a - b) < 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            cf.legendre_generating_check(0.1, 0.1)
        with pytest.raises(DomainError):
            cf.legendre_generating_check(0.3, 0.25)


class TestAppellChain:
    @pytest.mark.parametrize("x", [(0.0, 0.0), (0.05, 0.0), (0.02, 0.05), (0.05, 0.05)])
    def test_chain(self, x):
        vals = cf.g2_via_appell_chain(*x)
        for v in vals.values():
            assert abs(v - cf.g2(*x)) < 1e-12
