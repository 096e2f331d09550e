import cmath
import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnhyp.closedforms import g2, g3
from gnhyp.errors import BranchPathError, SingularQ, ZeroCoordinate
from gnhyp.gauss2f1 import hyp2f1
from gnhyp.symmetry import (Involution, Permutation, RationalPoint, TransformWord, hn, qn,
                            principal_modulus_residual, random_rational_point, t_involution,
                            track_sqrt_q, tracked_gn, u_invariant, verify_h_invariance,
                            verify_q_covariance, verify_quasi_invariance, verify_u_invariance)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=20)


def nonzero_point(n):
    return st.lists(rationals.filter(lambda v: v != 0), min_size=n, max_size=n).map(RationalPoint)


class TestQ:
    def test_values(self):
        assert qn((0, 0, 0)) == 1
        assert qn((0.1, 0.1)) == pytest.approx(0.6, rel=1e-15)
        assert qn(RationalPoint((2, 3, 5))) == -43

    def test_exact_type(self):
        assert isinstance(qn(RationalPoint((F(1, 3), F(2, 7)))), F)


class TestInvolution:
    def test_examples(self):
        assert t_involution(1, RationalPoint((2, 3, 5))) == (F(1, 2), F(3, 2), F(5, 2))
        assert t_involution(2, RationalPoint((2, 3, 5))) == (F(2, 3), F(1, 3), F(5, 3))
        assert t_involution(1, (2, 3, 5)) == (0.5, 1.5, 2.5)

    def test_zero_pivot(self):
        with pytest.raises(ZeroCoordinate):
            t_involution(2, (1, 0, 3))

    def test_bad_index(self):
        with pytest.raises(IndexError):
            t_involution(4, (1, 2, 3))

    def test_keeps_rational_type(self):
        assert isinstance(t_involution(1, RationalPoint((2, 3))), RationalPoint)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.integers(1, n), nonzero_point(n))))
def test_involution_is_exact(case):
    j, x = case
    assert t_involution(j, t_involution(j, x)) == x
    assert TransformWord((Involution(j), Involution(j)))(x) == x


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.integers(1, n), nonzero_point(n))))
def test_q_covariance_property(case):
    j, x = case
    assert verify_q_covariance(j, x)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), nonzero_point(3))
def test_u_invariance_property(j, x):
    if qn(x) == 0 or qn(t_involution(j, x)) == 0:
        return
    assert verify_u_invariance(j, x)


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3).map(RationalPoint), st.permutations((1, 2, 3)))
def test_permutation_closure(x, sigma):
    y = Permutation(tuple(sigma))(x)
    assert qn(y) == qn(x)
    if qn(x) != 0:
        assert u_invariant(y) == u_invariant(x)


class TestU:
    def test_value(self):
        assert u_invariant((0.05, 0.05, 0.05)) == pytest.approx(0.008 / 0.6925 ** 2, rel=1e-14)

    def test_zero_coordinate(self):
        assert u_invariant((0, 0.3, 0.1)) == 0

    def test_ninth(self):
        assert u_invariant(RationalPoint((F(1, 9),) * 3)) == 1

    def test_singular(self):
        # Q_3(1, 0, 0) = 0
        with pytest.raises(SingularQ):
            u_invariant(RationalPoint((1, 0, 0)))

    def test_needs_three(self):
        with pytest.raises(ValueError):
            u_invariant((0.1, 0.2))

    @pytest.mark.parametrize("a, b", [(F(1, 5), F(1, 4)), (F(1, 3), F(1, 6)), (F(2, 7), F(3, 8))])
    def test_sqrt_sum_boundary(self, a, b):
        c = 1 - a - b
        assert u_invariant(RationalPoint((a * a, b * b, c * c))) == 1


class TestExactVerifiers:
    def test_q_covariance_examples(self):
        assert verify_q_covariance(1, (2, 3, 5))
        assert qn(t_involution(1, RationalPoint((2, 3, 5)))) == F(-43, 4)
        assert verify_q_covariance(1, (1, 1))

    def test_u_invariance_examples(self):
        assert verify_u_invariance(1, (2, 3, 5))
        assert verify_u_invariance(2, (F(1, 10), F(1, 5), F(1, 7)))
        for s in itertools.permutations((1, 2, 3)):
            assert u_invariant(Permutation(s)(RationalPoint((2, 3, 5)))) == u_invariant(RationalPoint((2, 3, 5)))

    def test_random_point_is_seeded(self):
        a = random_rational_point(random.Random(3), 4)
        b = random_rational_point(random.Random(3), 4)
        assert a == b
        assert all(-20 <= v <= 20 and v.denominator <= 20 for v in a)

    def test_bad_permutation(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))((1, 2, 3))


class TestBranchTracking:
    def test_principal_near_origin(self):
        x = (0.1, 0.05)
        assert abs(track_sqrt_q(x) - cmath.sqrt(qn(x))) < 1e-15

    def test_path_through_zero_of_q(self):
        # Q_1(x) = (1-x)^2; the segment from -0.001 to 3 passes through the
        # double zero at x = 1, which the tracker refuses
        with pytest.raises(BranchPathError):
            track_sqrt_q((3.0,))

    def test_continuation_off_axis(self):
        # going around x = 1 in the upper half plane continues sqrt((1-x)^2) as 1 - x
        x = 3.0 + 0.5j
        root = track_sqrt_q((x,))
        assert abs(root - (1 - x)) < 1e-12
        assert abs(root - cmath.sqrt(qn((x,)))) > 1

    def test_u_cut_detected(self):
        # along the diagonal u reaches 1 at x = 1/9
        with pytest.raises(BranchPathError):
            track_sqrt_q((0.2, 0.2, 0.2), check_u=True)

    def test_tracked_equals_principal_near_origin(self):
        assert abs(tracked_gn((0.05, 0.05, 0.05)) - g3((0.05, 0.05, 0.05))) < 1e-15
        assert abs(tracked_gn((0.1, 0.1)) - g2(0.1, 0.1)) < 1e-15


class TestQuasiInvariance:
    def test_n2_example(self):
        assert verify_quasi_invariance(2, 1, (-0.1, -0.2)) < 1e-9

    def test_n3_example(self):
        assert verify_quasi_invariance(3, 2, (-0.05, -0.05, -0.05)) < 1e-9

    @pytest.mark.parametrize("n, j, x", [(2, 1, (-0.1, -0.2)), (3, 2, (-0.05, -0.05, -0.05)),
                                         (3, 3, (-0.02, -0.1, -0.05))])
    def test_h_level(self, n, j, x):
        assert verify_h_invariance(n, j, x) < 1e-9

    @pytest.mark.parametrize("n, j, x", [(2, 1, (0.1 + 0.2j, -0.3)), (3, 1, (0.02, -0.05j, 0.03)),
                                         (3, 3, (-0.4, -0.1, -0.2))])
    def test_modulus_relation(self, n, j, x):
        assert principal_modulus_residual(n, j, x) < 1e-12


class TestH:
    def test_h2_is_one(self):
        assert abs(hn((0.1, 0.1)) - 1) < 1e-12

    def test_h1(self):
        assert abs(hn((0.5,)) - 1) < 1e-15

    def test_h3(self):
        x = (0.05, 0.05, 0.05)
        assert abs(hn(x) - hyp2f1(0.25, 0.75, 1, u_invariant(x)).value) < 1e-15
        assert abs(hn(x) - 1.003156758971644) < 1e-14  # mpmath

    def test_singular(self):
        with pytest.raises(SingularQ):
            hn((1.0, 0.0))
