from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from rest_framework.test import APIClient

from exactnum.numbers import OpenInterval, QuadraticNumber

from .density import (
    ConicSet, admissible_bound, companion_closed_form, dense_point, dense_rational_point,
    membership, parametrize, witness_interval,
)
from .exceptions import DegenerateParameter, PreconditionViolated

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@st.composite
def targets(draw):
    conic_set = draw(st.sampled_from(list(ConicSet)))
    if conic_set is ConicSet.W:
        x = draw(st.fractions(min_value=-1, max_value=1, max_denominator=100))
        assume(-1 < x < 1)
    elif conic_set is ConicSet.V:
        x = draw(st.fractions(min_value=1, max_value=20, max_denominator=100))
        assume(x > 1)
        x = x if draw(st.booleans()) else -x
    else:
        x = draw(rationals)
    eps = draw(st.fractions(min_value=0, max_value=3, max_denominator=1000))
    assume(eps > 0)
    return conic_set, x, eps


class WitnessIntervalTests(SimpleTestCase):
    def test_w_example(self):
        interval = witness_interval(ConicSet.W, Fraction(3, 5), Fraction(1, 5))
        self.assertEqual(interval, OpenInterval(Fraction(1, 3), QuadraticNumber.sqrt(Fraction(3, 7))))

    def test_v_example(self):
        interval = witness_interval(ConicSet.V, Fraction(3, 2), Fraction(1, 4))
        self.assertEqual(interval, OpenInterval(Fraction(1, 3), QuadraticNumber.sqrt(Fraction(3, 11))))

    def test_w_at_zero(self):
        interval = witness_interval(ConicSet.W, 0, Fraction(1, 10))
        self.assertEqual(interval, OpenInterval(QuadraticNumber.sqrt(Fraction(9, 11)),
                                                QuadraticNumber.sqrt(Fraction(11, 9))))

    def test_v_left_branch_is_increasing(self):
        interval = witness_interval(ConicSet.V, Fraction(-3, 2), Fraction(1, 4))
        self.assertEqual(interval, OpenInterval(QuadraticNumber.sqrt(Fraction(11, 3)), 3))
        self.assertLess(parametrize(ConicSet.V, Fraction(2)), parametrize(ConicSet.V, Fraction(5, 2)))

    def test_preconditions(self):
        cases = [
            (ConicSet.W, Fraction(3, 2), Fraction(1, 10), '-1<x<1'),
            (ConicSet.W, Fraction(1, 2), Fraction(1, 2), 'eps<min(1+x,1-x)'),
            (ConicSet.V, Fraction(1, 2), Fraction(1, 10), '|x|>1'),
            (ConicSet.V, Fraction(3, 2), Fraction(1, 2), 'eps<|x|-1'),
            (ConicSet.U, 0, Fraction(1, 10), 'x!=0'),
            (ConicSet.U, 1, 0, '0<eps'),
        ]
        for conic_set, x, eps, failed in cases:
            with self.subTest(conic_set=conic_set, x=x, eps=eps):
                with self.assertRaises(PreconditionViolated) as caught:
                    witness_interval(conic_set, x, eps)
                self.assertEqual(caught.exception.details['failed'], failed)

    @settings(max_examples=300, deadline=None)
    @given(targets(), rationals)
    def test_every_rational_inside_maps_close(self, target, r):
        conic_set, x, eps = target
        assume(not (conic_set is ConicSet.U and x == 0))
        assume(eps < admissible_bound(conic_set, x))
        interval = witness_interval(conic_set, x, eps)
        if interval.contains(r):
            self.assertLess(abs(parametrize(conic_set, r) - x), eps)


class DensePointTests(SimpleTestCase):
    def test_examples(self):
        cert = dense_point(ConicSet.W, Fraction(3, 5), Fraction(1, 5))
        self.assertEqual((cert.r, cert.s, cert.companion), (Fraction(1, 2), Fraction(3, 5), Fraction(4, 5)))

        cert = dense_point(ConicSet.U, 0, Fraction(1, 10))
        self.assertEqual((cert.r, cert.s, cert.companion), (0, 0, 1))

        cert = dense_point(ConicSet.V, Fraction(3, 2), Fraction(1, 4))
        self.assertEqual((cert.r, cert.s, cert.companion), (Fraction(1, 2), Fraction(5, 3), Fraction(4, 3)))

    def test_clamping(self):
        cert = dense_point(ConicSet.U, 2, 5)
        self.assertEqual(cert.eps, 1)
        self.assertLess(abs(cert.s - 2), 1)

    def test_outside_ambient_domain(self):
        with self.assertRaises(PreconditionViolated):
            dense_point(ConicSet.V, Fraction(1, 2), Fraction(1, 10))

    def test_density_sweep(self):
        eps = Fraction(1, 1000)
        for k in range(-99, 100):
            x = Fraction(k, 100)
            cert = dense_point(ConicSet.W, x, eps)
            self.assertLess(abs(cert.s - x), eps)
            self.assertTrue(membership(ConicSet.W, cert.s))

    @settings(max_examples=1000, deadline=None)
    @given(targets())
    def test_certificates(self, target):
        conic_set, x, eps = target
        cert = dense_point(conic_set, x, eps)
        self.assertLess(abs(cert.s - x), eps)
        self.assertTrue(membership(conic_set, cert.s))
        self.assertGreater(cert.companion, 0)
        self.assertTrue(cert.witness_interval.contains(cert.r))


class ParametrizationTests(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(st.sampled_from(list(ConicSet)), rationals)
    def test_parametrizations_land_in_their_sets(self, conic_set, r):
        assume(r * r != 1)
        s = parametrize(conic_set, r)
        if r != 0:
            self.assertTrue(membership(conic_set, s))
        companion = companion_closed_form(conic_set, r)
        radicand = {ConicSet.U: 1 + s * s, ConicSet.V: s * s - 1, ConicSet.W: 1 - s * s}[conic_set]
        self.assertEqual(companion * companion, radicand)

    def test_closed_forms(self):
        # r = 2/3: n = 3, m = 2
        self.assertEqual(companion_closed_form(ConicSet.U, Fraction(2, 3)), Fraction(13, 5))
        self.assertEqual(companion_closed_form(ConicSet.V, Fraction(2, 3)), Fraction(12, 5))
        self.assertEqual(companion_closed_form(ConicSet.W, Fraction(2, 3)), Fraction(12, 13))

    def test_degenerate_parameter(self):
        with self.assertRaises(DegenerateParameter):
            parametrize(ConicSet.V, 1)
        with self.assertRaises(DegenerateParameter):
            companion_closed_form(ConicSet.U, -1)
        self.assertEqual(parametrize(ConicSet.W, 1), 0)


class MembershipTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(membership(ConicSet.U, Fraction(3, 4)))
        self.assertFalse(membership(ConicSet.W, Fraction(1, 2)))
        self.assertTrue(membership(ConicSet.V, Fraction(5, 3)))

    def test_ambient_domain(self):
        self.assertFalse(membership(ConicSet.V, 1))
        self.assertFalse(membership(ConicSet.W, 1))
        self.assertTrue(membership(ConicSet.W, 0))
        self.assertTrue(membership(ConicSet.U, 0))


class DenseRationalPointTests(SimpleTestCase):
    def test_surd_window(self):
        lo, hi = QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(3)
        for conic_set in ConicSet:
            if conic_set is ConicSet.W:
                continue
            cert = dense_rational_point(conic_set, lo, hi)
            self.assertTrue(lo < cert.s < hi)
            self.assertTrue(membership(conic_set, cert.s))

    def test_clipped_to_ambient(self):
        cert = dense_rational_point(ConicSet.W, Fraction(1, 2), None)
        self.assertTrue(Fraction(1, 2) < cert.s < 1)
        cert = dense_rational_point(ConicSet.V, None, Fraction(-3, 2))
        self.assertLess(cert.s, Fraction(-3, 2))

    def test_positive_window_for_u(self):
        cert = dense_rational_point(ConicSet.U, 0, Fraction(1, 100))
        self.assertTrue(0 < cert.s < Fraction(1, 100))

    def test_missing_domain(self):
        with self.assertRaises(PreconditionViolated):
            dense_rational_point(ConicSet.W, 2, 3)


class ConicApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_dense_point(self):
        response = self.client.post('/api/dense-point/', {'set': 'W', 'x': '3/5', 'eps': '1/5'}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual((response.data['r'], response.data['s'], response.data['companion']),
                         ('1/2', '3/5', '4/5'))
        self.assertEqual(response.data['witness_interval']['lo'], '1/3')

    def test_precondition_is_422(self):
        response = self.client.post('/api/dense-point/', {'set': 'V', 'x': '1/2', 'eps': '1/5'}, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'PreconditionViolated')
        self.assertEqual(response.data['failed'], '|x|>1')

    def test_float_rejected(self):
        response = self.client.post('/api/dense-point/', {'set': 'W', 'x': 0.6, 'eps': '1/5'}, format='json')
        self.assertEqual(response.status_code, 400)

    def test_membership(self):
        response = self.client.post('/api/membership/', {'set': 'U', 's': '3/4'}, format='json')
        self.assertEqual(response.data, {'set': 'U', 's': '3/4', 'member': True, 'companion': '5/4'})
