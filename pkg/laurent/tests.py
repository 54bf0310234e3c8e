from fractions import Fraction

import sympy as sp
from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from rest_framework.test import APIClient

from deduction.verdicts import VerdictTag
from exactnum.numbers import OpenInterval, QuadraticNumber

from .classify import (
    DomainKind, PQTag, check_cor_pq, classify_polynomial, classify_pq, power_domain,
)
from .exceptions import DependentTails, IntervalContainsZero, NotAPolynomial, ZeroPolynomial
from .polynomials import (
    LaurentPoly, find_pivot_indices, formal_derivative, linearly_dependent, wronskian,
)
from .sturm import count_roots, nonvanishing_on

coefficients = st.integers(min_value=-9, max_value=9)


def laurent_polys(min_k=-4, max_k=4, max_size=6):
    return st.dictionaries(st.integers(min_value=min_k, max_value=max_k), coefficients,
                           max_size=max_size).map(LaurentPoly)


def L(**terms):
    """L(k2=1, k_1=3) builds u^2 + 3u^-1."""
    return LaurentPoly({int(key[1:].replace('_', '-')): value for key, value in terms.items()})


def dependent_by_rank(p, q):
    support = sorted(set(p.support) | set(q.support))
    matrix = sp.Matrix([[sp.Rational(str(p.coeff(k))) for k in support],
                        [sp.Rational(str(q.coeff(k))) for k in support]])
    return matrix.rank() < 2


class LaurentPolyTests(SimpleTestCase):
    def test_normalization(self):
        poly = LaurentPoly({2: 1, 0: 0, -1: Fraction(1, 2)})
        self.assertEqual(poly.terms, ((-1, Fraction(1, 2)), (2, Fraction(1))))
        self.assertEqual(LaurentPoly([(1, 2), (1, -2)]), LaurentPoly())

    def test_evaluation(self):
        poly = L(k2=1, k_1=2)
        self.assertEqual(poly(2), 5)
        self.assertEqual(poly(QuadraticNumber.sqrt(2)), QuadraticNumber(2, 1, 2))

    def test_from_expr(self):
        u = sp.Symbol('u')
        self.assertEqual(LaurentPoly.from_expr((u ** 3 + 2) / u), L(k2=1, k_1=2))


class CalculusTests(SimpleTestCase):
    def test_formal_derivative(self):
        self.assertEqual(formal_derivative(L(k2=1)), L(k1=2))
        self.assertEqual(formal_derivative(L(k0=3, k_1=1)), L(k_2=-1))
        self.assertTrue(formal_derivative(LaurentPoly()).is_zero)

    def test_wronskian(self):
        self.assertEqual(wronskian(L(k1=1), L(k2=1)), L(k2=-1))
        self.assertTrue(wronskian(L(k1=1, k0=1), L(k1=2, k0=2)).is_zero)
        self.assertEqual(wronskian(L(k_1=1), L(k1=1)), L(k_1=-2))

    def test_linear_dependence(self):
        self.assertTrue(linearly_dependent(L(k2=2), L(k2=3)))
        self.assertFalse(linearly_dependent(L(k1=1), L(k2=1)))
        self.assertTrue(linearly_dependent(LaurentPoly(), L(k1=1)))

    @settings(max_examples=300, deadline=None)
    @given(laurent_polys(), laurent_polys())
    def test_wronskian_detects_dependence(self, p, q):
        assume(not p.is_zero and not q.is_zero)
        self.assertEqual(wronskian(p, q).is_zero, linearly_dependent(p, q))
        self.assertEqual(linearly_dependent(p, q), dependent_by_rank(p, q))


class PivotTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(find_pivot_indices(L(k1=1, k3=1), L(k1=1, k3=-1)), (1, 3))
        self.assertEqual(find_pivot_indices(L(k1=1), L(k2=1)), (1, 2))
        self.assertEqual(find_pivot_indices(L(k_1=1, k1=1), L(k_1=2, k1=1)), (-1, 1))

    def test_dependent_tails(self):
        with self.assertRaises(DependentTails):
            find_pivot_indices(L(k1=1, k0=4), L(k1=2))

    @settings(max_examples=300, deadline=None)
    @given(laurent_polys(-3, 3, 5), laurent_polys(-3, 3, 5))
    def test_pivot_relations(self, p, q):
        assume(not linearly_dependent(p.tail(), q.tail()))
        k0, ell = find_pivot_indices(p, q)
        self.assertNotEqual(p.coeff(k0) * q.coeff(ell), p.coeff(ell) * q.coeff(k0))
        below = [k for k in range(-3, ell) if k != 0]
        for i in below:
            for j in below:
                self.assertEqual(p.coeff(i) * q.coeff(j), p.coeff(j) * q.coeff(i))


class SturmTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(nonvanishing_on(L(k1=2), OpenInterval(1, 2)))
        self.assertFalse(nonvanishing_on(L(k2=1, k0=-2), OpenInterval(1, 2)))
        self.assertTrue(nonvanishing_on(L(k2=1, k0=1), OpenInterval(-5, 5)))

    def test_counts(self):
        cubic = L(k3=1, k1=-1)  # roots -1, 0, 1
        self.assertEqual(count_roots(cubic, OpenInterval(None, None)), 3)
        self.assertEqual(count_roots(cubic, OpenInterval(-1, 1)), 1)
        self.assertEqual(count_roots(cubic * cubic, OpenInterval(Fraction(-1, 2), 2)), 2)
        self.assertEqual(count_roots(L(k2=1, k0=-2), OpenInterval(1, QuadraticNumber.sqrt(2))), 0)
        self.assertEqual(count_roots(L(k2=1, k0=-2), OpenInterval(QuadraticNumber.sqrt(2), None)), 0)

    def test_negative_exponents(self):
        poly = L(k1=1, k_1=-4)  # u - 4/u, roots +-2
        self.assertEqual(count_roots(poly, OpenInterval(1, 3)), 1)
        with self.assertRaises(IntervalContainsZero):
            nonvanishing_on(poly, OpenInterval(-1, 1))

    def test_zero_polynomial(self):
        self.assertFalse(nonvanishing_on(LaurentPoly(), OpenInterval(1, 2)))
        with self.assertRaises(ZeroPolynomial):
            count_roots(LaurentPoly(), OpenInterval(1, 2))

    @settings(max_examples=100, deadline=None)
    @given(laurent_polys(0, 6, 7),
           st.fractions(min_value=-4, max_value=4, max_denominator=16),
           st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=16))
    def test_never_misses_a_sampled_sign_change(self, poly, lo, width):
        assume(not poly.is_zero)
        hi = lo + width
        samples = [lo + width * Fraction(i, 256) for i in range(1, 256)]
        values = [poly(x) for x in samples]
        changes = any(a * b < 0 for a, b in zip(values, values[1:])) or 0 in values
        if changes:
            self.assertFalse(nonvanishing_on(poly, OpenInterval(lo, hi)))


class ClassifyPQTests(SimpleTestCase):
    def test_examples(self):
        case = classify_pq(L(k_1=3), L(k_1=1))
        self.assertEqual((case.tag, case.verdict.tag), (PQTag.CASE_I, VerdictTag.UNCONSTRAINED))

        case = classify_pq(L(k1=1, k0=1), L(k1=2, k0=5))
        self.assertEqual((case.tag, case.verdict.tag), (PQTag.CASE_II, VerdictTag.D1_ZERO))
        self.assertIn('= 3', case.steps[0].note)

        case = classify_pq(L(k2=1), L(k1=1))
        self.assertEqual((case.tag, case.verdict.tag), (PQTag.CASE_III, VerdictTag.STANDARD))
        self.assertEqual((case.pivot.k0, case.pivot.ell, case.pivot.r), (1, 2, Fraction(1, 2)))

    def test_trace_is_a_chain(self):
        case = classify_pq(L(k2=1), L(k1=1))
        self.assertEqual([node.step for node in case.steps],
                         ['wronskian', 'd1-zero', 'pivot', 'reduce-to-power', 'nis'])
        for previous, node in zip(case.steps, case.steps[1:]):
            self.assertEqual(node.premises, (previous.node_id,))

    def test_constant_p_is_recorded(self):
        case = classify_pq(L(k0=2), L(k1=1, k0=1))
        self.assertEqual(case.tag, PQTag.CASE_II)
        self.assertIn('constant P', case.steps[-1].note)

    @settings(max_examples=300, deadline=None)
    @given(laurent_polys(-3, 3, 5), laurent_polys(-3, 3, 5))
    def test_case_matches_rank_oracle(self, p, q):
        case = classify_pq(p, q)
        if dependent_by_rank(p, q):
            expected = PQTag.CASE_I
        elif dependent_by_rank(p.tail(), q.tail()):
            expected = PQTag.CASE_II
        else:
            expected = PQTag.CASE_III
        self.assertEqual(case.tag, expected)

    @settings(max_examples=200, deadline=None)
    @given(laurent_polys(-3, 3, 5), laurent_polys(-3, 3, 5),
           st.fractions(min_value=-5, max_value=5, max_denominator=7),
           st.fractions(min_value=-5, max_value=5, max_denominator=7),
           coefficients, coefficients)
    def test_affine_invariance(self, p, q, a, b, c, e):
        assume(a != 0 and b != 0)
        case = classify_pq(p, q)
        assume(case.tag is PQTag.CASE_III)
        moved = classify_pq(p * a + c, q * b + e)
        self.assertEqual((moved.tag, moved.verdict, moved.pivot.r), (case.tag, case.verdict, case.pivot.r))


class PolynomialTests(SimpleTestCase):
    def test_examples(self):
        interval = OpenInterval(1, 2)
        self.assertEqual(classify_polynomial(L(k0=7), interval).tag, VerdictTag.D1_ZERO)
        self.assertEqual(classify_polynomial(L(k1=3), interval).tag, VerdictTag.UNCONSTRAINED)
        self.assertEqual(classify_polynomial(L(k2=1, k0=1), interval).tag, VerdictTag.STANDARD)

    def test_rejections(self):
        with self.assertRaises(ZeroPolynomial):
            classify_polynomial(LaurentPoly())
        with self.assertRaises(NotAPolynomial):
            classify_polynomial(L(k_1=1))

    @settings(max_examples=200, deadline=None)
    @given(laurent_polys(0, 6, 7))
    def test_agrees_with_pair_classifier(self, poly):
        assume(not poly.is_zero)
        self.assertEqual(classify_polynomial(poly).tag, classify_pq(poly, L(k1=1)).verdict.tag)


class PowerDomainTests(SimpleTestCase):
    def test_table(self):
        self.assertEqual(power_domain(Fraction(2)).kind, DomainKind.REALS)
        self.assertEqual(power_domain(Fraction(-2)).kind, DomainKind.NONZERO)
        self.assertEqual(power_domain(Fraction(1, 2)).kind, DomainKind.NONNEGATIVE)
        self.assertEqual(power_domain(Fraction(-1, 2)).kind, DomainKind.POSITIVE)
        self.assertEqual(power_domain(Fraction(0)).kind, DomainKind.REALS)


class CorPQTests(SimpleTestCase):
    def test_examples(self):
        interval = OpenInterval(1, 2)
        self.assertEqual(check_cor_pq(L(k3=1), L(k2=1), interval).tag, VerdictTag.STANDARD)
        verdict = check_cor_pq(L(k1=1), L(k1=2), interval)
        self.assertEqual((verdict.tag, verdict.reason), (VerdictTag.INAPPLICABLE, 'DependentTails'))
        self.assertEqual(check_cor_pq(L(k2=1), L(k3=1, k1=-3), interval).tag, VerdictTag.STANDARD)

    def test_vanishing_derivative(self):
        verdict = check_cor_pq(L(k2=1), L(k3=1, k1=-3), OpenInterval(Fraction(1, 2), 2))
        self.assertEqual(verdict.reason, 'QPrimeVanishes')

    def test_interval_around_zero(self):
        with self.assertRaises(IntervalContainsZero):
            check_cor_pq(L(k2=1), L(k1=1), OpenInterval(-1, 1))


class LaurentApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_classify_pq(self):
        response = self.client.post('/api/classify-pq/', {
            'P': {'terms': [{'k': 2, 'c': '1'}]},
            'Q': {'terms': [{'k': 1, 'c': '1'}]},
        }, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['case'], 'iii')
        self.assertEqual(response.data['pivot'], {'k0': 1, 'ell': 2, 'r': '1/2'})

    def test_unsorted_terms_rejected(self):
        response = self.client.post('/api/classify-pq/', {
            'P': {'terms': [{'k': 2, 'c': '1'}, {'k': 1, 'c': '1'}]},
            'Q': {'terms': [{'k': 1, 'c': '1'}]},
        }, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('P', response.data)

    def test_cor_pq_inapplicable(self):
        response = self.client.post('/api/cor-pq/', {
            'P': {'terms': [{'k': 1, 'c': '1'}]},
            'Q': {'terms': [{'k': 1, 'c': '2'}]},
            'I': {'lo': '1', 'hi': '2'},
        }, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data, {'verdict': 'inapplicable', 'reason': 'DependentTails'})
