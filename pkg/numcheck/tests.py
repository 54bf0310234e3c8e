import math
from fractions import Fraction

import numpy as np
import sympy as sp
from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from rest_framework.test import APIClient

from deduction.catalog import compose, identity, law, laurent, power, tuple_of, unary, var
from deduction.domains import DomainSet, Span
from deduction.exceptions import ArityMismatch
from deduction.rules import add_hypothesis, apply_compose, apply_inverse
from deduction.store import Fact, FactStore
from laurent.polynomials import LaurentPoly

from .exceptions import DomainViolation, NonAlgebraicFunction, UnknownCase
from .expressions import Expr
from .model import T, RatFunc, model_check_fact, model_derivate
from .oracle import (
    CASES, Check, case_key, grad_check, grad_check_catalog, halton_grid, run_checks,
    verify_addition_identity, verify_bor_identity,
)

coefficients = st.integers(min_value=-9, max_value=9)


def polys(max_degree=5):
    return st.lists(coefficients, min_size=1, max_size=max_degree + 1).map(
        lambda cs: sp.Poly.from_list(cs, T, domain='QQ'))


def ratfuncs(max_degree=5):
    return st.tuples(polys(max_degree), polys(max_degree).filter(lambda p: not p.is_zero)).map(
        lambda parts: RatFunc(*parts))


def on(func, lo, hi):
    return Fact(func, DomainSet.of(Span(Fraction(lo), Fraction(hi))))


class ExpressionTests(SimpleTestCase):
    def test_free_form_partials(self):
        expr = Expr.parse('u*sqrt(1 - v**2)', ('u', 'v'))
        du, dv = expr.jacobian(0.3, 0.4)
        self.assertAlmostEqual(du, math.sqrt(0.84), places=12)
        self.assertAlmostEqual(dv, -0.3 * 0.4 / math.sqrt(0.84), places=12)

    def test_catalog_law(self):
        du, dv = Expr.from_func(law('g_tanh')).jacobian(0.2, 0.5)
        self.assertAlmostEqual(du, (1 - 0.25) / 1.1 ** 2, places=12)
        self.assertAlmostEqual(dv, (1 - 0.04) / 1.1 ** 2, places=12)

    def test_functions_numpy_lacks(self):
        self.assertAlmostEqual(Expr.from_func(unary('coth')).at([1.0])[0], 1 / math.tanh(1.0), places=12)
        self.assertAlmostEqual(Expr.from_func(unary('acot')).at([2.0])[0], math.atan(0.5), places=12)

    def test_vector_valued(self):
        pair = tuple_of(compose(var(0, 2), unary('sinh')), var(1, 2))
        expr = Expr.from_func(pair)
        self.assertEqual(expr.arity, (2, 2))
        np.testing.assert_allclose(expr.jacobian(0.0, 5.0), [1.0, 0.0, 0.0, 1.0])

    def test_unknown_names(self):
        with self.assertRaises(ValueError):
            Expr.parse('x + y', ('x',))

    def test_outside_the_domain(self):
        with self.assertRaises(DomainViolation):
            Expr.parse('sqrt(x)').at([-1.0])


class OracleTests(SimpleTestCase):
    def test_every_case_passes(self):
        for case in CASES:
            with self.subTest(case=case):
                report = verify_addition_identity(f'Mak-({case})', 1000, 1e-9)
                self.assertTrue(report.passed, report)
                self.assertEqual(report.identity, f'Mak-({case})')
                self.assertEqual(report.samples, 1000)

    def test_addition_formula_is_tight(self):
        report = verify_addition_identity('Mak-(iv)', 100, 1e-12)
        self.assertTrue(report.passed)
        self.assertLess(report.max_rel, 1e-12)

    def test_cosh_coefficient(self):
        du = Expr.from_func(law('g_cosh')).jacobian(1.5, 2.0)[0]
        self.assertAlmostEqual(du, 2.0 + 1.5 * math.sqrt(3.0) / math.sqrt(1.25), places=9)

    def test_sin_symmetrized_coefficient(self):
        dv = Expr.from_func(law('h_sin')).jacobian(0.3, 0.4)[1]
        self.assertAlmostEqual(dv, -0.3 * 0.4 / math.sqrt(1 - 0.16), places=9)

    def test_bor(self):
        self.assertTrue(verify_bor_identity(1000, 1e-9).passed)
        x = sp.Symbol('x')
        slope = sp.diff(sp.sqrt(1 - x ** 2), x)
        self.assertAlmostEqual(float(slope.subs(x, 0.6)), -0.75, places=12)
        self.assertEqual(slope.subs(x, 0), 0)

    def test_margin(self):
        points = halton_grid('bor', 1000, ((-1, 1),))
        self.assertTrue(np.all(np.abs(points) <= 1 - 1 / 16))

    def test_reports_are_reproducible(self):
        self.assertEqual(verify_addition_identity('Mak-(vii)', 50, 1e-9),
                         verify_addition_identity('Mak-(vii)', 50, 1e-9))

    def test_case_ids(self):
        self.assertEqual(case_key('Mak-(iv)'), 'iv')
        self.assertEqual(case_key('Mak-iv'), 'iv')
        self.assertEqual(case_key('ix'), 'ix')
        for bad in ('Mak-(x)', 'tanh', ''):
            with self.subTest(bad=bad), self.assertRaises(UnknownCase):
                case_key(bad)

    def test_wrong_identity_fails(self):
        x = sp.Symbol('x')
        report = run_checks('sin-cos', [Check('sin = cos', (x,), sp.sin(x), sp.cos(x), ((0, 1),))], 100, 1e-9)
        self.assertFalse(report.passed)
        self.assertEqual(report.worst['check'], 'sin = cos')
        self.assertEqual(len(report.worst['point']), 1)

    def test_no_samples(self):
        with self.assertRaises(ValueError):
            verify_bor_identity(0, 1e-9)


class GradCheckTests(SimpleTestCase):
    def test_square(self):
        report = grad_check(power(2), [3.0], 1e-6, 1e-5)
        self.assertTrue(report.passed)
        self.assertLess(report.max_abs, 1e-6)

    def test_tanh_at_zero(self):
        expr = Expr.from_func(unary('tanh'))
        self.assertEqual(expr.jacobian(0.0)[0], 1.0)
        self.assertTrue(grad_check(expr, [0.0]).passed)

    def test_tanh_law(self):
        self.assertTrue(grad_check(law('g_tanh'), [0.2, 0.5], tol=1e-6).passed)

    def test_free_form(self):
        self.assertTrue(grad_check(Expr.parse('u*v/(1 + u**2)', ('u', 'v')), [0.7, -1.3]).passed)

    def test_singular_point(self):
        with self.assertRaises(DomainViolation):
            grad_check(unary('sqrt'), [0.0])

    def test_wrong_dimension(self):
        with self.assertRaises(ValueError):
            grad_check(law('mul'), [1.0])

    def test_whole_catalog(self):
        for report in grad_check_catalog(samples=100, tol=1e-5):
            with self.subTest(identity=report.identity):
                self.assertTrue(report.passed, report)


class ModelTests(SimpleTestCase):
    def test_derivate(self):
        self.assertEqual(model_derivate(RatFunc(T ** 2)), RatFunc(2 * T))
        self.assertEqual(model_derivate(RatFunc(1 + T, T)), RatFunc.from_expr(-1 / T ** 2))
        self.assertTrue(model_derivate(RatFunc(5)).is_zero)

    def test_canonical_form(self):
        value = RatFunc(2 * T + 2, 2 * T ** 2 + 2 * T)
        self.assertEqual(value, RatFunc(1, T))
        self.assertEqual(value.den.LC(), 1)
        self.assertEqual(hash(value), hash(RatFunc(1, T)))
        self.assertEqual(RatFunc(Fraction(1, 2)) * 2, 1)

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            RatFunc(T, 0)
        with self.assertRaises(ZeroDivisionError):
            RatFunc(T) / 0

    def test_not_rational(self):
        with self.assertRaises(NonAlgebraicFunction):
            RatFunc.from_expr(sp.sqrt(T))

    @settings(deadline=None, max_examples=1000)
    @given(ratfuncs(), ratfuncs())
    def test_sum_and_product_rules(self, x, y):
        self.assertEqual(model_derivate(x + y), model_derivate(x) + model_derivate(y))
        self.assertEqual(model_derivate(x * y), model_derivate(x) * y + x * model_derivate(y))

    def test_fact_examples(self):
        self.assertTrue(model_check_fact(power(3), [T]))
        self.assertTrue(model_check_fact(law('mul'), [T, T + 1]))
        self.assertTrue(model_check_fact(law('g_tanh'), [T, 2 * T]))
        self.assertTrue(model_check_fact(laurent(LaurentPoly({2: 1, -1: 3})), [T + 1]))

    def test_transcendental_maps_are_rejected(self):
        for func in (unary('exp'), law('g_sinh'), power(Fraction(1, 2))):
            with self.subTest(func=str(func)), self.assertRaises(NonAlgebraicFunction):
                model_check_fact(func, [T] * func.arity[0])

    def test_identity_map_is_not_a_derivation(self):
        self.assertTrue(model_check_fact(law('add'), [T, T ** 2], derivation=RatFunc.coerce))
        self.assertFalse(model_check_fact(law('mul'), [T, T + 1], derivation=RatFunc.coerce))

    def test_witness_shape(self):
        with self.assertRaises(ArityMismatch):
            model_check_fact(law('mul'), [T])

    def test_undefined_at_witness(self):
        with self.assertRaises(DomainViolation):
            model_check_fact(law('g_tanh'), [T, -1 / T])


class SoundnessTests(SimpleTestCase):
    """Conclusions of the rules hold in Q(t) whenever their premises do."""

    @settings(deadline=None, max_examples=200)
    @given(st.integers(min_value=2, max_value=4), st.integers(min_value=2, max_value=4), ratfuncs(4))
    def test_compose(self, a, b, w):
        store = FactStore()
        store, f = add_hypothesis(store, on(power(a), 1, 2))
        store, g = add_hypothesis(store, on(power(b), 1, 100))
        self.assertTrue(model_check_fact(store.entry(f).func, [w]))
        self.assertTrue(model_check_fact(store.entry(g).func, [w]))
        store, h = apply_compose(store, f, g)
        self.assertTrue(model_check_fact(store.entry(h).func, [w]))

    @settings(deadline=None, max_examples=200)
    @given(coefficients, coefficients, ratfuncs(4))
    def test_inverse_of_affine(self, a, b, w):
        assume(a != 0)
        store, f = add_hypothesis(FactStore(), on(laurent(LaurentPoly({1: a, 0: b})), 0, 1))
        self.assertTrue(model_check_fact(store.entry(f).func, [w]))
        store, g = apply_inverse(store, f)
        conclusion = store.entry(g).func
        self.assertTrue(conclusion.is_algebraic)
        self.assertTrue(model_check_fact(conclusion, [w]))

    @settings(deadline=None, max_examples=200)
    @given(ratfuncs(4))
    def test_reciprocal(self, w):
        assume(not w.is_zero)
        store, f = add_hypothesis(FactStore(), on(power(-1), 1, 2))
        store, g = apply_inverse(store, f)
        self.assertEqual(store.entry(g).func, power(-1))
        self.assertTrue(model_check_fact(store.entry(g).func, [w]))

    def test_identity_composes_away(self):
        self.assertEqual(compose(identity(), law('g_tan')), law('g_tan'))
        self.assertTrue(model_check_fact(law('g_tan'), [T, 1 + T]))


class NumcheckApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_single_case(self):
        response = self.client.post('/api/verify-identities/', {'case': 'Mak-iv', 'samples': 100}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertTrue(response.data['passed'])
        self.assertEqual([r['identity'] for r in response.data['reports']], ['Mak-(iv)'])

    def test_bor(self):
        response = self.client.post('/api/verify-identities/', {'case': 'bor', 'samples': 10}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['reports'][0]['identity'], 'bor')

    def test_unknown_case(self):
        response = self.client.post('/api/verify-identities/', {'case': 'Mak-(x)'}, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('case', response.data)

    def test_failing_tolerance_is_422(self):
        response = self.client.post('/api/verify-identities/', {'case': 'iii', 'samples': 50, 'tol': 0},
                                    format='json')
        self.assertEqual(response.status_code, 422)
        self.assertFalse(response.data['passed'])

    def test_grad_check(self):
        response = self.client.post('/api/grad-check/', {'expr': 'x**2', 'point': [3]}, format='json')
        self.assertEqual(response.status_code, 200)
        response = self.client.post('/api/grad-check/', {'func': {'fn': 'g_tanh'}, 'point': [0.2, 0.5]},
                                    format='json')
        self.assertEqual(response.status_code, 200)
        self.assertTrue(response.data['passed'])

    def test_grad_check_input_errors(self):
        both = {'expr': 'x', 'func': {'fn': 'exp'}, 'point': [0]}
        self.assertEqual(self.client.post('/api/grad-check/', both, format='json').status_code, 400)
        short = {'func': {'fn': 'mul'}, 'point': [1]}
        self.assertEqual(self.client.post('/api/grad-check/', short, format='json').status_code, 400)

    def test_grad_check_singular(self):
        response = self.client.post('/api/grad-check/', {'func': {'fn': 'sqrt'}, 'point': [0]}, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'DomainViolation')
