from fractions import Fraction

import mpmath
import sympy as sp
from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from rest_framework import serializers

from .exceptions import BadRational, EmptyInterval, NegativeRadicand
from .numbers import (
    OpenInterval, Order, QuadraticNumber, cmp_quadratic, format_rational,
    is_rational_square, parse_rational, smallest_denominator_rational,
)
from .serializers import IntervalField, QuadraticField, RationalField

small_rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
radicands = st.fractions(min_value=0, max_value=40, max_denominator=30)


def Q(text):
    return Fraction(text)


class RationalCodecTests(SimpleTestCase):
    def test_parse_forms(self):
        self.assertEqual(parse_rational('3/4'), Q('3/4'))
        self.assertEqual(parse_rational(' -6/8 '), Q('-3/4'))
        self.assertEqual(parse_rational('0.25'), Q('1/4'))
        self.assertEqual(parse_rational(7), 7)

    def test_rejects_inexact_and_malformed(self):
        for bad in (0.5, True, '1/0', 'abc', None):
            with self.assertRaises(BadRational):
                parse_rational(bad)

    def test_format_omits_unit_denominator(self):
        self.assertEqual(format_rational(Q('4/2')), '2')
        self.assertEqual(format_rational(Q('-2/6')), '-1/3')
        self.assertEqual(format_rational(0), '0')

    @given(small_rationals, small_rationals, small_rationals)
    def test_field_axioms_against_sympy(self, x, y, z):
        sx, sy, sz = (sp.Rational(v.numerator, v.denominator) for v in (x, y, z))
        lhs = x * (y + z)
        self.assertEqual(lhs, x * y + x * z)
        self.assertEqual(lhs, (y + z) * x)
        expected = sx * (sy + sz)
        self.assertEqual((lhs.numerator, lhs.denominator), (expected.p, expected.q))


class QuadraticNumberTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(cmp_quadratic(QuadraticNumber.sqrt(2), QuadraticNumber(Q('3/2'))), Order.LESS)
        self.assertEqual(cmp_quadratic(QuadraticNumber(1), QuadraticNumber(1)), Order.EQUAL)
        self.assertEqual(
            cmp_quadratic(QuadraticNumber(0, 1, Q('16/9')), QuadraticNumber(Q('4/3'))), Order.EQUAL)

    def test_perfect_square_normalizes(self):
        value = QuadraticNumber(1, 2, Q('9/4'))
        self.assertTrue(value.is_rational)
        self.assertEqual(value.a, 4)
        self.assertEqual((value.b, value.c), (0, 0))

    def test_negative_radicand(self):
        with self.assertRaises(NegativeRadicand):
            QuadraticNumber(0, 1, -2)

    def test_arithmetic_shares_radicand(self):
        root2 = QuadraticNumber.sqrt(2)
        self.assertEqual(root2 * root2, 2)
        self.assertEqual((1 + root2) * (1 - root2), -1)
        self.assertEqual((3 + root2).reciprocal() * (3 + root2), 1)
        self.assertEqual(QuadraticNumber.sqrt(2).floor(), 1)
        self.assertEqual((-root2).floor(), -2)

    def test_distinct_radicands(self):
        self.assertLess(QuadraticNumber.sqrt(2) + 1, QuadraticNumber.sqrt(6))
        self.assertGreater(QuadraticNumber(0, -1, 3), QuadraticNumber(-2, 0, 0) + QuadraticNumber.sqrt(Q('1/100')))
        self.assertLess(QuadraticNumber(1, 1, 2), QuadraticNumber(0, 1, 6))

    @settings(max_examples=400, deadline=None)
    @given(small_rationals, small_rationals, radicands, small_rationals, small_rationals, radicands)
    def test_agrees_with_high_precision(self, a1, b1, c1, a2, b2, c2):
        x, y = QuadraticNumber(a1, b1, c1), QuadraticNumber(a2, b2, c2)
        with mpmath.workprec(200):
            def approx(v):
                return mpmath.mpf(v.a.numerator) / v.a.denominator + (
                    mpmath.mpf(v.b.numerator) / v.b.denominator
                    * mpmath.sqrt(mpmath.mpf(v.c.numerator) / v.c.denominator))
            gap = approx(x) - approx(y)
            assume(abs(gap) > mpmath.mpf(2) ** -100)
            expected = Order.GREATER if gap > 0 else Order.LESS
        self.assertEqual(cmp_quadratic(x, y), expected)


class RationalSquareTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(is_rational_square(Q('25/16')), Q('5/4'))
        self.assertIsNone(is_rational_square(Q('3/4')))
        self.assertEqual(is_rational_square(0), 0)

    def test_negative(self):
        with self.assertRaises(NegativeRadicand):
            is_rational_square(Q('-1/4'))


class SmallestDenominatorTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(smallest_denominator_rational(OpenInterval(Q('1/3'), Q('1/2'))), Q('2/5'))
        self.assertEqual(smallest_denominator_rational(OpenInterval(-1, 1)), 0)
        self.assertEqual(smallest_denominator_rational(OpenInterval(2, 3)), Q('5/2'))

    def test_unbounded_and_negative(self):
        self.assertEqual(smallest_denominator_rational(OpenInterval(Q('7/2'), None)), 4)
        self.assertEqual(smallest_denominator_rational(OpenInterval(None, Q('-7/2'))), -4)
        self.assertEqual(smallest_denominator_rational(OpenInterval(Q('-1/2'), Q('-1/3'))), Q('-2/5'))
        self.assertEqual(smallest_denominator_rational(OpenInterval(0, Q('1/10'))), Q('1/11'))

    def test_surd_endpoints(self):
        interval = OpenInterval(QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(3))
        self.assertEqual(smallest_denominator_rational(interval), Q('3/2'))
        interval = OpenInterval(Q('1/3'), QuadraticNumber.sqrt(Q('3/7')))
        self.assertEqual(smallest_denominator_rational(interval), Q('1/2'))

    def test_empty_interval(self):
        with self.assertRaises(EmptyInterval):
            OpenInterval(1, 1)

    def test_from_bounds_sorts_endpoints(self):
        self.assertEqual(OpenInterval.from_bounds(QuadraticNumber.sqrt(3), Q('1/2')),
                         OpenInterval(Q('1/2'), QuadraticNumber.sqrt(3)))
        self.assertEqual(OpenInterval.from_bounds(-1, 2), OpenInterval(-1, 2))
        with self.assertRaises(EmptyInterval):
            OpenInterval.from_bounds(2, 2)

    @settings(max_examples=300, deadline=None)
    @given(small_rationals, st.fractions(min_value=Q('1/500'), max_value=3, max_denominator=500))
    def test_minimal_by_brute_force(self, lo, width):
        interval = OpenInterval(lo, lo + width)
        found = smallest_denominator_rational(interval)
        self.assertTrue(interval.contains(found))
        for den in range(1, found.denominator):
            first = (lo * den).__floor__() + 1
            self.assertFalse(interval.contains(Fraction(first, den)),
                             f'{first}/{den} is simpler than {found}')


class FieldTests(SimpleTestCase):
    def test_rational_field(self):
        field = RationalField()
        self.assertEqual(field.to_internal_value('6/4'), Q('3/2'))
        self.assertEqual(field.to_representation(Q('3/2')), '3/2')
        with self.assertRaises(serializers.ValidationError):
            field.to_internal_value(1.5)

    def test_quadratic_field(self):
        field = QuadraticField()
        value = field.to_internal_value({'a': '1', 'b': '2', 'c': '3'})
        self.assertEqual(field.to_representation(value), {'a': '1', 'b': '2', 'c': '3'})
        self.assertEqual(field.to_representation(field.to_internal_value({'b': '1', 'c': '4'})), '2')

    def test_interval_field(self):
        field = IntervalField()
        interval = field.to_internal_value({'lo': '-inf', 'hi': '1/2'})
        self.assertIsNone(interval.lo)
        self.assertEqual(field.to_representation(interval), {'lo': '-inf', 'hi': '1/2'})
        with self.assertRaises(serializers.ValidationError):
            field.to_internal_value({'lo': '1', 'hi': '1'})
        with self.assertRaises(serializers.ValidationError):
            field.to_internal_value({'lo': '+inf', 'hi': '1'})
