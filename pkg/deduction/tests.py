from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from rest_framework.test import APIClient

from exactnum.numbers import Order
from laurent.polynomials import LaurentPoly

from .bounds import Sym, compare, less, rational_between
from .catalog import compose, const, identity, law, laurent, power, tuple_of, unary, var
from .domains import DomainSet, Span
from .engine import run_deduction
from .exceptions import (
    ArityMismatch, DomainNotCovered, EmptyDomain, HypothesisFailed, ImageNotOpen,
    ReplayMismatch, SingularDerivative, UndecidableComparison, UnknownPremise, UnverifiedLaw,
)
from .maksa import ROWS, check_row, gamma_delta, half_window, maksa_verdict, rational_box
from .rules import (
    add_hypothesis, apply_addition_theorem, apply_compose, apply_descend, apply_inverse,
    conclude_from_leibniz, conclude_from_power, localize_leibniz, localize_power,
)
from .store import Fact, FactStore, replay
from .verdicts import Verdict, VerdictTag, prune_trace

small = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def on(func, lo, hi):
    return Fact(func, DomainSet.of(Span(Fraction(lo), Fraction(hi))))


def seeded(*facts):
    store, ids = FactStore(), []
    for fact in facts:
        store, fact_id = add_hypothesis(store, fact)
        ids.append(fact_id)
    return store, ids


def same_domain(left, right):
    return left.covers(right) and right.covers(left)


class BoundsTests(SimpleTestCase):
    def test_pi_against_rationals(self):
        self.assertTrue(less(Fraction(314159, 100000), Sym.pi(1)))
        self.assertTrue(less(Sym.pi(1), Fraction(314160, 100000)))
        self.assertTrue(less(2, Sym.pi(1)))

    def test_symbolic_endpoints(self):
        e = Sym.apply(unary('exp'), Sym.exact(1))
        self.assertEqual(e.kind, 'fn')
        self.assertTrue(less(Fraction(2718, 1000), e))
        self.assertTrue(less(e, Fraction(2719, 1000)))
        self.assertEqual(Sym.apply(unary('log'), e), Sym.exact(1))

    def test_odd_and_even_folding(self):
        sinh = unary('sinh')
        self.assertEqual(Sym.apply(sinh, Sym.exact(-1)), -Sym.apply(sinh, Sym.exact(1)))
        self.assertEqual(Sym.apply(unary('cosh'), Sym.exact(-1)), Sym.apply(unary('cosh'), Sym.exact(1)))

    def test_shifted_cosine(self):
        lam = Sym.exact(Fraction(1, 12))
        below = Sym.apply(unary('cos'), Sym.pi(Fraction(1, 2), Fraction(-1, 12)))
        above = Sym.apply(unary('cos'), Sym.pi(Fraction(1, 2), Fraction(1, 12)))
        self.assertEqual(below, Sym.apply(unary('sin'), lam))
        self.assertEqual(above, -below)

    def test_distinct_trees_are_compared_not_equated(self):
        a = Sym.apply(unary('sinh'), Sym.exact(1))
        b = Sym.apply(unary('tanh'), Sym.exact(1))
        self.assertIs(compare(b, a), Order.LESS)

    def test_rational_between(self):
        q = rational_between(Sym.exact(0), Sym.apply(unary('sinh'), Sym.exact(Fraction(1, 12))))
        self.assertEqual(q, Fraction(1, 12))


class DomainTests(SimpleTestCase):
    def test_empty_span(self):
        with self.assertRaises(EmptyDomain):
            Span(Fraction(1), Fraction(1))
        with self.assertRaises(EmptyDomain):
            Span(Sym.pi(1), 3)

    def test_minkowski_sum(self):
        span = Span(Fraction(-1, 2), Fraction(1, 3))
        self.assertEqual(span + span, Span(-1, Fraction(2, 3)))

    def test_union_covers_boxwise(self):
        union = DomainSet.of(Span(None, 0), Span(0, None))
        self.assertTrue(union.covers(Span(1, 2)))
        self.assertFalse(union.covers(Span(-1, 1)))
        self.assertEqual(str(union), ']-inf, 0[ u ]0, +inf[')


class GammaDeltaTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(gamma_delta(-1, 1), (Fraction(-1, 2), Fraction(1, 2)))
        self.assertEqual(gamma_delta(1, 3), (Fraction(1), Fraction(3, 2)))
        self.assertEqual(gamma_delta(-3, -1), (Fraction(-3, 2), Fraction(-1)))

    def test_violations(self):
        with self.assertRaises(HypothesisFailed) as caught:
            gamma_delta(1, 2)
        self.assertEqual(caught.exception.details['failed'], '2*alpha<beta')
        with self.assertRaises(HypothesisFailed) as caught:
            gamma_delta(-2, -1)
        self.assertEqual(caught.exception.details['failed'], 'alpha<2*beta')

    @settings(max_examples=1000, deadline=None)
    @given(small, small)
    def test_doubled_window_fits(self, alpha, beta):
        assume(2 * alpha < beta and alpha < 2 * beta)
        gamma, delta = gamma_delta(alpha, beta)
        self.assertLess(gamma, delta)
        self.assertGreaterEqual(2 * gamma, alpha)
        self.assertLessEqual(2 * delta, beta)
        self.assertGreaterEqual(gamma, alpha)
        self.assertLessEqual(delta, beta)


class ComposeTests(SimpleTestCase):
    def test_powers_multiply(self):
        store, (f, g) = seeded(on(power(2), 1, 2), on(power(3), 1, 4))
        store, h = apply_compose(store, f, g)
        fact = store.entry(h)
        self.assertEqual(fact.func, power(6))
        self.assertTrue(same_domain(fact.domain, DomainSet.of(Span(1, 2))))
        self.assertEqual(store.node(h).rule, 'Inv-i')

    def test_sinh_then_square(self):
        store, (f, g) = seeded(on(unary('sinh'), -1, 1), on(power(2), -2, 2))
        store, h = apply_compose(store, f, g)
        fact = store.entry(h)
        self.assertEqual(fact.func, compose(unary('sinh'), power(2)))
        self.assertTrue(same_domain(fact.domain, DomainSet.of(Span(-1, 1))))

    def test_pullback_shrinks(self):
        store, (f, g) = seeded(on(power(2), 1, 3), on(power(3), 1, 4))
        store, h = apply_compose(store, f, g)
        self.assertTrue(same_domain(store.entry(h).domain, DomainSet.of(Span(1, 2))))

    def test_arity_mismatch(self):
        square = Fact(law('mul'), DomainSet.product(Span(1, 2), Span(1, 2)))
        store, (f, g) = seeded(on(unary('sinh'), -1, 1), square)
        with self.assertRaises(ArityMismatch):
            apply_compose(store, f, g)

    def test_disjoint(self):
        store, (f, g) = seeded(on(power(2), 1, 2), on(power(3), 5, 6))
        with self.assertRaises(EmptyDomain):
            apply_compose(store, f, g)


class DescendTests(SimpleTestCase):
    def test_sinh_pair_descends_to_the_addition_law(self):
        pair = tuple_of(compose(var(0, 2), unary('sinh')), compose(var(1, 2), unary('sinh')))
        window = Span(Fraction(-1, 2), Fraction(1, 2))
        box = DomainSet.product(window, window)
        store, (f, gf) = seeded(Fact(pair, box), Fact(compose(pair, law('g_sinh')), box))
        store, g = apply_descend(store, f, gf, law('g_sinh'))
        fact = store.entry(g)
        self.assertEqual(fact.func, law('g_sinh'))
        first = fact.domain.boxes[0].spans[0]
        self.assertEqual(first.hi, Sym.apply(unary('sinh'), Sym.exact(Fraction(1, 2))))
        self.assertEqual(first.lo, -first.hi)
        self.assertTrue(first.contains(Fraction(52, 100)))
        self.assertFalse(first.contains(Fraction(53, 100)))
        self.assertEqual(store.node(g).rule, 'Inv-ii')

    def test_identity_passes_through(self):
        store, (f, gf) = seeded(on(identity(), 0, 1), on(unary('exp'), 0, 1))
        store, g = apply_descend(store, f, gf, unary('exp'))
        self.assertEqual(store.entry(g), store.entry(gf))

    def test_constant_has_no_open_image(self):
        store, (f, gf) = seeded(on(const(2), 0, 1), on(compose(const(2), unary('exp')), 0, 1))
        with self.assertRaises(ImageNotOpen):
            apply_descend(store, f, gf, unary('exp'))


class InverseTests(SimpleTestCase):
    def test_exp_to_log(self):
        store, (f,) = seeded(on(unary('exp'), 0, 1))
        store, g = apply_inverse(store, f)
        fact = store.entry(g)
        self.assertEqual(fact.func, unary('log'))
        span = fact.domain.span
        self.assertEqual(span.lo, Sym.exact(1))
        self.assertTrue(span.contains(Fraction(27, 10)))
        self.assertFalse(span.contains(Fraction(28, 10)))
        self.assertEqual(store.node(g).rule, 'Inv-iii')

    def test_cube_root(self):
        store, (f,) = seeded(on(power(3), 1, 2))
        store, g = apply_inverse(store, f)
        fact = store.entry(g)
        self.assertEqual(fact.func, power(Fraction(1, 3)))
        self.assertTrue(same_domain(fact.domain, DomainSet.of(Span(1, 8))))

    def test_square_is_singular_at_zero(self):
        store, (f,) = seeded(on(power(2), -1, 1))
        with self.assertRaises(SingularDerivative):
            apply_inverse(store, f)


class AdditionTheoremTests(SimpleTestCase):
    def test_exp(self):
        store, (f,) = seeded(on(unary('exp'), 0, 1))
        omega = Span(0, Fraction(1, 2))
        store, g = apply_addition_theorem(store, f, 'g_exp', omega, omega)
        fact = store.entry(g)
        self.assertEqual(fact.func, law('g_exp'))
        self.assertEqual(fact.domain.dim, 2)
        self.assertEqual(fact.domain.boxes[0].spans[0].lo, Sym.exact(1))
        self.assertEqual(store.node(g).rule, 'CorAdd')

    def test_tanh(self):
        store, (f,) = seeded(on(unary('tanh'), -1, 1))
        omega = Span(Fraction(-1, 2), Fraction(1, 2))
        store, g = apply_addition_theorem(store, f, 'g_tanh', omega, omega)
        span = store.entry(g).domain.boxes[0].spans[1]
        self.assertEqual(span.hi, Sym.apply(unary('tanh'), Sym.exact(Fraction(1, 2))))

    def test_sum_not_covered(self):
        store, (f,) = seeded(on(unary('exp'), 0, 1))
        omega = Span(0, Fraction(3, 4))
        with self.assertRaises(DomainNotCovered):
            apply_addition_theorem(store, f, 'g_exp', omega, omega)

    def test_wrong_law(self):
        store, (f,) = seeded(on(unary('exp'), 0, 1))
        omega = Span(0, Fraction(1, 2))
        with self.assertRaises(UnverifiedLaw):
            apply_addition_theorem(store, f, 'g_sinh', omega, omega)


class LocalizationTests(SimpleTestCase):
    def test_square_widens_to_the_line(self):
        store, (f,) = seeded(on(power(2), 5, 6))
        store, g = localize_power(store, f)
        fact = store.entry(g)
        self.assertEqual(fact.func, power(2))
        self.assertTrue(fact.domain.covers(Span.real_line()))
        self.assertEqual(store.node(g).rule, 'Nisalt')
        self.assertIn('D_(r-1)', store.node(g).note)

    def test_reciprocal_widens_to_nonzero(self):
        store, (f,) = seeded(on(power(-1), 1, 2))
        store, g = localize_power(store, f)
        domain = store.entry(g).domain
        self.assertEqual(len(domain.boxes), 2)
        self.assertTrue(domain.covers(Span(None, 0)))
        self.assertFalse(domain.covers(Span(-1, 1)))

    def test_square_root_widens_to_positive(self):
        store, (f,) = seeded(on(power(Fraction(1, 2)), 1, 4))
        store, g = localize_power(store, f)
        self.assertTrue(same_domain(store.entry(g).domain, DomainSet.of(Span(0, None))))

    def test_leibniz(self):
        store, (f,) = seeded(Fact(law('mul'), DomainSet.product(Span(1, 2), Span(1, 2))))
        store, g = localize_leibniz(store, f)
        self.assertTrue(store.entry(g).domain.covers(DomainSet.product(Span.real_line(), Span.real_line())))
        self.assertEqual(conclude_from_leibniz(store, g)[0].nodes[-1].verdict, Verdict.standard())

    def test_leibniz_on_the_plane_is_unchanged(self):
        whole = Fact(law('mul'), DomainSet.product(Span.real_line(), Span.real_line()))
        store, (f,) = seeded(whole)
        again, g = localize_leibniz(store, f)
        self.assertIs(again, store)
        self.assertEqual(g, f)


class ConcludeFromPowerTests(SimpleTestCase):
    def verdict(self, fact):
        store, (f,) = seeded(fact)
        store, g = conclude_from_power(store, f)
        return store.node(g)

    def test_square(self):
        node = self.verdict(on(power(2), Fraction(1, 3), Fraction(1, 2)))
        self.assertEqual(node.verdict, Verdict.standard())
        self.assertEqual(node.rule, 'Nis')

    def test_identity_is_trivial(self):
        node = self.verdict(on(power(1), 0, 1))
        self.assertEqual(node.verdict, Verdict.inapplicable('TrivialExponent'))

    def test_square_root(self):
        self.assertEqual(self.verdict(on(power(Fraction(1, 2)), 1, 4)).verdict, Verdict.standard())


SATISFYING = {
    'exp': (0, 1),
    'sinh': (Fraction(-1, 2), Fraction(1, 3)),
    'cosh': (1, 3),
    'tanh': (-1, 1),
    'coth': (1, 3),
    'sin': (-1, 1),
    'cos': (1, Fraction(7, 2)),
    'tan': (Fraction(-1, 2), Fraction(1, 2)),
    'cot': (Fraction(1, 2), Fraction(3, 2)),
}

VIOLATING = {
    'exp': (1, 2, '2*alpha<beta'),
    'sinh': (1, 2, 'alpha<0'),
    'cosh': (-1, 1, '0<2*alpha'),
    'tanh': (1, 2, 'alpha<0'),
    'coth': (1, 2, '2*alpha<beta'),
    'sin': (1, 2, 'alpha<0'),
    'cos': (1, 2, 'pi<beta'),
    'tan': (Fraction(1, 2), 1, '2*alpha<beta'),
    'cot': (1, Fraction(3, 2), '2*alpha<beta'),
}


class RowTests(SimpleTestCase):
    def test_every_row_has_fixtures(self):
        self.assertEqual(set(SATISFYING), set(ROWS))
        self.assertEqual(set(VIOLATING), set(ROWS))

    def test_satisfying(self):
        for fn, (alpha, beta) in SATISFYING.items():
            with self.subTest(fn=fn):
                self.assertEqual(check_row(fn, Fraction(alpha), Fraction(beta))[1], '')

    def test_second_alternatives(self):
        self.assertEqual(check_row('cos', Fraction(-7, 2), Fraction(-1)), (1, ''))
        self.assertEqual(check_row('cosh', Fraction(-3), Fraction(-1)), (1, ''))

    def test_violating(self):
        for fn, (alpha, beta, failed) in VIOLATING.items():
            with self.subTest(fn=fn):
                self.assertEqual(check_row(fn, Fraction(alpha), Fraction(beta))[1], failed)


class WindowTests(SimpleTestCase):
    def test_half_window(self):
        self.assertEqual(half_window(Sym.exact(Fraction(1, 4))), Fraction(1, 8))
        lam = half_window(Sym.pi(Fraction(-1, 2), Fraction(7, 4)))
        self.assertTrue(less(Sym.pi(Fraction(-1, 8), Fraction(7, 16)), lam))
        self.assertTrue(less(lam, Sym.pi(Fraction(-1, 4), Fraction(7, 8))))

    def test_rational_box(self):
        span = Span(Sym.apply(unary('tanh'), Sym.exact(Fraction(-1, 2))),
                    Sym.apply(unary('tanh'), Sym.exact(Fraction(1, 2))))
        lam, mu = rational_box(span, lambda x, y: x * y > 0)
        self.assertEqual((lam, mu), (Fraction(-1, 3), Fraction(-1, 4)))

    def test_rational_box_gives_up(self):
        with self.assertRaises(UndecidableComparison):
            rational_box(Span(Fraction(1, 3), Fraction(1, 2)), lambda x, y: False, max_denominator=20)


class MaksaTests(SimpleTestCase):
    def test_every_row_concludes(self):
        for fn, (alpha, beta) in SATISFYING.items():
            with self.subTest(fn=fn):
                result = maksa_verdict(fn, alpha, beta)
                self.assertEqual(result.verdict, Verdict.standard())
                self.assertEqual(result.trace[0].step, 'hypothesis')
                self.assertIn(f'Mak-({result.case})', {node.rule for node in result.trace})

    def test_every_trace_replays(self):
        for fn, (alpha, beta) in SATISFYING.items():
            with self.subTest(fn=fn):
                result = maksa_verdict(fn, alpha, beta)
                rebuilt = replay(result.trace)
                self.assertEqual(rebuilt.nodes[-1].verdict, result.verdict)
                self.assertEqual(len(rebuilt.nodes), len(result.trace))

    def test_every_row_rejects(self):
        for fn, (alpha, beta, failed) in VIOLATING.items():
            with self.subTest(fn=fn):
                result = maksa_verdict(fn, alpha, beta)
                self.assertEqual(result.verdict, Verdict.inapplicable('HypothesisFailed', failed))

    def test_case_specific_steps(self):
        steps = {fn: [node.step for node in maksa_verdict(fn, *SATISFYING[fn]).trace] for fn in ('sinh', 'cosh', 'coth', 'cos')}
        self.assertEqual(steps['sinh'][-6:], ['symmetrize', 'd1-zero-at', 'section', 'substitute-w',
                                               'localize-leibniz', 'conclude-leibniz'])
        self.assertEqual(steps['cosh'][-4:], ['substitute', 'drop-d1', 'relation-to-power', 'conclude-power'])
        self.assertIn('relation-d1-zero', steps['coth'])
        self.assertIn('subtract', steps['cos'])

    def test_second_alternatives_conclude(self):
        self.assertEqual(maksa_verdict('cos', Fraction(-7, 2), -1).verdict, Verdict.standard())
        self.assertEqual(maksa_verdict('cosh', -3, -1).verdict, Verdict.standard())

    def test_outside_natural_domain_is_inapplicable(self):
        result = maksa_verdict('coth', -1, 1)
        self.assertTrue(result.verdict.is_inapplicable)
        self.assertEqual(result.trace, ())

    def test_empty_interval(self):
        with self.assertRaises(HypothesisFailed) as caught:
            maksa_verdict('exp', 1, 1)
        self.assertEqual(caught.exception.details['failed'], 'alpha<beta')

    def test_enlarging_keeps_the_verdict(self):
        self.assertEqual(maksa_verdict('sinh', -1, 1).verdict, Verdict.standard())


class ReplayTests(SimpleTestCase):
    def test_tampered_trace(self):
        trace = maksa_verdict('exp', 0, 1).trace
        with self.assertRaises(ReplayMismatch):
            replay(trace[1:])

    def test_unknown_premise(self):
        with self.assertRaises(UnknownPremise):
            FactStore().apply('inverse', (3,))

    def test_prune(self):
        trace = maksa_verdict('exp', 0, 1).trace
        self.assertEqual(prune_trace(trace, 0), [])
        self.assertEqual(prune_trace(trace, 1), [trace[-1]])
        self.assertEqual(prune_trace(trace), list(trace))


class RunDeductionTests(SimpleTestCase):
    def test_square(self):
        result = run_deduction([on(power(2), 5, 6)])
        self.assertEqual(result.verdict, Verdict.standard())
        self.assertEqual([node.rule for node in result.trace], ['hypothesis', 'Nisalt', 'Nis'])

    def test_affine_polynomial(self):
        result = run_deduction([on(laurent(LaurentPoly({0: 1, 1: 1})), 1, 2)])
        self.assertEqual(result.verdict.tag, VerdictTag.D1_ZERO)

    def test_nothing(self):
        result = run_deduction([])
        self.assertEqual(result.verdict, Verdict.unconstrained())
        self.assertEqual(result.trace, ())

    def test_more_hypotheses_never_weaken(self):
        result = run_deduction([on(laurent(LaurentPoly({0: 1, 1: 1})), 1, 2), on(power(2), 5, 6)])
        self.assertEqual(result.verdict, Verdict.standard())

    def test_addition_law_route(self):
        result = run_deduction([on(unary('exp'), 0, 1)])
        self.assertEqual(result.verdict, Verdict.standard())
        self.assertIn('Mak-(i)', [node.rule for node in result.trace])

    def test_reciprocal(self):
        self.assertEqual(run_deduction([on(power(-1), 1, 2)]).verdict, Verdict.standard())

    def test_depth_limit(self):
        result = run_deduction([on(power(2), 5, 6)], depth=0)
        self.assertTrue(result.depth_exceeded)
        self.assertEqual(result.verdict, Verdict.unconstrained())

    def test_undeclared_domain(self):
        with self.assertRaises(DomainNotCovered):
            run_deduction([on(unary('log'), -1, 1)])

    def test_trace_replays(self):
        result = run_deduction([on(power(2), 5, 6)])
        self.assertEqual(replay(result.trace).nodes[-1].verdict, Verdict.standard())


class DeductionApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_maksa(self):
        response = self.client.post('/api/maksa/', {'fn': 'exp', 'alpha': '0', 'beta': '1'}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['verdict'], 'standard-derivation')
        self.assertEqual(response.data['case'], 'i')
        self.assertTrue(all('citation' in node for node in response.data['trace']))

    def test_maksa_inapplicable(self):
        response = self.client.post('/api/maksa/', {'fn': 'cos', 'alpha': '1', 'beta': '2'}, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['verdict'], 'inapplicable')
        self.assertEqual(response.data['failed'], 'pi<beta')

    def test_maksa_unknown_fn(self):
        response = self.client.post('/api/maksa/', {'fn': 'cosine', 'alpha': '1', 'beta': '2'}, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('fn', response.data)

    def test_deduce(self):
        body = {'hypotheses': [{'func': {'fn': 'power', 'r': '2'}, 'domain': {'lo': '5', 'hi': '6'}}]}
        response = self.client.post('/api/deduce/', body, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['verdict'], 'standard-derivation')
        self.assertEqual([node['rule'] for node in response.data['trace']], ['hypothesis', 'Nisalt', 'Nis'])

    def test_deduce_trace_depth(self):
        body = {'hypotheses': [{'func': {'fn': 'power', 'r': '2'}, 'domain': {'lo': '5', 'hi': '6'}}]}
        response = self.client.post('/api/deduce/?trace_depth=1', body, format='json')
        self.assertEqual(len(response.data['trace']), 1)

    def test_deduce_box_and_union(self):
        body = {'hypotheses': [
            {'func': {'fn': 'mul'}, 'domain': {'box': [{'lo': '1', 'hi': '2'}, {'lo': '1', 'hi': '2'}]}},
            {'func': {'fn': 'power', 'r': '-1'},
             'domain': {'union': [{'lo': '-2', 'hi': '-1'}, {'lo': '1', 'hi': '2'}]}},
        ]}
        response = self.client.post('/api/deduce/', body, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['verdict'], 'standard-derivation')

    def test_bad_exponent(self):
        body = {'hypotheses': [{'func': {'fn': 'power', 'r': 'two'}, 'domain': {'lo': '5', 'hi': '6'}}]}
        response = self.client.post('/api/deduce/', body, format='json')
        self.assertEqual(response.status_code, 400)

    def test_dimension_mismatch(self):
        body = {'hypotheses': [{'func': {'fn': 'mul'}, 'domain': {'lo': '1', 'hi': '2'}}]}
        response = self.client.post('/api/deduce/', body, format='json')
        self.assertEqual(response.status_code, 400)

    def test_undeclared_domain_is_422(self):
        body = {'hypotheses': [{'func': {'fn': 'log'}, 'domain': {'lo': '-1', 'hi': '1'}}]}
        response = self.client.post('/api/deduce/', body, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'DomainNotCovered')
