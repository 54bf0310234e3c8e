import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .exceptions import ParseError, SchemaError
from .spec import COMMAND_SERIALIZERS, ProblemSpec, flatten_errors, parse_spec, render, run


def derive(*args, stdin=None, **options):
    """Run the command; returns (exit code, stdout)."""
    out = StringIO()
    if stdin is not None:
        options['stdin'] = StringIO(stdin)
    try:
        call_command('derive', *args, stdout=out, **options)
    except CommandError as e:
        return e.returncode, out.getvalue()
    return 0, out.getvalue()


class ParseSpecTests(SimpleTestCase):
    def test_classify_pq(self):
        spec = parse_spec('{"command":"classify-pq","P":{"terms":[{"k":2,"c":"1"}]},"Q":{"terms":[{"k":1,"c":"1"}]}}')
        self.assertEqual(spec.command, 'classify-pq')
        self.assertEqual(set(spec.payload), {'P', 'Q'})

    def test_dense_point(self):
        spec = parse_spec('{"command":"dense-point","set":"V","x":"3/2","eps":"1/4"}')
        self.assertEqual(spec, ProblemSpec('dense-point', {'set': 'V', 'x': '3/2', 'eps': '1/4'}))

    def test_bytes(self):
        self.assertEqual(parse_spec(b'{"command":"maksa","fn":"exp","alpha":"0","beta":"1"}').command, 'maksa')

    def test_unknown_function(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_spec('{"command":"maksa","fn":"cosine","alpha":"1","beta":"2"}')
        self.assertEqual(ctx.exception.details['errors'][0]['field'], 'fn')

    def test_unknown_command(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_spec('{"command":"prove-everything"}')
        self.assertEqual(ctx.exception.details['errors'][0]['field'], 'command')

    def test_not_an_object(self):
        with self.assertRaises(SchemaError):
            parse_spec('[1, 2]')

    def test_inexact_rational(self):
        with self.assertRaises(SchemaError) as ctx:
            parse_spec('{"command":"membership","set":"U","s":"pi"}')
        self.assertEqual(ctx.exception.details['errors'][0]['field'], 's')

    def test_line_and_column(self):
        with self.assertRaises(ParseError) as ctx:
            parse_spec('{\n  "command": "maksa",\n  "fn": exp\n}')
        self.assertEqual(ctx.exception.details['line'], 3)
        self.assertEqual(ctx.exception.details['column'], 9)

    def test_nested_field_paths(self):
        errors = flatten_errors({'hypotheses': [{}, {'func': ['Unknown catalog entry.']}]})
        self.assertEqual(errors, [{'field': 'hypotheses.1.func', 'rule': 'Unknown catalog entry.'}])

    def test_every_command_has_a_serializer(self):
        for command in ('classify-pq', 'classify-poly', 'cor-pq', 'dense-point', 'membership',
                        'deduce', 'maksa', 'verify-identities'):
            self.assertIn(command, COMMAND_SERIALIZERS)


class RunTests(SimpleTestCase):
    def test_maksa(self):
        code, payload = run(parse_spec('{"command":"maksa","fn":"exp","alpha":"0","beta":"1"}'))
        self.assertEqual(code, 0)
        self.assertEqual(payload['verdict'], 'standard-derivation')

    def test_inapplicable(self):
        code, payload = run(parse_spec('{"command":"maksa","fn":"cos","alpha":"1","beta":"2"}'))
        self.assertEqual(code, 2)
        self.assertEqual(payload['failed'], 'pi<beta')

    def test_closure_error(self):
        code, payload = run(parse_spec('{"command":"dense-point","set":"U","x":"1","eps":"-1"}'))
        self.assertEqual(code, 1)
        self.assertIn('error', payload)

    def test_output_round_trips(self):
        _, payload = run(parse_spec('{"command":"classify-poly","P":{"terms":[{"k":2,"c":"1"}]}}'))
        self.assertEqual(json.loads(render(payload)), json.loads(json.dumps(payload)))


class DeriveCommandTests(SimpleTestCase):
    def test_golden_maksa_inapplicable(self):
        self.assertEqual(
            derive('maksa', 'cos', '1', '2'),
            (2, '{"failed": "pi<beta", "reason": "HypothesisFailed", "trace": [], "verdict": "inapplicable"}\n'),
        )

    def test_golden_membership(self):
        code, out = derive(stdin='{"command": "membership", "set": "U", "s": "3/4"}')
        self.assertEqual(code, 0)
        self.assertEqual(out, '{"companion": "5/4", "member": true, "s": "3/4", "set": "U"}\n')

    def test_golden_parse_error(self):
        code, out = derive(stdin='{"command": ')
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['error'], 'ParseError')

    def test_golden_schema_error(self):
        code, out = derive('maksa', 'cosine', '1', '2')
        self.assertEqual(code, 1)
        error = json.loads(out)
        self.assertEqual(error['error'], 'SchemaError')
        self.assertEqual(error['errors'][0]['field'], 'fn')

    def test_maksa_short_form_matches_json(self):
        short = derive('maksa', 'exp', '0', '1')
        spelled = derive(stdin='{"command": "maksa", "fn": "exp", "alpha": "0", "beta": "1"}')
        self.assertEqual(short, spelled)
        self.assertEqual(short[0], 0)
        self.assertEqual(json.loads(short[1])['verdict'], 'standard-derivation')

    def test_every_command_is_deterministic(self):
        problems = [
            {'command': 'classify-pq', 'P': {'terms': [{'k': 2, 'c': '1'}]}, 'Q': {'terms': [{'k': 1, 'c': '1'}]}},
            {'command': 'classify-poly', 'P': {'terms': [{'k': 3, 'c': '1'}, {'k': 0, 'c': '2'}]}},
            {'command': 'cor-pq', 'P': {'terms': [{'k': 2, 'c': '1'}]}, 'Q': {'terms': [{'k': 1, 'c': '1'}]},
             'I': {'lo': '1', 'hi': '2'}},
            {'command': 'dense-point', 'set': 'V', 'x': '3/2', 'eps': '1/4'},
            {'command': 'membership', 'set': 'W', 's': '3/5'},
            {'command': 'deduce', 'hypotheses': [{'func': {'fn': 'power', 'r': '2'}, 'domain': {'lo': '5', 'hi': '6'}}]},
            {'command': 'maksa', 'fn': 'tanh', 'alpha': '-1', 'beta': '1'},
            {'command': 'verify-identities', 'case': 'bor', 'samples': 20},
        ]
        for problem in problems:
            with self.subTest(command=problem['command']):
                text = json.dumps(problem)
                first, second = derive(stdin=text), derive(stdin=text)
                self.assertEqual(first, second)
                self.assertIn(first[0], (0, 2))
                self.assertEqual(json.loads(first[1]), json.loads(render(json.loads(first[1]))))

    def test_dense_point_short_form(self):
        code, out = derive('dense-point', 'V', '3/2', '1/4')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['set'], 'V')

    def test_verify_identities_short_form(self):
        code, out = derive('verify-identities', '--case', 'Mak-(ii)', '--samples', '50')
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertTrue(report['passed'])
        self.assertEqual(report['reports'][0]['identity'], 'Mak-(ii)')

    def test_failing_report_exits_2(self):
        code, out = derive('verify-identities', '--case', 'bor', '--samples', '10', '--tol', '0')
        self.assertEqual(code, 2)
        self.assertFalse(json.loads(out)['passed'])

    def test_input_file_and_pretty(self):
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False, encoding='utf-8') as handle:
            handle.write('{"command": "membership", "set": "V", "s": "5/4"}')
        self.addCleanup(os.remove, handle.name)
        code, out = derive(input=handle.name, pretty=True)
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('{\n  "companion": "3/4"'))

    def test_trace_depth(self):
        code, out = derive('maksa', 'exp', '0', '1', trace_depth=0)
        self.assertEqual(code, 0)
        full = json.loads(derive('maksa', 'exp', '0', '1')[1])
        self.assertLessEqual(len(json.loads(out)['trace']), len(full['trace']))

    def test_bad_trace_depth(self):
        with self.assertRaises(CommandError):
            call_command('derive', 'maksa', 'exp', '0', '1', trace_depth='-1', stdout=StringIO())
