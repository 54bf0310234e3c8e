import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from cli.exceptions import ParseError, SchemaError
from cli.spec import EXIT_ERROR, EXIT_OK, build_spec, parse_spec, render, run
from derivation_closure.outcome import parse_trace_depth

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = (
        'Run one problem spec (JSON with a "command" key) read from --input or stdin, '
        'or one of the short forms: maksa FN ALPHA BETA, dense-point SET X EPS, '
        'verify-identities [--case C] [--samples N] [--tol T].'
    )
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('--input', default='-', help='Problem spec file; "-" reads stdin.')
        parser.add_argument('--pretty', action='store_true', help='Indent the JSON output.')
        parser.add_argument('--trace-depth', default=None, help='Keep only this many levels of every trace.')

        forms = parser.add_subparsers(dest='form')
        maksa = forms.add_parser('maksa', help='The addition-law dispatcher on ]ALPHA, BETA[.')
        maksa.add_argument('fn')
        maksa.add_argument('alpha')
        maksa.add_argument('beta')
        dense = forms.add_parser('dense-point', help='A point of U, V or W within EPS of X.')
        dense.add_argument('set')
        dense.add_argument('x')
        dense.add_argument('eps')
        verify = forms.add_parser('verify-identities', help='Run the identity oracle.')
        verify.add_argument('--case', default='all')
        verify.add_argument('--samples', type=int)
        verify.add_argument('--tol', type=float)

    def _document(self, options):
        form = options.get('form')
        if form == 'maksa':
            return {'command': 'maksa', 'fn': options['fn'], 'alpha': options['alpha'], 'beta': options['beta']}
        if form == 'dense-point':
            return {'command': 'dense-point', 'set': options['set'], 'x': options['x'], 'eps': options['eps']}
        if form == 'verify-identities':
            document = {'command': 'verify-identities', 'case': options['case']}
            for key in ('samples', 'tol'):
                if options.get(key) is not None:
                    document[key] = options[key]
            return document
        return None

    def _read(self, options):
        if options['input'] == '-':
            return (options.get('stdin') or sys.stdin).read()
        with open(options['input'], encoding='utf-8') as handle:
            return handle.read()

    def handle(self, *args, **options):
        try:
            depth = parse_trace_depth(options['trace_depth'])
        except ValueError as e:
            raise CommandError(f'--trace-depth: {e}')

        try:
            document = self._document(options)
            spec = build_spec(document) if document is not None else parse_spec(self._read(options))
        except (ParseError, SchemaError) as e:
            code, payload = EXIT_ERROR, e.as_dict()
        except OSError as e:
            raise CommandError(f'cannot read {options["input"]}: {e}')
        else:
            logger.info('running %s', spec.command)
            code, payload = run(spec, depth)

        self.stdout.write(render(payload, options['pretty']))
        if code != EXIT_OK:
            raise CommandError(payload.get('error') or payload.get('verdict') or 'failed', returncode=code)
