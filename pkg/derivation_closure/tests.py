from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from .conf import DEFAULTS, closure_setting


class ClosureSettingTests(SimpleTestCase):
    def test_settings_start_from_the_defaults(self):
        self.assertEqual(set(settings.DERIV_CLOSURE), set(DEFAULTS))
        for name in DEFAULTS:
            if name != 'PRECISION':
                with self.subTest(name=name):
                    self.assertEqual(settings.DERIV_CLOSURE[name], DEFAULTS[name])

    def test_configured_value_wins(self):
        with override_settings(DERIV_CLOSURE={**settings.DERIV_CLOSURE, 'MAX_DEPTH': 5}):
            self.assertEqual(closure_setting('MAX_DEPTH'), 5)

    @override_settings(DERIV_CLOSURE={})
    def test_missing_key_falls_back(self):
        self.assertEqual(closure_setting('MAX_FACTS'), DEFAULTS['MAX_FACTS'])
        self.assertEqual(closure_setting('SAMPLE_MARGIN'), Fraction(1, 16))

    def test_unknown_setting(self):
        with self.assertRaises(KeyError):
            closure_setting('NO_SUCH_SETTING')
