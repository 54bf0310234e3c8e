"""Access to the ``DERIV_CLOSURE`` settings block with built-in defaults."""
from fractions import Fraction

from django.conf import settings

DEFAULTS = {
    # Starting precision (bits) for certified transcendental comparisons.
    'PRECISION': 128,
    'MAX_PRECISION': 4096,
    # Saturation bounds for run_deduction.
    'MAX_DEPTH': 32,
    'MAX_FACTS': 64,
    # Floating-point oracle.
    'IDENTITY_TOL': 1e-9,
    'GRAD_TOL': 1e-5,
    'FD_STEP': 1e-6,
    'IDENTITY_SAMPLES': 1000,
    'CATALOG_SAMPLES': 64,
    'SAMPLE_MARGIN': '1/16',
}


def closure_setting(name):
    """
    Look up one engine setting.

    Args:
        name (str): Key inside ``settings.DERIV_CLOSURE``.

    Returns:
        The configured value, or the built-in default. ``SAMPLE_MARGIN`` is
        always returned as a Fraction.

    Raises:
        KeyError: If ``name`` is not a known setting.
    """
    if name not in DEFAULTS:
        raise KeyError(f'Unknown DERIV_CLOSURE setting: {name}')
    configured = getattr(settings, 'DERIV_CLOSURE', {})
    value = configured.get(name, DEFAULTS[name])
    if name == 'SAMPLE_MARGIN':
        return Fraction(value)
    return value
