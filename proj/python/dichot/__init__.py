"""Dichotomy procedures over exact reals.

Reports are returned as dicts with the same layout as ``dichot --json``;
rational fields stay as "p/q" strings, use :func:`rational` to convert.
"""

import json
from fractions import Fraction

from . import _dichot

__all__ = ["run", "canonical", "interpret", "enclose", "is_continuous", "unit_rationals", "rational"]


def rational(text):
    return Fraction(text)


def run(command, **options):
    """Run one subcommand (eval, root, steps, discont, inf, ishihara, neat)."""
    return json.loads(_dichot.run(command, options))


def canonical(fn):
    return _dichot.canonical(fn)


def interpret(fn, x):
    return Fraction(_dichot.interpret(fn, str(Fraction(x))))


def enclose(fn, x, precision=32):
    lo, hi = _dichot.enclose(fn, str(Fraction(x)), precision)
    return Fraction(lo), Fraction(hi)


def is_continuous(fn):
    return _dichot.is_continuous(fn)


def unit_rationals(count):
    return [Fraction(q) for q in _dichot.unit_rationals(count)]
