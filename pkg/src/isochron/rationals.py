"""Exact rational scalars.

Every coefficient in this package is an exact rational number.  We use
``gmpy2.mpq`` when available (noticeably faster on the dense convolution
loops) and fall back to :class:`fractions.Fraction` otherwise.  Both types
normalise signs into the numerator, reduce to lowest terms, and print as
``p/q`` (or just ``p`` when the denominator is one), so the rest of the
package never needs to know which backend is active.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as Rat

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    BACKEND = "fractions"

ZERO = Rat(0)
ONE = Rat(1)

#: Accepted textual form: an optional sign, an integer, optionally followed
#: by a slash and a positive integer.  No floats, no whitespace, no exponents.
_RAT_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")


def rat(value, den=None) -> Rat:
    """Coerce ``value`` (int, backend rational, or ``p/q`` string) to a Rat."""
    if den is not None:
        return Rat(value, den)
    if isinstance(value, str):
        return parse_rat(value)
    return Rat(value)


def parse_rat(text: str) -> Rat:
    """Parse the exact textual form ``p`` or ``p/q``.

    Raises ``ValueError`` for anything else (floats, blanks, ``1/0`` ...),
    so file parsers can rely on this as their single gatekeeper.
    """
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Rat(text)


def format_rat(q) -> str:
    """Render as ``p/q``, or ``p`` when the denominator is one."""
    return str(q)
