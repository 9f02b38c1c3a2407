"""Exact rational scalars.

All coefficients in the package are reduced fractions with positive
denominator and there is no floating point anywhere.  ``gmpy2.mpq`` is used
when available because it is several times faster than ``fractions.Fraction``
with identical semantics for everything we do (reduction, hashing, ordering,
string form ``p/q``).  ``LAMBDA_FORGE_FRACTIONS`` forces the stdlib
implementation; the kernel backend is controlled separately.
"""

from __future__ import annotations

import os
from fractions import Fraction

try:
    if os.environ.get("LAMBDA_FORGE_FRACTIONS"):
        raise ImportError
    from gmpy2 import mpq as _mpq

    _RAT_IMPL = _mpq
    BACKEND = "gmpy2"
except ImportError:
    _RAT_IMPL = Fraction
    BACKEND = "fractions"

#: concrete classes an exact scalar may have (ints act as rationals)
RATIONAL_TYPES = (int, Fraction, type(_RAT_IMPL(1)))


def rat(num=0, den=1):
    """Exact rational from integers or a ``p/q`` string.  Floats are refused."""
    if isinstance(num, float) or isinstance(den, float):
        raise TypeError("floats are not allowed; pass ints or 'p/q' strings")
    return _RAT_IMPL(num, den) if den != 1 else _RAT_IMPL(num)


ZERO = rat(0)
ONE = rat(1)


def is_rational(x) -> bool:
    return isinstance(x, RATIONAL_TYPES)


def rat_num(x) -> int:
    return int(x.numerator) if not isinstance(x, int) else x


def rat_den(x) -> int:
    return int(x.denominator) if not isinstance(x, int) else 1


def rat_str(x) -> str:
    """Render as ``p`` or ``p/q``."""
    n, d = rat_num(x), rat_den(x)
    return str(n) if d == 1 else f"{n}/{d}"


def rat_from_str(s: str):
    """Parse ``p`` or ``p/q``."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return rat(int(p), int(q))
    return rat(int(s))
