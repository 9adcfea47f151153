"""Exact rational arithmetic backend.

gmpy2.mpq when available (much faster on large corpora), fractions.Fraction
otherwise.  Everything downstream only relies on the common surface:
two-argument constructor, numerator/denominator, arithmetic with ints,
hashing, and str() rendering as "a/b" or "a".
"""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def is_integer(q) -> bool:
    return q.denominator == 1


def as_int(q) -> int:
    if q.denominator != 1:
        raise ValueError("not an integer: %s" % (q,))
    return int(q.numerator)


def q_str(q) -> str:
    return str(q)


def parse_q(text: str):
    """Parse "a" or "a/b" into a rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Q(int(num), int(den))
    return Q(int(text))
