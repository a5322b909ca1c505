"""Exact rational scalars and their textual "p/q" form.

Every numeric entry in this package is a `fractions.Fraction`: the checks are
exact zero/equality tests and must never pass through floating point.
"""

from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer "p") into a reduced Fraction."""
    if not isinstance(text, str):
        raise ValueError(f"rational entries must be strings, got {type(text).__name__}")
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Canonical "p/q" with q > 0 and gcd(|p|, q) = 1; zero is "0/1"."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"
