"""Exact rational helpers on top of :class:`fractions.Fraction`.

``Fraction`` already keeps values reduced with a positive denominator, so this
module only adds the ``p/q`` text form used in reports and LP dumps.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["Fraction", "as_rational", "ceil", "fmt", "parse"]


def as_rational(x: int | Fraction | str) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(x)


def fmt(q: int | Fraction) -> str:
    """Render as ``p/q`` with the denominator always present, e.g. ``1/1``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def ceil(q: Fraction) -> int:
    return math.ceil(q)
