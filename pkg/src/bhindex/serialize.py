"""Serialization helpers shared by the CLI and the report writers.

Exact rationals never cross an interface as floats: JSON carries
numerator/denominator integer pairs and the command line uses "p/q"
strings.  JSON output is canonical (sorted keys, fixed layout) so that
identical requests produce byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

SCHEMA_VERSION = 1


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" or "p" string into an exact rational."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational 'p/q' string: {text!r}") from exc


def rational_str(value) -> str:
    """Render a rational as "p" or "p/q"."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_obj(value) -> dict:
    """JSON object form of a rational: integer numerator/denominator."""
    q = Fraction(value)
    return {"num": q.numerator, "den": q.denominator}


def canonical_dumps(obj) -> str:
    """Deterministic JSON rendering: sorted keys, two-space indent."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
