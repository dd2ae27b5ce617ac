"""Exact fixed-point money and unit parsing.

All monetary amounts in this package are integer hundredths (cents), so
sums and products of quantities and unit costs are exact. Binary floats
never touch money.
"""

from __future__ import annotations

import re

_MONEY_RE = re.compile(r"^(-?)(\d+)(?:\.(\d{1,2}))?$")
_UNITS_RE = re.compile(r"^(-?)(\d+)$")


def clean_number(text: str) -> str:
    """Strip currency decoration ("$", thousands separators, spaces).

    Idempotent: cleaning an already-clean numeric string returns it
    unchanged.
    """
    return text.replace("$", "").replace(",", "").replace(" ", "").replace("\t", "")


def parse_money(text: str) -> int:
    """Parse a currency string into integer cents.

    Accepts "$", commas and whitespace anywhere, and at most two decimal
    digits ("$ 30.80", "2,500", "42.5"). Raises ValueError on anything
    else. The sign is preserved; range checks are the caller's concern.
    """
    cleaned = clean_number(text)
    m = _MONEY_RE.match(cleaned)
    if m is None:
        raise ValueError(f"not a currency amount: {text!r}")
    sign, whole, frac = m.groups()
    cents = int(whole) * 100 + int((frac or "").ljust(2, "0") or "0")
    return -cents if sign else cents


def parse_units(text: str) -> int:
    """Parse a unit count ("2,500" styles allowed, no decimals)."""
    cleaned = clean_number(text)
    m = _UNITS_RE.match(cleaned)
    if m is None:
        raise ValueError(f"not a whole unit count: {text!r}")
    return int(cleaned)


def format_money(cents: int) -> str:
    """Render integer cents as a decimal string with exactly two digits."""
    sign = "-" if cents < 0 else ""
    whole, frac = divmod(abs(cents), 100)
    return f"{sign}{whole}.{frac:02d}"
