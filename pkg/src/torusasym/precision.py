"""Working-precision helpers on top of mpmath.

Numbers in this package are plain ``mpmath.mpf`` / ``mpmath.mpc`` values;
each public numeric function takes ``dps`` (decimal digits) and runs its body
under ``mp.workdps``.
"""

import os

from mpmath import mp, mpf

DEFAULT_DPS = 50
GUARD_DIGITS = 10


def max_precision() -> int:
    """Working-precision cap in digits, from ``TORUSASYM_MAX_PRECISION``."""
    raw = os.environ.get("TORUSASYM_MAX_PRECISION", "2000")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"TORUSASYM_MAX_PRECISION must be an integer, got {raw!r}") from None


def tolerance(dps: int, slack: int) -> mpf:
    """``10**-(dps - slack)`` as an mpf at the current precision."""
    return mpf(10) ** (-(dps - slack))


def relative_error(a, b):
    scale = max(abs(a), abs(b))
    if scale == 0:
        return mpf(0)
    return abs(a - b) / scale


__all__ = ["mp", "DEFAULT_DPS", "GUARD_DIGITS", "max_precision", "tolerance", "relative_error"]
