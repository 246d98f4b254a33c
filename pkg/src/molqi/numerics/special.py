"""Sine integral Si(x) = int_0^x sin(u)/u du (thin wrapper over scipy.special.sici)."""

from __future__ import annotations

import numpy as np
from scipy.special import sici

from ..errors import DomainError


def sine_integral(x):
    """Sine integral, odd in x. Accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("sine_integral: non-finite argument")
    out = sici(arr)[0]
    if out.ndim == 0:
        return float(out)
    return out
