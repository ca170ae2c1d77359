"""Overflow-safe binomial coefficients via log-gamma tables."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import special


@lru_cache(maxsize=64)
def log_binomial_table(n: int) -> np.ndarray:
    """Read-only table T[m, k] = log C(m, k) for 0 <= k <= m <= n; -inf elsewhere."""
    m = np.arange(n + 1)[:, None]
    k = np.arange(n + 1)[None, :]
    with np.errstate(invalid="ignore"):
        table = special.gammaln(m + 1) - special.gammaln(k + 1) - special.gammaln(m - k + 1)
    table = np.where(k <= m, table, -np.inf)
    table.setflags(write=False)
    return table


def log_binom(m: int, k: int) -> float:
    if k < 0 or k > m:
        return float("-inf")
    return float(log_binomial_table(m)[m, k])


def binom(m: int, k: int) -> float:
    return float(np.exp(log_binom(m, k)))
