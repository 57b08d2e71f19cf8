"""Growth-constant extrapolation for counting sequences.

Fits the model a(n) ~ c * mu**n * n**(-g) from consecutive-term ratios:
with r(n) = a(n)/a(n-1),

    g(n)  = n*(n-1) * (r(n)/r(n-1) - 1)      ->  g
    mu(n) = r(n) / (1 - g(n)/n)              ->  mu

Since r(n) = mu * (1 - 1/n)**g * (1 + O(1/n^2)), the second ratio
r(n)/r(n-1) = 1 + g/(n(n-2)) + ... isolates the power-law exponent, and
dividing r(n) by (1 - g(n)/n) cancels the exponent's first-order bias in
the growth estimate.  The final figures are plain averages over the last
``window`` points.

The terms are astronomically large integers (thousands of bits), so all
ratios are taken in 60-digit decimal arithmetic before any rounding to
float; converting the raw integers to float would overflow.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from typing import Sequence

__all__ = ["GrowthEstimate", "estimate_growth"]

_PRECISION = 60
_MIN_TERMS = 10


@dataclass
class GrowthEstimate:
    """Per-n ratio diagnostics plus the extrapolated constants.

    ``ratio[n]`` holds a(n)/a(n-1) for 2 <= n <= n_max; ``g[n]`` and
    ``mu[n]`` start at n = 3.  ``mu_hat``/``g_hat`` average the last
    ``window`` entries; a(n) ~ c * mu_hat**n * n**(-g_hat).
    """

    n_max: int
    window: int
    ratio: dict[int, float]
    g: dict[int, float]
    mu: dict[int, float]
    mu_hat: float
    g_hat: float

    def tail(self) -> list[tuple[int, float, float]]:
        """(n, mu(n), g(n)) for the averaging window, ascending n."""
        first = self.n_max - self.window + 1
        return [(n, self.mu[n], self.g[n]) for n in range(first, self.n_max + 1)]


def estimate_growth(a: Sequence[int], window: int = 20) -> GrowthEstimate:
    """Estimate mu and g for a sequence a(1..N) given as a list.

    ``a[0]`` is a(1).  Requires at least 10 strictly positive terms and
    window >= 1; the window is clipped to the available g-estimates.
    """
    n_max = len(a)
    if n_max < _MIN_TERMS:
        raise ValueError(f"sequence too short: need >= {_MIN_TERMS} terms, got {n_max}")
    if window < 1:
        raise ValueError("window must be >= 1")
    with decimal.localcontext() as ctx:
        ctx.prec = _PRECISION
        dec = [None]  # 1-based: dec[n] = Decimal(a(n))
        for i, term in enumerate(a):
            if term <= 0:
                raise ValueError(f"nonpositive entry a({i + 1}) = {term}")
            dec.append(decimal.Decimal(int(term)))
        ratio_d: dict[int, decimal.Decimal] = {
            n: dec[n] / dec[n - 1] for n in range(2, n_max + 1)
        }
        ratio = {n: float(r) for n, r in ratio_d.items()}
        g: dict[int, float] = {}
        mu: dict[int, float] = {}
        for n in range(3, n_max + 1):
            gn = n * (n - 1) * (ratio_d[n] / ratio_d[n - 1] - 1)
            g[n] = float(gn)
            mu[n] = float(ratio_d[n] / (1 - gn / n))
    window = min(window, len(g))
    last = range(n_max - window + 1, n_max + 1)
    mu_hat = sum(mu[n] for n in last) / window
    g_hat = sum(g[n] for n in last) / window
    return GrowthEstimate(n_max, window, ratio, g, mu, mu_hat, g_hat)
