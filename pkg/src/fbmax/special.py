"""Scalar special functions: normal CDF/pdf and the inverse error function.

The normal CDF is evaluated through the complementary error function, so both
tails keep full relative accuracy. ``inverse_erf``/``inverse_erfc`` start from
a rational estimate (Hastings-type, absolute error ~4.5e-4) and polish it with
Newton steps on erfc; two to three steps reach near machine precision.
"""

from __future__ import annotations

import math

from scipy.special import erfcx

__all__ = ["norm_cdf", "norm_pdf", "inverse_erf", "inverse_erfc"]

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_HALF_SQRT_PI = 0.5 * math.sqrt(math.pi)


def norm_cdf(x: float) -> float:
    """Standard normal CDF; full relative accuracy down to the underflow
    threshold near x = -37. Use norm_cdf(-x) for the complementary form."""
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    """Standard normal density."""
    # exp underflows cleanly to 0 for |x| ~ 40, including x = +-inf
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def inverse_erfc(q: float) -> float:
    """Inverse of the complementary error function on (0, 2).

    Accurate to a relative error far below 1e-12 over the whole domain,
    including q close to 0 where the result grows like sqrt(-log q).
    """
    if not 0.0 < q < 2.0:
        raise ValueError(f"inverse_erfc requires 0 < q < 2, got {q!r}")
    if q == 1.0:
        return 0.0
    if q > 1.0:
        return -inverse_erfc(2.0 - q)
    log_q = math.log(q)
    t = math.sqrt(-2.0 * (log_q - math.log(2.0)))
    x = -0.70711 * ((2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t)
    for _ in range(4):
        # Newton on erfc(x) - q, written with the scaled complement erfcx so
        # the exp(x^2) factors never overflow: erfc(x) = erfcx(x) exp(-x^2).
        step = _HALF_SQRT_PI * (float(erfcx(x)) - math.exp(x * x + log_q))
        x += step
        if abs(step) <= 1e-15 * (1.0 + abs(x)):
            break
    return x


def inverse_erf(y: float) -> float:
    """Inverse of erf on (-1, 1); erf(inverse_erf(y)) == y to ~1e-15."""
    if not -1.0 < y < 1.0:
        raise ValueError(f"inverse_erf requires -1 < y < 1, got {y!r}")
    if y < 0.0:
        return -inverse_erfc(1.0 + y)
    return inverse_erfc(1.0 - y)
