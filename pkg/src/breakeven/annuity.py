"""Annuity factor kernel.

``annuity_factor(x, n)`` is the present value of ``n`` unit payments at a
per-period rate ``x``::

    f(x) = (1 - (1 + x)**-n) / x  =  sum_{t=1..n} (1 + x)**-t

The quotient has a removable singularity at ``x = 0`` (``f(0) = n``).  Near
zero the factor is evaluated from its Taylor series, elsewhere through
``expm1``/``log1p`` so that no digits are lost to cancellation.  Every
function accepts the extended domain ``x > -1``; negative arguments show up
in the growth model.

The derivatives are written in terms of the auxiliary polynomials::

    G(x) = (1 + x)**(n+1) - 1 - (n+1) x
    H(x) = 2 (1 + x)**(n+2) - 2 - 2 (n+2) x - (n+1)(n+2) x**2

with ``f'(x) = -G / (x**2 (1+x)**(n+1))`` and
``f''(x) = H / (x**3 (1+x)**(n+2))``.  G and H vanish to second and third
order at zero, so both are carried around with that power of ``x`` divided
out exactly (``G / x**2 = sum_t t (1+x)**(n-t)``), which keeps the
derivatives accurate through and around the origin.
"""

from __future__ import annotations

import math
import numbers

from breakeven.errors import DomainError

#: Below this ``|x|`` the annuity factor is taken from its Taylor series.
SERIES_THRESHOLD = 1e-4

_SERIES_MAX_TERMS = 64


def _check(x: float, n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise DomainError(f"horizon must be an integer, got {n!r}")
    if n < 2:
        raise DomainError(f"horizon must be at least 2 years, got {n}")
    if not math.isfinite(x):
        raise DomainError(f"rate must be finite, got {x!r}")
    if x <= -1.0:
        raise DomainError(f"rate must exceed -1, got {x!r}")


def _series(x: float, n: int) -> float:
    # f(x) = sum_k (-1)^k C(n+k, k+1) x^k; consecutive terms shrink by
    # (n+k+1)/(k+2) * |x|, so a handful of terms reach machine precision.
    term = float(n)
    total = term
    for k in range(1, _SERIES_MAX_TERMS):
        term *= -x * (n + k) / (k + 1)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def annuity_factor(x: float, n: int) -> float:
    """Present value of ``n`` unit end-of-period payments at rate ``x``.

    >>> annuity_factor(0.0, 10)
    10.0
    >>> round(annuity_factor(0.10, 10), 4)
    6.1446
    """
    _check(x, n)
    if abs(x) < SERIES_THRESHOLD:
        return _series(x, n)
    return -math.expm1(-n * math.log1p(x)) / x


def annuity_reciprocal(x: float, n: int) -> float:
    """Capital recovery factor ``F(x) = 1 / f(x)``.

    For ``x > 0`` it lies strictly between ``x`` and ``x + 1/n``.
    """
    return 1.0 / annuity_factor(x, n)


def _horner(coefficients, u: float) -> float:
    acc = 0.0
    for c in coefficients:
        acc = acc * u + c
    return acc


def _g_reduced(x: float, n: int) -> float:
    """``G(x) / x**2`` as the polynomial ``sum_{t=1..n} t (1+x)**(n-t)``."""
    return _horner(range(1, n + 1), 1.0 + x)


def _h_reduced(x: float, n: int) -> float:
    """``H(x) / x**3`` as the polynomial ``sum_{t=1..n} t (t+1) (1+x)**(n-t)``."""
    return _horner((t * (t + 1) for t in range(1, n + 1)), 1.0 + x)


def poly_G(x: float, n: int) -> float:
    """Auxiliary polynomial ``G(x) = (1+x)**(n+1) - 1 - (n+1) x``.

    Zero at the origin and positive everywhere else on ``x > -1``.
    """
    _check(x, n)
    return x * x * _g_reduced(x, n)


def poly_H(x: float, n: int) -> float:
    """Auxiliary polynomial ``H(x) = 2 (1+x)**(n+2) - 2 - 2 (n+2) x - (n+1)(n+2) x**2``."""
    _check(x, n)
    return x * x * x * _h_reduced(x, n)


def annuity_derivative(x: float, n: int) -> float:
    """First derivative ``f'(x) = -G(x) / (x**2 (1+x)**(n+1))``; equals ``-n(n+1)/2`` at 0."""
    _check(x, n)
    # Expanded term by term as -sum_t t v**(t+1), v = 1/(1+x), which cannot overflow.
    v = 1.0 / (1.0 + x)
    return -v * v * _horner(range(n, 0, -1), v)


def annuity_second_derivative(x: float, n: int) -> float:
    """Second derivative ``f''(x) = H(x) / (x**3 (1+x)**(n+2))``; equals ``n(n+1)(n+2)/3`` at 0."""
    _check(x, n)
    v = 1.0 / (1.0 + x)
    return v * v * v * _horner((t * (t + 1) for t in range(n, 0, -1)), v)


def annuity_reciprocal_derivative(x: float, n: int) -> float:
    """``F'(x) = -f'(x) / f(x)**2``; equals ``(1 + 1/n) / 2`` at 0."""
    f = annuity_factor(x, n)
    return -annuity_derivative(x, n) / (f * f)


def reciprocal_excess(x: float, n: int) -> float:
    """``F(x) - x = x / ((1+x)**n - 1)``, evaluated without subtracting.

    Positive and below ``1/n`` for every ``x > 0``; decays like
    ``x**(1-n)``, far below the resolution of ``F(x)`` itself at large ``x``.
    """
    _check(x, n)
    if abs(x) < SERIES_THRESHOLD:
        return 1.0 / _series(x, n) - x
    return x / math.expm1(n * math.log1p(x))
