"""Chebyshev polynomials, their derivatives and ultraspherical polynomials.

The ultraspherical (Gegenbauer) polynomials use the standard normalisation
``P_m^(lam)(1) = C(m + 2 lam - 1, m)``; every other module relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .xprec import LogScaled, log_binomial_real, log_pochhammer

__all__ = [
    "Index",
    "check_index",
    "chebyshev_T",
    "gegenbauer",
    "gegenbauer_at_one",
    "chebyshev_derivative",
    "ode_residual",
]

_RESCALE_LOG = 300.0
_RESCALE_AT = math.exp(_RESCALE_LOG)
_RESCALE_BY = math.exp(-_RESCALE_LOG)


@dataclass(frozen=True)
class Index:
    """Degree ``n`` of ``T_n`` and derivative order ``k`` with ``n >= k + 2``."""

    n: int
    k: int

    def __post_init__(self):
        check_index(self.n, self.k, allow_k0=True)


def check_index(n: int, k: int, allow_k0: bool = False) -> None:
    if int(n) != n or int(k) != k:
        raise DomainError(f"n and k must be integers, got n={n!r}, k={k!r}")
    kmin = 0 if allow_k0 else 1
    if k < kmin:
        raise DomainError(f"k must be >= {kmin}, got k={k}")
    if n < k + 2:
        raise DomainError(f"need n >= k + 2, got n={n}, k={k}")


def chebyshev_T(n: int, x: float) -> float:
    """``T_n(x) = cos(n arccos x)`` on ``[-1, 1]``."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if abs(x) > 1.0:
        raise DomainError(f"|x| must be <= 1, got {x}")
    if n == 0:
        return 1.0
    return math.cos(n * math.acos(x))


def _check_lambda(lam: float) -> None:
    if not lam > -0.5:
        raise DomainError(f"lambda must exceed -1/2, got {lam}")


def _recurrence(m: int, lam: float, x: float) -> tuple[float, float]:
    """Three-term recurrence for ``P_m^(lam)(x)``.

    Returns ``(value, log_scale)`` with ``P = value * exp(log_scale)``.
    """
    if m == 0:
        return 1.0, 0.0
    p_prev = 1.0
    p = 2.0 * lam * x
    scale = 0.0
    two_x = 2.0 * x
    for j in range(1, m):
        # (j+1) P_{j+1} = 2 (j + lam) x P_j - (j + 2 lam - 1) P_{j-1}
        p_prev, p = p, ((j + lam) * two_x * p - (j + 2.0 * lam - 1.0) * p_prev) / (j + 1)
        if abs(p) > _RESCALE_AT:
            p *= _RESCALE_BY
            p_prev *= _RESCALE_BY
            scale += _RESCALE_LOG
    return p, scale


def gegenbauer(m: int, lam: float, x: float) -> LogScaled:
    """``P_m^(lam)(x)`` via the three-term recurrence, rescaled into log form."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    _check_lambda(lam)
    if x == 1.0:
        return gegenbauer_at_one(m, lam)
    if x == -1.0:
        v = gegenbauer_at_one(m, lam)
        return -v if m % 2 else v
    p, scale = _recurrence(m, lam, x)
    if p == 0.0:
        return LogScaled.zero()
    return LogScaled(1 if p > 0 else -1, math.log(abs(p)) + scale)


def gegenbauer_at_one(m: int, lam: float) -> LogScaled:
    """``P_m^(lam)(1) = C(m + 2 lam - 1, m) = (2 lam)_m / m!``."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    _check_lambda(lam)
    if m == 0:
        return LogScaled.one()
    if 2.0 * lam - 1.0 >= 0.0:
        return LogScaled(1, log_binomial_real(m + 2.0 * lam - 1.0, m))
    # -1/2 < lam < 1/2: the top argument falls below m, use the rising factorial.
    return log_pochhammer(2.0 * lam, m) / LogScaled(1, math.lgamma(m + 1))


def chebyshev_derivative(n: int, k: int, x: float) -> LogScaled:
    """``T_n^(k)(x) = n 2^(k-1) (k-1)! P_{n-k}^(k)(x)`` for ``1 <= k <= n``."""
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if abs(x) > 1.0:
        raise DomainError(f"|x| must be <= 1, got {x}")
    log_const = math.log(n) + (k - 1) * math.log(2.0) + math.lgamma(k)
    return LogScaled(1, log_const) * gegenbauer(n - k, k, x)


def ode_residual(m: int, lam: float, x: float) -> float:
    """Normalised residual of the ultraspherical differential equation.

    ``(1-x^2) y'' - (2 lam + 1) x y' + m (m + 2 lam) y`` with ``y = P_m^(lam)``
    and both derivatives taken from ``d/dx P_m^(lam) = 2 lam P_{m-1}^(lam+1)``.
    The residual is divided by ``max(1, |y| m (m + 2 lam))``.
    """
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    y = gegenbauer(m, lam, x)
    dy = LogScaled.from_float(2.0 * lam) * gegenbauer(m - 1, lam + 1.0, x)
    d2y = LogScaled.from_float(4.0 * lam * (lam + 1.0)) * gegenbauer(m - 2, lam + 2.0, x)
    eig = m * (m + 2.0 * lam)
    terms = [
        d2y * (1.0 - x * x) if abs(x) < 1.0 else LogScaled.zero(),
        dy * (-(2.0 * lam + 1.0) * x) if x != 0.0 else LogScaled.zero(),
        y * eig,
    ]
    live = [t for t in terms if not t.is_zero]
    if not live:
        return 0.0
    top = max(t.logmag for t in live)
    res = math.fsum(t.sign * math.exp(t.logmag - top) for t in live)
    log_norm = max(0.0, y.logmag + math.log(eig)) if not y.is_zero else 0.0
    if res == 0.0:
        return 0.0
    return abs(res) * math.exp(top - log_norm)
