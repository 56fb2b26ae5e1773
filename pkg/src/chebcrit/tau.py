"""The normalised largest critical value ``tau_{n,k}`` of ``T_n^(k)``.

``tau_{n,k} = |T_n^(k)(omega)| / T_n^(k)(1)`` where ``omega`` is the largest
zero of ``T_n^(k+1)``.  Two independent routes are provided:

* :func:`tau_direct` evaluates the ratio of polynomial values.
* :func:`tau_closed_form` uses the exact representation

      tau^2 = (2k-1)!!/(2k)!! * n/(n-k) / C(n+k, n-k)
              / ((1 - omega^2)^k S_{n,k+1}(omega)).

The Schaeffer--Duffin majorant ``D_{n,k}^2`` and the upper bound it implies
live here as well since they share the ``S``-sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .orthopoly import check_index, chebyshev_derivative
from .roots import omega as _omega
from .xprec import LogScaled, log_binomial, log_double_factorial

__all__ = [
    "Route",
    "TauValue",
    "s_sum",
    "log_s_sum",
    "one_minus_sq",
    "tau_closed_form",
    "tau_direct",
    "majorant_D2",
    "tau_upper_schaeffer_duffin",
]


class Route(str, Enum):
    DIRECT = "direct"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class TauValue:
    value: float
    route: Route
    omega: float
    s_value: float | None = None


def one_minus_sq(x: float) -> float:
    """``1 - x^2`` without cancellation near ``|x| = 1``."""
    return (1.0 - x) * (1.0 + x)


def log_s_sum(n: int, k: int, x: float) -> float:
    """``ln S_{n,k}(x)``; see :func:`s_sum`."""
    if not (n > k >= 1):
        raise DomainError(f"S-sum needs n > k >= 1, got n={n}, k={k}")
    if abs(x) >= 1.0:
        raise DomainError(f"S-sum needs |x| < 1, got {x}")
    log_z = -math.log(one_minus_sq(x))
    n2 = n * n
    logs = [0.0]
    log_term = 0.0
    for m in range(1, k):
        # term_m / term_{m-1} = (2m-1)/(2m) * (k+m-1)(k-m) / ((1-x^2)(n^2-m^2))
        log_term += (
            math.log((2 * m - 1) / (2 * m))
            + math.log((k + m - 1) * (k - m))
            - math.log(n2 - m * m)
            + log_z
        )
        logs.append(log_term)
    top = max(logs)
    return top + math.log(math.fsum(math.exp(v - top) for v in logs))


def s_sum(n: int, k: int, x: float) -> float:
    """The correction sum

        S_{n,k}(x) = 1 + sum_{m=1}^{k-1} (2m-1)!!/(2m)!! (k-m)_{2m}
                     / (1-x^2)^m  prod_{j=1}^m 1/(n^2 - j^2).

    Each term is formed in log space; all terms are positive.
    """
    return math.exp(log_s_sum(n, k, x))


def _log_central(n: int, k: int) -> float:
    # ln[(2k-1)!!/(2k)!! / C(n+k, n-k)]
    return (
        log_double_factorial(k, "odd")
        - log_double_factorial(k, "even")
        - log_binomial(n + k, n - k)
    )


def tau_closed_form(n: int, k: int, omega: float | None = None) -> TauValue:
    """``tau_{n,k}`` from the exact closed formula.

    ``omega`` may be supplied to reuse a zero already computed; otherwise it
    is located with :func:`chebcrit.roots.omega`.
    """
    check_index(n, k)
    w = _omega(n, k).omega if omega is None else float(omega)
    log_s = log_s_sum(n, k + 1, w)
    log_tau2 = (
        _log_central(n, k)
        + math.log(n / (n - k))
        - k * math.log(one_minus_sq(w))
        - log_s
    )
    return TauValue(math.exp(0.5 * log_tau2), Route.CLOSED_FORM, w, math.exp(log_s))


def tau_direct(n: int, k: int, omega: float | None = None) -> TauValue:
    """``tau_{n,k} = |T_n^(k)(omega)| / T_n^(k)(1)`` by direct evaluation.

    ``k = 0`` returns exactly 1: every interior extremum of ``T_n`` is +-1.
    """
    check_index(n, k, allow_k0=True)
    if k == 0:
        return TauValue(1.0, Route.DIRECT, math.nan if omega is None else omega)
    w = _omega(n, k).omega if omega is None else float(omega)
    at_w = chebyshev_derivative(n, k, w)
    at_1 = chebyshev_derivative(n, k, 1.0)
    return TauValue(math.exp(at_w.logmag - at_1.logmag), Route.DIRECT, w)


def majorant_D2(n: int, k: int, x: float) -> LogScaled:
    """Schaeffer--Duffin majorant

        D_{n,k}^2(x) = n^2 (n^2 - 1) ... (n^2 - (k-1)^2) / (1-x^2)^k * S_{n,k}(x)

    which dominates ``[p^(k)(x)]^2`` for every polynomial ``p`` of degree
    ``<= n`` bounded by 1 on ``[-1, 1]``.
    """
    if k < 2 or n <= k:
        raise DomainError(f"majorant needs 2 <= k < n, got n={n}, k={k}")
    if abs(x) >= 1.0:
        raise DomainError(f"majorant needs |x| < 1, got {x}")
    log_prod = math.fsum(math.log(n * n - j * j) for j in range(k))
    return LogScaled(1, log_prod - k * math.log(one_minus_sq(x)) + log_s_sum(n, k, x))


def tau_upper_schaeffer_duffin(n: int, k: int, omega: float | None = None) -> float:
    """Upper bound on ``tau_{n,k}`` from the majorant:

        tau^2 <= (2k-1)!!/(2k)!! (n+k)/n / C(n+k, n-k) S_{n,k}(omega) / (1-omega^2)^k.

    For ``k = 1`` (outside the majorant's stated range) ``S_{n,1} = 1`` is used.
    """
    check_index(n, k)
    w = _omega(n, k).omega if omega is None else float(omega)
    log_s = log_s_sum(n, k, w) if k >= 2 else 0.0
    log_bound2 = (
        _log_central(n, k)
        + math.log((n + k) / n)
        + log_s
        - k * math.log(one_minus_sq(w))
    )
    return math.exp(0.5 * log_bound2)
