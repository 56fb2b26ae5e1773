"""Closed-form bounds on ``tau_{n,k}`` and ``tau_k*`` and the hypergeometric
identities behind them.

``D(n, k)`` below denotes the descending-by-2 product
``(n+k-1)(n+k-3)...(n-k+1)`` of ``k`` factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .orthopoly import check_index
from .roots import omega as _omega
from .tau import log_s_sum, one_minus_sq, tau_upper_schaeffer_duffin, _log_central
from .xprec import log_double_factorial, log_step2_product

__all__ = [
    "BoundSet",
    "upper_bounds",
    "lower_bound",
    "ratio_bound",
    "bound_set",
    "tau_star_upper",
    "terminating_3f2",
    "s_at_zero_closed",
    "whipple_3f2",
]

MAX_TERMS = 100_000


@dataclass(frozen=True)
class BoundSet:
    """Every named bound on ``tau_{n,k}`` for one index.

    ``ratio_16p`` bounds ``tau_{n,k} / tau_{n+1,k}`` rather than ``tau``.
    ``sd_extended`` flags ``k = 1``, where ``sd_12`` is evaluated outside the
    range the majorant is stated for.
    """

    n: int
    k: int
    omega: float
    sd_12: float
    combined_14: float
    thm_15: float
    cor11: float
    lower_16: float
    ratio_16p: float
    sd_extended: bool = False

    @property
    def best_upper(self) -> float:
        return min(self.sd_12, self.combined_14, self.thm_15, self.cor11)

    def sandwiches(self, tau: float, rtol: float = 1e-12) -> bool:
        """``lower_16 <= tau <= every upper bound`` up to relative slack ``rtol``."""
        return self.lower_16 * (1 - rtol) <= tau <= self.best_upper * (1 + rtol)


def _log_d(n: int, k: int) -> float:
    return log_step2_product(n + k - 1, k)


def upper_bounds(n: int, k: int, omega: float | None = None) -> dict[str, float]:
    """The four upper bounds ``sd_12``, ``combined_14``, ``thm_15``, ``cor11``."""
    check_index(n, k)
    w = _omega(n, k).omega if omega is None else float(omega)
    log_1mw2 = math.log(one_minus_sq(w))
    sd_12 = tau_upper_schaeffer_duffin(n, k, w)

    # Geometric mean of the majorant bound and the exact formula.
    log_ratio = (log_s_sum(n, k, w) if k >= 2 else 0.0) - log_s_sum(n, k + 1, w)
    log_c14 = (
        0.5 * math.log((n + k) / (n - k))
        + _log_central(n, k)
        - k * log_1mw2
        + 0.5 * log_ratio
    )
    combined_14 = math.exp(0.5 * log_c14)

    log_base = log_double_factorial(k, "odd") - _log_d(n, k)
    thm_15 = math.exp(log_base - 0.5 * k * log_1mw2)
    cor11 = math.exp(log_base + k * math.log(n / (k + 2)))
    return {"sd_12": sd_12, "combined_14": combined_14, "thm_15": thm_15, "cor11": cor11}


def lower_bound(n: int, k: int) -> float:
    """``tau_{n,k} >= (2k-1)!! / ((n+k-1)(n+k-3)...(n-k+1))``."""
    check_index(n, k)
    return math.exp(log_double_factorial(k, "odd") - _log_d(n, k))


def ratio_bound(n: int, k: int) -> float:
    """``tau_{n,k}/tau_{n+1,k} <= (n+k)(n+k-2)...(n-k+2) / ((n+k-1)...(n-k+1))``."""
    check_index(n, k)
    return math.exp(log_step2_product(n + k, k) - _log_d(n, k))


def bound_set(n: int, k: int, omega: float | None = None) -> BoundSet:
    check_index(n, k)
    w = _omega(n, k).omega if omega is None else float(omega)
    ub = upper_bounds(n, k, w)
    return BoundSet(
        n=n,
        k=k,
        omega=w,
        lower_16=lower_bound(n, k),
        ratio_16p=ratio_bound(n, k),
        sd_extended=(k == 1),
        **ub,
    )


def tau_star_upper(k: int) -> float:
    """``tau_k* <= (2k-1)!! / (k+2)^k``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return math.exp(log_double_factorial(k, "odd") - k * math.log(k + 2))


def _nonpositive_int(x: float, tol: float = 1e-12) -> int | None:
    """Return ``N`` if ``x`` equals ``-N`` for an integer ``N >= 0``, else None."""
    r = round(x)
    if r <= 0 and abs(x - r) <= tol * max(1.0, abs(x)):
        return -int(r)
    return None


def terminating_3f2(a: float, b: float, c: float, d: float, e: float, terms: int = MAX_TERMS) -> float:
    """``3F2(a, b, c; d, e; 1)`` for a series that terminates.

    One of ``a, b, c`` must be a non-positive integer ``-N`` with
    ``N <= terms``; ``d`` and ``e`` may be non-positive integers only if their
    rising factorials stay non-zero over the ``N + 1`` summed terms.
    """
    if terms < 1 or terms > MAX_TERMS:
        raise DomainError(f"terms must lie in 1..{MAX_TERMS}, got {terms}")
    cut = [N for N in map(_nonpositive_int, (a, b, c)) if N is not None]
    if not cut:
        raise DomainError("series does not terminate: no numerator parameter is a non-positive integer")
    N = min(cut)
    if N > terms:
        raise DomainError(f"series needs {N} terms, more than the allowed {terms}")
    total = [1.0]
    t = 1.0
    for j in range(N):
        den = (d + j) * (e + j) * (j + 1)
        if den == 0.0:
            raise DomainError(f"denominator parameter vanishes at term {j + 1}")
        t *= (a + j) * (b + j) * (c + j) / den
        total.append(t)
    return math.fsum(total)


def s_at_zero_closed(m: int, k: int, variant: str) -> float:
    """Closed forms of ``S_{m,k}(0)`` (``variant='k'``) and ``S_{m,k+1}(0)``
    (``variant='k+1'``) for ``m > k + 1``:

        S_{m,k}(0)   = m (m+k-2)(m+k-4)...(m-k+2) / ((m+k-1)(m+k-3)...(m-k+1))
        S_{m,k+1}(0) = m (m+k-1)(m+k-3)...(m-k+1) / ((m+k)(m+k-2)...(m-k))
    """
    if k < 1 or m <= k + 1:
        raise DomainError(f"need m > k + 1 >= 2, got m={m}, k={k}")
    if variant == "k":
        log_v = log_step2_product(m + k - 2, k - 1) - log_step2_product(m + k - 1, k)
    elif variant == "k+1":
        log_v = log_step2_product(m + k - 1, k) - log_step2_product(m + k, k + 1)
    else:
        raise DomainError(f"variant must be 'k' or 'k+1', got {variant!r}")
    return m * math.exp(log_v)


def _log_gamma_signed(x: float) -> tuple[int, float]:
    """``(sign, ln|Gamma(x)|)`` for ``x`` not a pole."""
    if x > 0:
        return 1, math.lgamma(x)
    sign = -1 if math.floor(-x) % 2 == 0 else 1
    return sign, math.lgamma(x)


def whipple_3f2(a: float, c: float, d: float) -> float:
    """Whipple's closed form

        3F2(a, 1-a, c; d, 2c+1-d; 1)
          = 2^(1-2c) pi Gamma(d) Gamma(2c+1-d)
            / (Gamma((a+d)/2) Gamma((a+1+2c-d)/2)
               Gamma((1-a+d)/2) Gamma((2+2c-a-d)/2)).

    Gamma poles are resolved as the limit ``d -> d + eps``: each pole of
    ``Gamma(-N + s*eps)`` contributes ``(-1)^N / (N! s eps)``.  Surplus
    denominator poles give 0 (reciprocal-Gamma convention); a surplus
    numerator pole is a genuine singularity and raises DomainError.
    """
    # (argument, slope of the argument with respect to d)
    num = [(d, 1.0), (2 * c + 1 - d, -1.0)]
    den = [
        ((a + d) / 2, 0.5),
        ((a + 1 + 2 * c - d) / 2, -0.5),
        ((1 - a + d) / 2, 0.5),
        ((2 + 2 * c - a - d) / 2, -0.5),
    ]
    sign = 1
    log_v = (1 - 2 * c) * math.log(2.0) + math.log(math.pi)
    order = 0
    for group, parity in ((num, 1), (den, -1)):
        for x, slope in group:
            N = _nonpositive_int(x)
            if N is None:
                s, lg = _log_gamma_signed(x)
            else:
                order += parity
                s = (-1 if N % 2 else 1) * (1 if slope > 0 else -1)
                lg = -math.lgamma(N + 1) - math.log(abs(slope))
            sign *= s
            log_v += parity * lg
    if order > 0:
        raise DomainError("unmatched Gamma pole in the numerator of the Whipple formula")
    if order < 0:
        return 0.0
    return sign * math.exp(log_v)
