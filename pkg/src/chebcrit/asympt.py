"""The limit ``tau_k* = lim_{n->oo} tau_{n,k}`` and asymptotic formulas.

Exact limit:

    tau_k* = (2k-1)!! / (j^k sqrt(S*_{k+1})),   S*_{k+1} = sum_m a_m q^(2m),

with ``j`` the first positive zero of ``J_{k+1/2}`` and ``q = (k+1)/j``.
Leading-order asymptotics in ``k`` use the Airy constant
``a = 2^(-1/3) |i_1|`` and the integral constant ``A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericError
from .orthopoly import check_index
from .xprec import log_double_factorial

__all__ = [
    "AIRY_I1",
    "AsymptoticConstants",
    "StarTerms",
    "constants",
    "airy_zero_selfcheck",
    "spherical_jn",
    "bessel_first_zero",
    "mcmahon_first_zero",
    "s_star",
    "tau_star_exact",
    "tau_star_asymptotic",
    "log_rho",
    "rho",
    "tau_asymptotic_uniform",
    "UNIFORM_DELTA",
]

# First zero of Ai, to 16 significant digits.
AIRY_I1 = -2.338107410459767

UNIFORM_DELTA = 0.05
_INTEGRAND_CUTOFF = 46.0  # exp(-46) ~ 1e-20


@dataclass(frozen=True)
class AsymptoticConstants:
    airy_i1: float
    a: float
    A: float


@dataclass(frozen=True)
class StarTerms:
    k: int
    q: float
    coeffs: tuple[float, ...]
    s_star: float
    bessel_zero: float


@lru_cache(maxsize=1)
def constants() -> AsymptoticConstants:
    """``a = 2^(-1/3)|i_1|`` and ``A = (int_0^oo e^(-x^3/3 - 2ax) dx/sqrt(pi x))^(-1/2)``.

    With ``x = t^2`` the integrand becomes ``(2/sqrt(pi)) e^(-t^6/3 - 2a t^2)``,
    which is smooth; it is cut where the exponent passes 46.
    """
    a = 2.0 ** (-1.0 / 3.0) * abs(AIRY_I1)
    # Smallest t with t^6/3 + 2 a t^2 = cutoff, by bisection on a monotone function.
    lo, hi = 0.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid ** 6 / 3 + 2 * a * mid * mid > _INTEGRAND_CUTOFF:
            hi = mid
        else:
            lo = mid
    c = 2.0 / math.sqrt(math.pi)
    integral, err = quad(
        lambda t: c * math.exp(-t ** 6 / 3 - 2 * a * t * t),
        0.0, hi, epsabs=1e-13, epsrel=1e-13, limit=200,
    )
    if err > 1e-11:
        raise NumericError(f"quadrature for A reports error {err:.3g}")
    return AsymptoticConstants(airy_i1=AIRY_I1, a=a, A=integral ** -0.5)


def _airy_ai_series(x: float, terms: int = 80) -> float:
    # Ai(x) = c1 f(x) - c2 g(x) with the Maclaurin series of the Airy equation.
    c1 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
    c2 = 1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))
    x3 = x ** 3
    f_term, g_term = 1.0, x
    f, g = [f_term], [g_term]
    for k in range(1, terms):
        f_term *= x3 / ((3 * k - 1) * (3 * k))
        g_term *= x3 / ((3 * k) * (3 * k + 1))
        f.append(f_term)
        g.append(g_term)
    return c1 * math.fsum(f) - c2 * math.fsum(g)


def airy_zero_selfcheck(tol: float = 1e-10) -> bool:
    """True when the Airy series changes sign across ``AIRY_I1 +- tol``."""
    left = _airy_ai_series(AIRY_I1 - tol)
    right = _airy_ai_series(AIRY_I1 + tol)
    return left * right < 0


def spherical_jn(k: int, x: float) -> tuple[float, float]:
    """Spherical Bessel ``j_k(x)`` and its derivative by upward recurrence.

    Only adequately conditioned for ``x`` comparable to or above ``k``.
    """
    s, c = math.sin(x), math.cos(x)
    j_prev = s / x
    if k == 0:
        return j_prev, (c - j_prev) / x
    j = s / (x * x) - c / x
    for l in range(1, k):
        j_prev, j = j, (2 * l + 1) / x * j - j_prev
    # j_k' = j_{k-1} - (k+1)/x j_k
    return j, j_prev - (k + 1) / x * j


def mcmahon_first_zero(nu: float, a: float | None = None) -> float:
    """Three-term large-order expansion ``nu + a nu^(1/3) + (3a^2/10) nu^(-1/3)``."""
    a = constants().a if a is None else a
    c = nu ** (1.0 / 3.0)
    return nu + a * c + 0.3 * a * a / c


@lru_cache(maxsize=1024)
def bessel_first_zero(nu: float) -> float:
    """First positive zero of ``J_nu`` for half-integer ``nu = k + 1/2``,
    found as the first zero of the spherical Bessel function ``j_k``."""
    k = nu - 0.5
    if k < 0 or int(k) != k:
        raise DomainError(f"nu must be a half-integer >= 1/2, got {nu!r}")
    k = int(k)
    if k == 0:
        return math.pi
    # Scan for the first sign change; zeros of J_nu all exceed nu.
    xs = np.linspace(nu, nu + 4.0 * nu ** (1.0 / 3.0) + 5.0, 64)
    vals = [spherical_jn(k, float(x))[0] for x in xs]
    lo = hi = None
    for x0, x1, v0, v1 in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if v0 == 0.0:
            return float(x0)
        if v0 * v1 < 0:
            lo, hi = float(x0), float(x1)
            f_lo = v0
            break
    if lo is None:
        raise NumericError(f"no sign change found for j_{k} on the scan interval")
    guess = mcmahon_first_zero(nu)
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(100):
        f, df = spherical_jn(k, x)
        if f == 0.0:
            return x
        if (f < 0) == (f_lo < 0):
            lo = x
        else:
            hi = x
        x_new = x - f / df if df != 0.0 else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * x:
            return x_new
        x = x_new
        if hi - lo <= 4e-16 * x:
            return x
    raise NumericError(f"Newton for the zero of j_{k} did not converge")


def s_star(k: int) -> StarTerms:
    """Coefficients ``a_m = (2m-1)!!/(2m)!! (k+m)!/(k-m)! (k+1)^(-2m)`` and the
    sum ``S*_{k+1} = sum_{m=0}^k a_m q^(2m)`` with ``q = (k+1)/j``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    j = bessel_first_zero(k + 0.5)
    q = (k + 1) / j
    log_k1 = math.log(k + 1)
    log_q = math.log(q)
    coeffs = []
    log_terms = []
    for m in range(k + 1):
        log_a = (
            log_double_factorial(m, "odd")
            - log_double_factorial(m, "even")
            + math.lgamma(k + m + 1)
            - math.lgamma(k - m + 1)
            - 2 * m * log_k1
        )
        coeffs.append(math.exp(log_a))
        log_terms.append(log_a + 2 * m * log_q)
    top = max(log_terms)
    total = math.exp(top) * math.fsum(math.exp(v - top) for v in log_terms)
    return StarTerms(k=k, q=q, coeffs=tuple(coeffs), s_star=total, bessel_zero=j)


def tau_star_exact(k: int) -> float:
    """``tau_k* = (2k-1)!! / (j^k sqrt(S*_{k+1}))``."""
    st = s_star(k)
    log_v = log_double_factorial(k, "odd") - k * math.log(st.bessel_zero) - 0.5 * math.log(st.s_star)
    return math.exp(log_v)


def tau_star_asymptotic(k: int) -> float:
    """Leading term ``A (2/e)^(k+1/2) e^(-a k^(1/3)) k^(-1/6)``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    cst = constants()
    log_v = (
        math.log(cst.A)
        + (k + 0.5) * (math.log(2.0) - 1.0)
        - cst.a * k ** (1.0 / 3.0)
        - math.log(k) / 6.0
    )
    return math.exp(log_v)


def log_rho(lam: float) -> float:
    """``ln rho_lam`` with ``rho_lam = (2/(1+lam))^(1+lam) ((1-lam)/2)^(1-lam)``."""
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"lambda must lie in [0, 1), got {lam}")
    return (1 + lam) * (math.log(2.0) - math.log1p(lam)) + (1 - lam) * (math.log1p(-lam) - math.log(2.0))


def rho(lam: float) -> float:
    return math.exp(log_rho(lam))


def tau_asymptotic_uniform(n: int, k: int, delta: float = UNIFORM_DELTA) -> float:
    """Leading term of the uniform formula

        tau_{n,k} ~ A rho_lam^(n/2) e^(-a (1-lam^2)^(1/3) k^(1/3)) (1/k^2 - 1/n^2)^(1/12),

    ``lam = (k + 1/2)/n``; only offered for ``lam < 1 - delta``.
    """
    check_index(n, k)
    lam = (k + 0.5) / n
    if lam >= 1.0 - delta:
        raise DomainError(f"lambda = {lam:.4g} is not below 1 - delta = {1 - delta:.4g}")
    cst = constants()
    log_v = (
        math.log(cst.A)
        + 0.5 * n * log_rho(lam)
        - cst.a * (1 - lam * lam) ** (1.0 / 3.0) * k ** (1.0 / 3.0)
        + math.log(1.0 / (k * k) - 1.0 / (n * n)) / 12.0
    )
    return math.exp(log_v)
