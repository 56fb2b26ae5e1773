"""Gauss--Gegenbauer quadrature for the weight ``(1 - x^2)^(lam - 1/2)``.

Three constructions of the same weights:

* :func:`petras_weights` -- closed form for integer ``lam``,
* :func:`classical_weights` -- via ``P_{n+1}^(lam-1)`` at the nodes (``lam > 1``),
* :func:`golub_welsch` -- Jacobi-matrix oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import DomainError, NumericError
from .orthopoly import gegenbauer
from .roots import all_zeros, jacobi_offdiag
from .tau import one_minus_sq
from .xprec import log_binomial_real

__all__ = [
    "QuadRule",
    "AlphaCoeff",
    "alpha_coeff",
    "zeroth_moment",
    "even_moment",
    "petras_weights",
    "classical_weights",
    "golub_welsch",
    "integrate",
]


@dataclass(frozen=True)
class QuadRule:
    lam: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    method: str = ""

    def __post_init__(self):
        if self.nodes.shape != (self.n,) or self.weights.shape != (self.n,):
            raise DomainError("nodes and weights must both have length n")


@dataclass(frozen=True)
class AlphaCoeff:
    m: int
    lam: int
    value: float


def alpha_coeff(m: int, lam: int) -> AlphaCoeff:
    """``alpha_m(lam) = ((2m)! / (2^m m!))^2 C(m + lam - 1, 2m)``; zero once ``2m > m + lam - 1``."""
    if m < 1 or lam < 1:
        raise DomainError(f"need m >= 1 and lam >= 1, got m={m}, lam={lam}")
    if 2 * m > m + lam - 1:
        return AlphaCoeff(m, lam, 0.0)
    log_dfact = math.lgamma(2 * m + 1) - m * math.log(2.0) - math.lgamma(m + 1)
    return AlphaCoeff(m, lam, math.exp(2 * log_dfact + log_binomial_real(m + lam - 1, 2 * m)))


def zeroth_moment(lam: float) -> float:
    """``int_{-1}^{1} (1-x^2)^(lam-1/2) dx = sqrt(pi) Gamma(lam+1/2) / Gamma(lam+1)``."""
    return math.exp(0.5 * math.log(math.pi) + math.lgamma(lam + 0.5) - math.lgamma(lam + 1))


def even_moment(lam: float, j: int) -> float:
    """``int x^(2j) (1-x^2)^(lam-1/2) dx = Gamma(j+1/2) Gamma(lam+1/2) / Gamma(j+lam+1)``."""
    return math.exp(math.lgamma(j + 0.5) + math.lgamma(lam + 0.5) - math.lgamma(j + lam + 1))


def petras_weights(lam: int, n: int) -> QuadRule:
    """Closed-form weights for integer ``lam >= 0``:

        a_nu = pi/(n+lam) (1-x_nu^2)^lam
               (1 + sum_{m=1}^{lam-1} alpha_m(lam) / (1-x_nu^2)^m
                    prod_{j=1}^m 1/((n+lam)^2 - j^2)).
    """
    if int(lam) != lam or lam < 0:
        raise DomainError(f"the closed form needs a non-negative integer lambda, got {lam}")
    lam = int(lam)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    x = all_zeros(n, float(lam))
    N2 = (n + lam) ** 2
    z = np.array([one_minus_sq(float(xi)) for xi in x])
    corr = np.ones(n)
    log_prod = 0.0
    for m in range(1, lam):
        log_prod -= math.log(N2 - m * m)
        a = alpha_coeff(m, lam).value
        if a == 0.0:
            continue
        corr += a * math.exp(log_prod) / z ** m
    w = math.pi / (n + lam) * z ** lam * corr
    return QuadRule(float(lam), n, x, w, "petras")


def classical_weights(lam: float, n: int) -> QuadRule:
    """Weights from the value of ``P_{n+1}^(lam-1)`` at the nodes:

        a_nu = 2^(4-2lam) pi Gamma(n+2lam-1)
               / ((n+1)(n+2lam-1) Gamma(lam-1)^2 Gamma(n+2))
               * (1-x_nu^2) / [P_{n+1}^(lam-1)(x_nu)]^2,   lam > 1.
    """
    if not lam > 1.0:
        raise DomainError(f"classical weights need lambda > 1, got {lam}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    x = all_zeros(n, float(lam))
    log_c = (
        (4 - 2 * lam) * math.log(2.0)
        + math.log(math.pi)
        + math.lgamma(n + 2 * lam - 1)
        - math.log(n + 1)
        - math.log(n + 2 * lam - 1)
        - 2 * math.lgamma(lam - 1)
        - math.lgamma(n + 2)
    )
    w = np.empty(n)
    for i, xi in enumerate(x):
        p = gegenbauer(n + 1, lam - 1.0, float(xi))
        if p.is_zero:
            raise NumericError(f"P_{n + 1}^({lam - 1}) vanishes at a node")
        # Square in log space: the value itself may exceed the double range.
        w[i] = math.exp(log_c + math.log(one_minus_sq(float(xi))) - 2 * p.logmag)
    return QuadRule(float(lam), n, x, w, "classical")


def golub_welsch(lam: float, n: int) -> QuadRule:
    """Gauss rule from the symmetric Jacobi matrix.

    Nodes are its eigenvalues (LAPACK).  The weight ``mu_0 v_0^2`` needs the
    first component of the normalised eigenvector; it is obtained from the
    eigenvector's own three-term recurrence, ``v_j ~ p_j(x)`` with ``p_j``
    orthonormal, so ``mu_0 v_0^2 = 1 / sum_j p_j(x)^2``.  This keeps full
    relative accuracy for the tiny weights next to +-1 that a dense
    eigenvector solve only resolves to absolute precision.
    """
    if not lam > -0.5:
        raise DomainError(f"lambda must exceed -1/2, got {lam}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    mu0 = zeroth_moment(lam)
    b = jacobi_offdiag(n, lam)
    if n == 1:
        x = np.zeros(1)
    else:
        try:
            x = eigvalsh_tridiagonal(np.zeros(n), b)
        except np.linalg.LinAlgError as exc:
            raise NumericError(f"tridiagonal eigen-solve failed: {exc}") from exc
        x = np.sort(0.5 * (x - x[::-1]))
    p_prev = np.zeros(n)
    p = np.full(n, 1.0 / math.sqrt(mu0))
    total = p * p
    for j in range(n - 1):
        # b_{j+1} p_{j+1} = x p_j - b_j p_{j-1}
        b_prev = b[j - 1] if j > 0 else 0.0
        p_prev, p = p, (x * p - b_prev * p_prev) / b[j]
        total += p * p
    return QuadRule(float(lam), n, x, 1.0 / total, "golub_welsch")


def integrate(rule: QuadRule, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """``sum_nu w_nu f(x_nu)``."""
    vals = np.asarray(f(rule.nodes), dtype=float)
    if vals.shape == ():
        vals = np.full(rule.n, float(vals))
    return math.fsum(rule.weights * vals)
