"""Zeros of ultraspherical polynomials.

The quantity of interest is ``omega_{n,k}``, the largest zero of
``T_n^(k+1)``, i.e. of ``P_{n-k-1}^(k+1)``.  It is located by Newton's
method started to the right of the zero, inside a two-sided bracket.
All zeros (needed for quadrature nodes) come from Sturm-sequence bisection
on the Jacobi matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .orthopoly import _check_lambda, _recurrence, check_index, gegenbauer, gegenbauer_at_one

__all__ = [
    "OmegaResult",
    "omega_bracket",
    "largest_zero",
    "omega",
    "all_zeros",
    "jacobi_offdiag",
    "sign_scan",
]

MAX_ITER = 200
_STEP_TOL = 1e-15


@dataclass(frozen=True)
class OmegaResult:
    """Largest zero of ``P_m^(lam)`` with the bracket it was searched in.

    ``residual`` is ``|P_m^(lam)(omega)| / P_m^(lam)(1)``.
    """

    omega: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int


def omega_bracket(n: int, k: int) -> tuple[float, float]:
    """Two-sided bracket for the largest zero of ``T_n^(k+1)``.

    Upper end from ``1 - omega^2 >= ((k+2)/n)^2``, lower end from the
    Driver--Jordaan bound
    ``1 - omega^2 <= (2k+3)(2k+5) / (n^2 + 3k^2 + 12k + 11)``.
    """
    check_index(n, k, allow_k0=True)
    lo2 = 1.0 - (2 * k + 3) * (2 * k + 5) / (n * n + 3 * k * k + 12 * k + 11)
    hi2 = 1.0 - ((k + 2) / n) ** 2
    return math.sqrt(max(0.0, lo2)), math.sqrt(max(0.0, hi2))


def _value_and_step(m: int, lam: float, x: float) -> tuple[float, float, float]:
    """Return ``(P(x), scale, newton_step)`` with ``P = P(x) * exp(scale)``.

    ``P`` is sign-normalised so that it is positive at ``x = 1``.
    """
    p, sp = _recurrence(m, lam, x)
    if lam < 0.0:
        p = -p
    dp, sd = _recurrence(m - 1, lam + 1.0, x)
    dp *= 2.0 * abs(lam)
    if dp == 0.0:
        return p, sp, math.inf
    return p, sp, (p / dp) * math.exp(sp - sd)


def _newton_from_right(m: int, lam: float, lo: float, hi: float) -> tuple[float, int]:
    # To the right of the largest zero P, P' and P'' share the sign of P(1),
    # so Newton started there decreases monotonically onto the zero.  The
    # bisection branch only triggers on rounding-level overshoot.
    right = hi
    left = lo
    left_confirmed = False
    x = hi
    p, sp, step = _value_and_step(m, lam, x)
    if p == 0.0:
        return x, 0
    if p < 0:
        raise NumericError(f"bracket upper end {hi} is not right of the largest zero")
    for it in range(1, MAX_ITER + 1):
        x_new = x - step
        if not (left < x_new < right):
            if not left_confirmed and x_new <= left:
                x_new = 0.5 * (left + x)
            else:
                x_new = 0.5 * (left + right)
        p, sp, step_new = _value_and_step(m, lam, x_new)
        if p == 0.0:
            return x_new, it
        if p > 0:
            right = x_new
        else:
            left = x_new
            left_confirmed = True
        dx = abs(x_new - x)
        x, step = x_new, step_new
        # No residual-based exit: near omega |P| is tiny compared with P(1)
        # long before x has converged.
        if dx <= _STEP_TOL * max(1.0, abs(x)) or abs(step) <= 0.25 * _STEP_TOL * abs(x):
            if p < 0:
                # Landed a hair left of the zero: one more step from here.
                cand = x - step
                if left < cand < right:
                    x = cand
            return x, it
    raise NumericError(f"largest zero of P_{m}^({lam}) did not converge in {MAX_ITER} iterations")


def largest_zero(m: int, lam: float) -> OmegaResult:
    """Largest zero of ``P_m^(lam)``.

    Integer ``lam = k + 1`` uses the bracket of ``omega_bracket(m + k + 1, k)``;
    other ``lam`` take the bracket from Sturm bisection on the Jacobi matrix.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    _check_lambda(lam)
    if m == 1:
        return OmegaResult(0.0, 0.0, 0.0, 0.0, 0)
    if lam == 0.0:
        x = math.cos(math.pi / (2 * m))
        return OmegaResult(x, x, x, 0.0, 0)
    if lam >= 1.0 and lam == int(lam):
        k = int(lam) - 1
        lo, hi = omega_bracket(m + k + 1, k)
    else:
        x0 = float(_sturm_bisect(m, lam, np.array([m - 1]))[0])
        lo, hi = max(-1.0, x0 - 1e-12), min(1.0, x0 + 1e-12)
        # Widen until the upper end is certainly right of the zero.
        while _value_and_step(m, lam, hi)[0] <= 0.0 and hi < 1.0:
            hi = min(1.0, hi + 10.0 * (hi - x0) + 1e-14)
    log_p1 = gegenbauer_at_one(m, lam).logmag
    x, its = _newton_from_right(m, lam, lo, hi)
    p, sp, _ = _value_and_step(m, lam, x)
    resid = abs(p) * math.exp(sp - log_p1)
    return OmegaResult(x, min(lo, x), max(hi, x), resid, its)


def omega(n: int, k: int) -> OmegaResult:
    """``omega_{n,k}``: the largest zero of ``T_n^(k+1)`` (``n >= k + 2``)."""
    check_index(n, k, allow_k0=True)
    if n == k + 2:
        lo, hi = omega_bracket(n, k)
        return OmegaResult(0.0, lo, hi, 0.0, 0)
    return largest_zero(n - k - 1, k + 1.0)


def jacobi_offdiag(m: int, lam: float) -> np.ndarray:
    """Off-diagonal of the symmetric Jacobi matrix for the weight
    ``(1 - x^2)^(lam - 1/2)`` (the diagonal is zero)."""
    j = np.arange(1, m, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        b2 = j * (j + 2 * lam - 1) / (4.0 * (j + lam) * (j + lam - 1))
    if m > 1:
        b2[0] = 1.0 / (2.0 * (1.0 + lam))
    return np.sqrt(b2)


def _sturm_bisect(m: int, lam: float, which: np.ndarray) -> np.ndarray:
    """Eigenvalues with ascending indices ``which`` of the Jacobi matrix."""
    b2 = jacobi_offdiag(m, lam) ** 2
    which = np.asarray(which)
    lo = np.full(which.shape, -1.0)
    hi = np.full(which.shape, 1.0)
    tiny = 1e-300
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        # Negative LDL^T pivots of (A - mid I) count the eigenvalues below mid.
        q = -mid
        count = (q < 0).astype(int)
        for i in range(m - 1):
            q = np.where(q == 0.0, tiny, q)
            q = -mid - b2[i] / q
            count += q < 0
        below = count > which
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
        if np.all(hi - lo <= 2e-16 * np.maximum(1.0, np.abs(mid))):
            break
    return 0.5 * (lo + hi)


def all_zeros(m: int, lam: float) -> np.ndarray:
    """All zeros of ``P_m^(lam)`` in ascending order.

    Eigenvalues of the Jacobi matrix by Sturm bisection, each polished by one
    Newton step, then symmetrised about 0.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    _check_lambda(lam)
    if lam == 0.0:
        nu = np.arange(m, 0, -1)
        x = np.cos((2 * nu - 1) * np.pi / (2 * m))
    else:
        x = _sturm_bisect(m, lam, np.arange(m))
        for i, xi in enumerate(x):
            _, _, step = _value_and_step(m, lam, float(xi))
            if math.isfinite(step) and abs(step) < 1e-8:
                x[i] = xi - step
    x = 0.5 * (x - x[::-1])
    if m % 2:
        x[m // 2] = 0.0
    return x


def sign_scan(m: int, lam: float, x0: float, points: int = 32) -> bool:
    """True when ``P_m^(lam)`` keeps one sign at ``points`` points in ``(x0, 1]``."""
    xs = np.linspace(x0, 1.0, points + 1)[1:]
    signs = {gegenbauer(m, lam, float(x)).sign for x in xs}
    return len(signs) == 1 and 0 not in signs
