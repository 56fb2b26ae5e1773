"""The ten acceptance checks, shared by ``chebcrit verify`` and the test suite.

Each check returns a :class:`CriterionResult`; :func:`run_suite` runs them in
order and reports one line per check.  ``profile="quick"`` shrinks the grids
so the whole suite stays well under half a minute.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, TextIO

import numpy as np

from .asympt import constants, tau_star_asymptotic, tau_star_exact
from .bounds import (
    bound_set,
    s_at_zero_closed,
    terminating_3f2,
    whipple_3f2,
)
from .quadrature import classical_weights, even_moment, golub_welsch, integrate, petras_weights
from .roots import omega as _omega
from .sweep import SweepSpec, compute_rows, render
from .tau import s_sum, tau_closed_form, tau_direct

__all__ = ["CriterionResult", "Profile", "PROFILES", "run_suite", "CRITERIA", "FAULT_SHIFT"]

FAULT_SHIFT = 1e-6
RANDOM_SEED = 20240611
# Rounding slack for inequalities that hold with equality at n = k + 2.
BOUND_RTOL = 1e-12


@dataclass(frozen=True)
class Profile:
    k_max: int
    n_span: int
    quad_n: tuple[int, ...]
    hyper_m_max: int
    hyper_random: int
    table_k_max: int


PROFILES = {
    "quick": Profile(k_max=20, n_span=100, quad_n=(1, 2, 4, 8, 16, 32), hyper_m_max=100,
                     hyper_random=100, table_k_max=2),
    "full": Profile(k_max=60, n_span=200, quad_n=(1, 2, 4, 8, 16, 32, 64), hyper_m_max=200,
                    hyper_random=200, table_k_max=4),
}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s)"


@dataclass
class _Context:
    profile: Profile
    fault: bool
    jobs: int
    _grid: dict | None = None

    def grid(self) -> dict:
        if self._grid is None:
            self._grid = _compute_grid(self.profile, self.fault, self.jobs)
        return self._grid


def _grid_for_k(args) -> tuple[int, list[tuple]]:
    # One extra n so every grid point has a successor for the monotonicity check.
    k, span, shift = args
    rows = []
    for n in range(k + 2, k + span + 2):
        w = _omega(n, k).omega + shift
        td = tau_direct(n, k, w).value
        tc = tau_closed_form(n, k, w).value
        rows.append((n, w, td, tc, bound_set(n, k, w)))
    return k, rows


def _compute_grid(profile: Profile, fault: bool, jobs: int) -> dict:
    shift = FAULT_SHIFT if fault else 0.0
    tasks = [(k, profile.n_span, shift) for k in range(1, profile.k_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_grid_for_k, tasks))
    else:
        chunks = [_grid_for_k(t) for t in tasks]
    return dict(chunks)


def _fmt(x: float) -> str:
    return f"{x:.3g}"


def c1_closed_form(ctx: _Context) -> tuple[bool, str]:
    worst, at = 0.0, None
    count = 0
    for k, rows in ctx.grid().items():
        for n, _, td, tc, _ in rows[:-1]:
            err = abs(tc - td) / td
            count += 1
            if not err <= worst:
                worst, at = err, (n, k)
    return worst <= 1e-9, f"worst rel err {_fmt(worst)} at (n,k)={at} over {count} points, tol 1e-9"


def c2_golden(ctx: _Context) -> tuple[bool, str]:
    shift = FAULT_SHIFT if ctx.fault else 0.0
    worst = 0.0
    for k in range(1, 51):
        w = _omega(k + 2, k).omega + shift
        exact = 1.0 / (2 * k + 1)
        for v in (tau_direct(k + 2, k, w).value, tau_closed_form(k + 2, k, w).value):
            worst = max(worst, abs(v - exact))
    return worst <= 1e-12, f"worst abs err {_fmt(worst)} for k=1..50, tol 1e-12"


def c3_sandwich(ctx: _Context) -> tuple[bool, str]:
    violations = []
    count = 0
    for k, rows in ctx.grid().items():
        for n, _, td, _, bs in rows[:-1]:
            count += 1
            if not bs.sandwiches(td, BOUND_RTOL):
                violations.append((n, k))
    detail = f"{len(violations)} violations over {count} points"
    if violations:
        detail += f", first at (n,k)={violations[0]}"
    return not violations, detail


def c4_monotone(ctx: _Context) -> tuple[bool, str]:
    not_decreasing = []
    over_ratio = []
    for k, rows in ctx.grid().items():
        for (n, _, t0, _, bs), (_, _, t1, _, _) in zip(rows[:-1], rows[1:]):
            if not t0 > t1:
                not_decreasing.append((n, k))
            if not t0 / t1 <= bs.ratio_16p * (1 + BOUND_RTOL):
                over_ratio.append((n, k))
    ok = not not_decreasing and not over_ratio
    detail = f"{len(not_decreasing)} non-decreasing steps, {len(over_ratio)} ratio-bound violations"
    if not ok:
        detail += f", first at {(not_decreasing + over_ratio)[0]}"
    return ok, detail


def c5_quadrature(ctx: _Context) -> tuple[bool, str]:
    worst_w = worst_m = 0.0
    for lam in (1, 2, 3, 4, 6, 8):
        for n in ctx.profile.quad_n:
            gw = golub_welsch(float(lam), n)
            rules = [gw, petras_weights(lam, n)]
            if lam > 1:
                rules.append(classical_weights(float(lam), n))
            for r in rules[1:]:
                worst_w = max(worst_w, float(np.max(np.abs(r.weights - gw.weights) / gw.weights)))
            for r in rules:
                for j in range(n):
                    exact = even_moment(lam, j)
                    got = integrate(r, lambda x, j=j: x ** (2 * j))
                    worst_m = max(worst_m, abs(got - exact) / exact)
    ok = worst_w <= 1e-10 and worst_m <= 1e-10
    return ok, f"weights {_fmt(worst_w)}, moments {_fmt(worst_m)}, tol 1e-10"


def _hyper_errors(m: int, k: int) -> float:
    errs = []
    # Closed forms at x = 0 against the defining sums.
    for variant, kk in (("k", k), ("k+1", k + 1)):
        direct = s_sum(m, kk, 0.0)
        errs.append(abs(s_at_zero_closed(m, k, variant) - direct) / direct)
    # Whipple against the terminating series, for both S-sums.
    for a in (k, k + 1):
        series = terminating_3f2(a, 1 - a, 0.5, 1 + m, 1 - m)
        errs.append(abs(whipple_3f2(a, 0.5, 1 + m) - series) / abs(series))
    return max(errs)


def c6_hypergeometric(ctx: _Context) -> tuple[bool, str]:
    worst, at = 0.0, None
    m_max = ctx.profile.hyper_m_max
    cases = [(m, k) for m in range(3, m_max + 1) for k in range(1, m - 1)]
    rng = np.random.default_rng(RANDOM_SEED)
    for _ in range(ctx.profile.hyper_random):
        m = int(rng.integers(3, m_max + 1))
        cases.append((m, int(rng.integers(1, m - 1))))
    for m, k in cases:
        err = _hyper_errors(m, k)
        if not err <= worst:
            worst, at = err, (m, k)
    return worst <= 1e-11, f"worst rel err {_fmt(worst)} at (m,k)={at} over {len(cases)} cases, tol 1e-11"


def c7_constants(ctx: _Context) -> tuple[bool, str]:
    cst = constants()
    ok = abs(cst.a - 1.8558) <= 5e-5 and abs(cst.A - 1.3951) <= 5e-5
    return ok, f"a={cst.a:.10f}, A={cst.A:.10f}"


def _tan_fixed_point() -> float:
    # First positive root of tan x = x, written as sin x - x cos x = 0.
    x = 4.5
    for _ in range(50):
        f = math.sin(x) - x * math.cos(x)
        x -= f / (x * math.sin(x))
    return x


def c8_limit(ctx: _Context) -> tuple[bool, str]:
    j = _tan_fixed_point()
    err1 = abs(tau_star_exact(1) - 1.0 / math.sqrt(1 + j * j))
    gaps = []
    for k in range(1, 6):
        star = tau_star_exact(k)
        gaps.append((tau_direct(2000, k).value - star) / star)
    ok = err1 <= 1e-12 and all(0 < g < 0.01 for g in gaps)
    return ok, f"k=1 identity err {_fmt(err1)}; relative gaps at n=2000: " + ", ".join(map(_fmt, gaps))


def c9_trend(ctx: _Context) -> tuple[bool, str]:
    scaled = [
        abs(tau_star_asymptotic(k) / tau_star_exact(k) - 1) * k ** (1 / 6)
        for k in (8, 16, 32, 64, 128)
    ]
    ok = max(scaled) <= 5 and all(b <= a for a, b in zip(scaled, scaled[1:]))
    return ok, "scaled errors " + ", ".join(f"{s:.4f}" for s in scaled)


def c10_determinism(ctx: _Context) -> tuple[bool, str]:
    spec = SweepSpec(k_min=1, k_max=ctx.profile.table_k_max, n_max=None)
    short = SweepSpec(k_min=1, k_max=ctx.profile.table_k_max, n_max=ctx.profile.table_k_max + 30)
    outputs = []
    for s in (spec, short):
        for jobs in (1, 2):
            outputs.append(render(s, compute_rows(s, jobs=jobs)))
    ok = outputs[0] == outputs[1] and outputs[2] == outputs[3]
    return ok, f"jobs=1 vs jobs=2 byte-identical over {outputs[0].count(chr(10)) - 1} rows"


CRITERIA: list[tuple[int, str, Callable[[_Context], tuple[bool, str]]]] = [
    (1, "closed form equals direct evaluation", c1_closed_form),
    (2, "tau_{k+2,k} = 1/(2k+1)", c2_golden),
    (3, "lower <= tau <= every upper bound", c3_sandwich),
    (4, "strict decrease in n within the ratio bound", c4_monotone),
    (5, "quadrature weight constructions agree", c5_quadrature),
    (6, "hypergeometric closed forms", c6_hypergeometric),
    (7, "asymptotic constants a and A", c7_constants),
    (8, "limit tau_k* consistency", c8_limit),
    (9, "asymptotic error trend", c9_trend),
    (10, "table determinism across --jobs", c10_determinism),
]


def run_suite(
    profile: str = "full",
    fault: bool = False,
    jobs: int = 1,
    only: set[int] | None = None,
    stream: TextIO | None = None,
) -> list[CriterionResult]:
    """Run the selected checks in order; with ``stream`` set, print one line per check."""
    ctx = _Context(PROFILES[profile], fault, jobs)
    results = []
    for number, title, fn in CRITERIA:
        if only is not None and number not in only:
            continue
        t0 = time.perf_counter()
        try:
            passed, detail = fn(ctx)
        except (ArithmeticError, ValueError) as exc:
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        res = CriterionResult(number, title, passed, detail, time.perf_counter() - t0)
        results.append(res)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
    return results
