import math
from fractions import Fraction

import numpy as np
import pytest

from _oracles import s_sum_exact
from chebcrit.bounds import (
    bound_set,
    lower_bound,
    ratio_bound,
    s_at_zero_closed,
    tau_star_upper,
    terminating_3f2,
    upper_bounds,
    whipple_3f2,
)
from chebcrit.errors import DomainError
from chebcrit.tau import s_sum, tau_direct

TAU_41 = math.sqrt(2 / 27)


def test_upper_bound_examples():
    ub = upper_bounds(4, 1)
    assert ub["thm_15"] == pytest.approx(0.25 * (5 / 6) ** -0.5, rel=1e-14)
    assert ub["cor11"] == pytest.approx(1 / 3, rel=1e-14)
    assert all(v >= TAU_41 for v in ub.values())
    assert all(v >= 1 / 3 * (1 - 1e-14) for v in upper_bounds(3, 1).values())
    ub = upper_bounds(10, 2)
    assert ub["thm_15"] <= ub["cor11"]


@pytest.mark.parametrize("n, k, expected", [(4, 1, 0.25), (3, 1, 1 / 3), (5, 1, 0.2)])
def test_lower_bound_examples(n, k, expected):
    assert lower_bound(n, k) == pytest.approx(expected, rel=1e-15)


def test_ratio_bound_examples():
    assert ratio_bound(4, 1) == pytest.approx(1.25)
    assert TAU_41 / 0.25 <= ratio_bound(4, 1)
    assert ratio_bound(5, 2) == pytest.approx(35 / 24, rel=1e-15)
    assert all(ratio_bound(n, k) > 1 for k in range(1, 30) for n in range(k + 2, k + 50))


def test_tau_star_upper_examples():
    assert tau_star_upper(1) == pytest.approx(1 / 3)
    assert tau_star_upper(2) == pytest.approx(3 / 16)


def test_sandwich_grid():
    bad = []
    for k in range(1, 41):
        for n in range(k + 2, k + 151):
            bs = bound_set(n, k)
            if not bs.sandwiches(tau_direct(n, k, bs.omega).value):
                bad.append((n, k))
    assert bad == []


@pytest.mark.parametrize("k", range(1, 41))
def test_degenerate_index_makes_every_bound_tight(k):
    bs = bound_set(k + 2, k)
    exact = 1 / (2 * k + 1)
    for v in (bs.lower_16, bs.sd_12, bs.combined_14, bs.thm_15, bs.cor11):
        assert v == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("k", [1, 2, 7, 25])
def test_telescoped_ratio_reproduces_lower_bound(k):
    for n in (k + 3, k + 40, k + 150):
        log_prod = math.fsum(math.log(ratio_bound(j, k)) for j in range(k + 2, n))
        assert math.exp(log_prod) * lower_bound(n, k) == pytest.approx(1 / (2 * k + 1), rel=1e-12)


def test_bound_set_flags_extended_domain():
    assert bound_set(5, 1).sd_extended
    assert not bound_set(5, 2).sd_extended
    bs = bound_set(9, 3)
    assert bs.best_upper == min(bs.sd_12, bs.combined_14, bs.thm_15, bs.cor11)


def test_terminating_examples():
    assert terminating_3f2(2, -1, 0.5, 5, -3) == pytest.approx(16 / 15, rel=1e-15)
    assert terminating_3f2(0.3, 1.7, 0, 2.5, 4) == 1.0
    assert terminating_3f2(2, -1, 0.5, 6, -4) == pytest.approx(s_sum(5, 2, 0.0), rel=1e-15)


@pytest.mark.parametrize("m, k, variant, expected", [
    (4, 1, "k+1", Fraction(16, 15)),
    (5, 1, "k", Fraction(1)),
    (6, 2, "k", Fraction(36, 35)),
])
def test_closed_forms_at_zero_examples(m, k, variant, expected):
    assert s_at_zero_closed(m, k, variant) == pytest.approx(float(expected), rel=1e-15)


def test_closed_forms_at_zero_against_rational_sums():
    for m in range(3, 60):
        for k in range(1, m - 1):
            assert s_at_zero_closed(m, k, "k") == pytest.approx(float(s_sum_exact(m, k, 0)), rel=1e-12)
            assert s_at_zero_closed(m, k, "k+1") == pytest.approx(float(s_sum_exact(m, k + 1, 0)), rel=1e-12)


def test_closed_forms_at_zero_against_float_sums():
    for m in range(60, 201, 7):
        for k in range(1, m - 1, 3):
            assert s_at_zero_closed(m, k, "k") == pytest.approx(s_sum(m, k, 0.0), rel=1e-12)
            assert s_at_zero_closed(m, k, "k+1") == pytest.approx(s_sum(m, k + 1, 0.0), rel=1e-12)


def test_whipple_examples():
    assert whipple_3f2(2, 0.5, 5) == pytest.approx(16 / 15, rel=1e-14)
    assert whipple_3f2(2, 0.5, 7) == pytest.approx(36 / 35, rel=1e-14)
    assert whipple_3f2(1, 0.5, 5) == pytest.approx(1.0, rel=1e-14)
    assert whipple_3f2(1, 0.3, 2.2) == pytest.approx(1.0, rel=1e-14)


def test_whipple_against_terminating_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        m = int(rng.integers(3, 121))
        k = int(rng.integers(1, min(30, m - 2) + 1))
        series = terminating_3f2(k, 1 - k, 0.5, 1 + m, 1 - m)
        assert whipple_3f2(k, 0.5, 1 + m) == pytest.approx(series, rel=1e-11)


def test_whipple_non_terminating_parameters():
    # Generic parameters: both sides finite; a = -2 makes the series terminate.
    series = terminating_3f2(-2, 3, 0.7, 1.9, 0.5)
    assert whipple_3f2(-2, 0.7, 1.9) == pytest.approx(series, rel=1e-13)


def test_terminating_guards():
    with pytest.raises(DomainError):
        terminating_3f2(0.5, 1.5, 2.5, 3, 4)
    with pytest.raises(DomainError):
        terminating_3f2(-10, 1, 1, 2, 3, terms=5)
    with pytest.raises(DomainError):
        terminating_3f2(-3, 1, 1, -1, 3)
    with pytest.raises(DomainError):
        terminating_3f2(-3, 1, 1, 2, 3, terms=10**6)


def test_domain_errors():
    with pytest.raises(DomainError):
        s_at_zero_closed(3, 2, "k")
    with pytest.raises(DomainError):
        s_at_zero_closed(9, 2, "k+2")
    with pytest.raises(DomainError):
        lower_bound(3, 2)
    with pytest.raises(DomainError):
        tau_star_upper(0)


def test_whipple_surplus_denominator_pole_gives_zero():
    # (1 - a + d)/2 = 0 is a pole of a reciprocal Gamma; the series sums to 0.
    assert whipple_3f2(6, 0.3, 5) == 0.0
    assert abs(terminating_3f2(6, -5, 0.3, 5, -3.4)) < 1e-14


def test_whipple_surplus_numerator_pole_raises():
    with pytest.raises(DomainError):
        whipple_3f2(0.3, 0.5, 0)
