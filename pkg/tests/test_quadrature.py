import math

import numpy as np
import pytest

from _oracles import moment_recursive
from chebcrit.errors import DomainError
from chebcrit.quadrature import (
    QuadRule,
    alpha_coeff,
    classical_weights,
    even_moment,
    golub_welsch,
    integrate,
    petras_weights,
    zeroth_moment,
)

LAMBDAS = [1, 2, 3, 4, 6, 8]
SIZES = [1, 2, 4, 8, 16, 32, 64]


def test_petras_examples():
    r = petras_weights(1, 2)
    np.testing.assert_allclose(r.nodes, [-0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(r.weights, [math.pi / 4] * 2, rtol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 10, 40])
def test_petras_lambda_one_is_chebyshev_u(n):
    r = petras_weights(1, n)
    theta = np.arange(n, 0, -1) * math.pi / (n + 1)
    np.testing.assert_allclose(r.nodes, np.cos(theta), atol=1e-14)
    np.testing.assert_allclose(r.weights, math.pi / (n + 1) * np.sin(theta) ** 2, rtol=1e-13)


def test_petras_lambda_zero_is_chebyshev_t():
    r = petras_weights(0, 5)
    np.testing.assert_allclose(r.weights, [math.pi / 5] * 5, rtol=1e-14)


@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("n", SIZES)
def test_three_way_weight_agreement(lam, n):
    gw = golub_welsch(float(lam), n)
    others = [petras_weights(lam, n)]
    if lam > 1:
        others.append(classical_weights(float(lam), n))
    for r in others:
        np.testing.assert_allclose(r.nodes, gw.nodes, atol=1e-14)
        np.testing.assert_allclose(r.weights, gw.weights, rtol=1e-10, atol=0)
    assert np.all(gw.weights > 0)


@pytest.mark.parametrize("lam", LAMBDAS + [0.5, 1.5, 2.75])
@pytest.mark.parametrize("n", [1, 3, 8, 21])
def test_moment_exactness(lam, n):
    rules = [golub_welsch(float(lam), n)]
    if lam == int(lam):
        rules.append(petras_weights(int(lam), n))
    if lam > 1:
        rules.append(classical_weights(float(lam), n))
    for r in rules:
        for j in range(n):
            exact = moment_recursive(lam, j)
            assert even_moment(lam, j) == pytest.approx(exact, rel=1e-13)
            assert integrate(r, lambda x: x ** (2 * j)) == pytest.approx(exact, rel=1e-10)
        assert abs(integrate(r, lambda x: x ** (2 * n - 1))) < 1e-14


def test_integrate_examples():
    r = golub_welsch(1.0, 6)
    assert integrate(r, lambda x: 1.0) == pytest.approx(zeroth_moment(1.0))
    assert integrate(r, lambda x: x * x) == pytest.approx(math.pi / 8, rel=1e-14)
    assert sum(golub_welsch(1.0, 9).weights) == pytest.approx(math.pi / 2, rel=1e-14)


def test_legendre_two_point():
    r = golub_welsch(0.5, 2)
    np.testing.assert_allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(r.weights, [1.0, 1.0], rtol=1e-14)


def test_classical_non_integer_lambda():
    a, b = classical_weights(1.5, 4), golub_welsch(1.5, 4)
    np.testing.assert_allclose(a.weights, b.weights, rtol=1e-12)
    np.testing.assert_allclose(a.weights, a.weights[::-1], rtol=1e-13)


def test_alpha_coeff_vanishes_past_the_cut():
    for lam in range(1, 12):
        for m in range(1, 12):
            a = alpha_coeff(m, lam).value
            if 2 * m > m + lam - 1:
                assert a == 0.0
            else:
                assert a > 0
    # alpha_1(3) = (2!/2)^2 C(3, 2) = 3
    assert alpha_coeff(1, 3).value == pytest.approx(3.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        petras_weights(1.5, 4)
    with pytest.raises(DomainError):
        classical_weights(1.0, 4)
    with pytest.raises(DomainError):
        golub_welsch(-0.5, 3)
    with pytest.raises(DomainError):
        golub_welsch(1.0, 0)
    with pytest.raises(DomainError):
        QuadRule(1.0, 2, np.zeros(3), np.zeros(2))
