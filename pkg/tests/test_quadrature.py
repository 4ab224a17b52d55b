import csv
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rayleigh_mi.errors import ConvergenceError, DomainError, EvaluationError
from rayleigh_mi.quadrature import (
    Domain,
    adaptive_integrate,
    apply_rule,
    full_range_hermite_rule,
    half_range_hermite_rule,
    half_range_moment,
    recurrence_from_moments,
)
from rayleigh_mi.special import hermite_poly

DATA = Path(__file__).parent / "data"
SQRT_PI = math.sqrt(math.pi)


def test_one_point_rule():
    rule = half_range_hermite_rule(1)
    assert rule.nodes[0] == pytest.approx(1 / SQRT_PI, rel=1e-15)
    assert rule.weights[0] == pytest.approx(SQRT_PI / 2, rel=1e-15)


@pytest.mark.parametrize("q", range(1, 16))
def test_half_range_exactness(q):
    rule = half_range_hermite_rule(q)
    bound = 1e-10 if q <= 10 else 1e-8
    for k in range(2 * q):
        got = float(np.dot(rule.weights, rule.nodes**k))
        assert abs(got / half_range_moment(k) - 1) <= bound, k


@pytest.mark.parametrize("q", range(1, 16))
def test_half_range_structure(q):
    rule = half_range_hermite_rule(q)
    assert rule.domain is Domain.HALF_RANGE and rule.order == q
    assert np.all(np.diff(rule.nodes) > 0) and np.all(rule.nodes > 0)
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(SQRT_PI / 2, abs=1e-12)
    assert np.dot(2 * rule.weights, rule.nodes) == pytest.approx(1.0, abs=1e-12)


def test_rule_is_immutable():
    rule = half_range_hermite_rule(5)
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0


def test_q2_integrates_cubic():
    rule = half_range_hermite_rule(2)
    assert apply_rule(rule, lambda t: t**3) == pytest.approx(0.5, abs=1e-14)


def test_q15_snapshot():
    with open(DATA / "half_range_q15.csv") as fh:
        rows = list(csv.DictReader(fh))
    rule = half_range_hermite_rule(15)
    np.testing.assert_allclose(rule.nodes, [float(r["node"]) for r in rows], rtol=1e-12)
    np.testing.assert_allclose(rule.weights, [float(r["weight"]) for r in rows], rtol=1e-12)


def test_high_order_fails_in_double_precision():
    mu = [half_range_moment(k) for k in range(41)]
    with pytest.raises(ConvergenceError):
        recurrence_from_moments(mu, 20, dps=15)


@pytest.mark.parametrize("q", [0, 16, 2.5])
def test_half_range_order_guard(q):
    with pytest.raises(DomainError):
        half_range_hermite_rule(q)


def test_full_range_small():
    one = full_range_hermite_rule(1)
    assert one.nodes[0] == 0.0 and one.weights[0] == pytest.approx(SQRT_PI)
    two = full_range_hermite_rule(2)
    np.testing.assert_allclose(two.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(two.weights, [SQRT_PI / 2] * 2, rtol=1e-15)


@pytest.mark.parametrize("q", [3, 5, 12, 30])
def test_full_range_matches_weight_formula(q):
    rule = full_range_hermite_rule(q)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-14)
    formula = [2.0 ** (q - 1) * math.factorial(q) * SQRT_PI / (q * q * hermite_poly(q - 1, x) ** 2)
               for x in rule.nodes]
    np.testing.assert_allclose(rule.weights, formula, rtol=1e-10)


def test_full_range_order_guard():
    with pytest.raises(DomainError):
        full_range_hermite_rule(31)


def test_apply_rule_examples():
    rule4 = half_range_hermite_rule(4)
    assert apply_rule(rule4, lambda t: 1.0) == pytest.approx(SQRT_PI / 2, abs=1e-12)
    assert apply_rule(rule4, lambda t: 2 * t) == pytest.approx(1.0, abs=1e-12)
    assert apply_rule(half_range_hermite_rule(3), lambda t: t**4) == pytest.approx(3 * SQRT_PI / 8, abs=1e-11)


def test_apply_rule_nan():
    with pytest.raises(EvaluationError):
        apply_rule(half_range_hermite_rule(3), lambda t: math.nan)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=15), st.lists(st.floats(-3, 3), min_size=1, max_size=30))
def test_exact_for_random_polynomials(q, coeffs):
    coeffs = coeffs[: 2 * q]
    rule = half_range_hermite_rule(q)
    exact = sum(c * half_range_moment(k) for k, c in enumerate(coeffs))
    got = apply_rule(rule, lambda t: sum(c * t**k for k, c in enumerate(coeffs)))
    scale = sum(abs(c) * half_range_moment(k) for k, c in enumerate(coeffs))
    assert abs(got - exact) <= 1e-9 * max(scale, 1.0)


def test_adaptive_examples():
    assert adaptive_integrate(lambda x: x * x, 0, 1, 1e-12).value == pytest.approx(1 / 3, abs=1e-12)
    est = adaptive_integrate(lambda t: math.exp(-t * t), 0, math.inf, 1e-12)
    assert est.value == pytest.approx(SQRT_PI / 2, abs=1e-12)
    assert 0 <= est.error_bound <= 1e-12 and est.evaluations > 0
    est = adaptive_integrate(lambda t: math.exp(-t) / t, 1, math.inf, 1e-13)
    assert est.value == pytest.approx(0.2193839344, abs=1e-10)


def test_adaptive_envelope_truncation():
    f = lambda t: math.exp(-t * t / 2)
    est = adaptive_integrate(f, 0, math.inf, 1e-12, envelope=f)
    assert est.value == pytest.approx(math.sqrt(math.pi / 2), abs=1e-12)


def test_adaptive_unreachable_tolerance():
    with pytest.raises(ConvergenceError):
        adaptive_integrate(lambda t: math.exp(-t) / t, 1, math.inf, 1e-18)


def test_adaptive_rejects_bad_tol():
    with pytest.raises(DomainError):
        adaptive_integrate(lambda t: t, 0, 1, 0.0)
