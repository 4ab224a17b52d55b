import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rayleigh_mi import channel
from rayleigh_mi.channel import (
    ChannelParams,
    RAYLEIGH_ENTROPY,
    asymptotic_L,
    c_cnf,
    c_rcsi,
    cond_pdf_y_given_x,
    entropy_gap,
    h_y,
    h_y_given_x,
    info_point,
    lower_bound,
    mutual_information,
    nonfading_entropies,
    output_pdf,
    rayleigh_input_pdf,
)
from rayleigh_mi.errors import ClampWarning, DomainError, NumericalError
from rayleigh_mi.quadrature import adaptive_integrate, full_range_hermite_rule, half_range_hermite_rule
from rayleigh_mi.special import EULER_GAMMA

LOG2 = math.log(2.0)
GRID = [0.0] + list(np.logspace(-2, 3.5, 49))


def integral(f, tol=1e-11):
    return adaptive_integrate(f, 0.0, math.inf, tol).value


def test_params_validation():
    assert ChannelParams(1).omega_sq == 1.0
    assert ChannelParams.from_db(10).omega_sq == pytest.approx(10.0)
    assert ChannelParams(0).snr_db == -math.inf
    for bad in (-1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            ChannelParams(bad)


def test_cond_pdf():
    y = np.linspace(0, 4, 9)
    np.testing.assert_allclose(cond_pdf_y_given_x(y, 0.0), 2 * y * np.exp(-y * y))
    assert integral(lambda t: cond_pdf_y_given_x(t, 3.0)) == pytest.approx(1.0, abs=1e-10)
    ys = np.linspace(0.01, 3, 30001)
    assert ys[np.argmax(cond_pdf_y_given_x(ys, 0.0))] == pytest.approx(1 / math.sqrt(2), abs=1e-4)
    with pytest.raises(DomainError):
        cond_pdf_y_given_x(-1.0, 0.0)


def test_rayleigh_input_pdf():
    p = ChannelParams(2.5)
    assert integral(lambda x: rayleigh_input_pdf(x, p)) == pytest.approx(1.0, abs=1e-10)
    assert integral(lambda x: x * x * rayleigh_input_pdf(x, p)) == pytest.approx(2.5, abs=1e-9)
    assert rayleigh_input_pdf(1.0, 1.0) == pytest.approx(2 * math.exp(-1))
    with pytest.raises(DomainError):
        rayleigh_input_pdf(1.0, 0.0)


def test_output_pdf_zero_power():
    y = np.linspace(0, 3, 7)
    np.testing.assert_allclose(output_pdf(y, 0.0), 2 * y * np.exp(-y * y))


@pytest.mark.parametrize("s", [0.1, 1.0, 10.0, 1000.0])
def test_output_pdf_normalized(s, rule15):
    scale = math.sqrt(1 + s)
    total = adaptive_integrate(lambda y: output_pdf(y, s, rule15), 0, math.inf, 1e-11,
                               points=(1.0, scale, 10 * scale)).value
    assert total == pytest.approx(1.0, abs=1e-9)


def test_output_pdf_rejects_full_range():
    with pytest.raises(DomainError):
        output_pdf(1.0, 1.0, full_range_hermite_rule(5))
    with pytest.raises(DomainError):
        output_pdf(-0.1, 1.0)


def test_capacities():
    assert c_rcsi(0.0) == 0.0
    assert c_rcsi(1.0) == pytest.approx(0.596347, abs=1e-6)
    # e * |Ei(-1)| with Ei(-1) from adaptive quadrature
    ei1 = adaptive_integrate(lambda t: math.exp(-t) / t, 1, math.inf, 1e-13).value
    assert c_rcsi(1.0) == pytest.approx(math.e * ei1, abs=1e-12)
    assert c_rcsi(1e6) == pytest.approx(math.log(1e6) - EULER_GAMMA, abs=1e-4)
    assert c_cnf(0.0) == 0.0
    assert c_cnf(1.0) == pytest.approx(LOG2)
    assert c_cnf(math.e - 1) == pytest.approx(1.0)


def test_h_y_given_x_values():
    assert h_y_given_x(0.0) == pytest.approx(1 + EULER_GAMMA / 2 - LOG2, abs=1e-15)
    assert h_y_given_x(0.0) == pytest.approx(0.59546, abs=1e-5)
    assert h_y_given_x(1.0) == pytest.approx(0.893634, abs=1e-6)


@pytest.mark.parametrize("s", GRID)
def test_conditional_entropy_identity(s):
    assert h_y_given_x(s) - 0.5 * c_rcsi(s) == pytest.approx(1 - LOG2 + EULER_GAMMA / 2, abs=1e-12)


def test_h_y_given_x_integral_form():
    # int (x/s) exp(-x^2/s) log(1 + x^2) dx, evaluated directly
    s = 10.0
    f = lambda x: (x / s) * math.exp(-x * x / s) * math.log1p(x * x)
    direct = adaptive_integrate(f, 0, math.inf, 1e-12, points=(1.0, math.sqrt(s))).value
    assert h_y_given_x(s) == pytest.approx(direct + RAYLEIGH_ENTROPY, abs=1e-8)


def test_h_y_zero_power(rule15):
    assert h_y(0.0) == RAYLEIGH_ENTROPY
    # the quadrature form reproduces it without the special case
    tiny = h_y(1e-300, rule15, rule15)
    assert tiny == pytest.approx(RAYLEIGH_ENTROPY, abs=1e-13)


def test_h_y_monotone():
    assert h_y(10) > h_y(1) > h_y(0.1)


@pytest.mark.parametrize("s", [0.01, 1.0, 10.0])
def test_h_y_converges_with_rule_order(s):
    # raising q and r moves the closed form toward the q = r = 15 value
    ref = h_y(s)
    errs = [abs(h_y(s, half_range_hermite_rule(q), half_range_hermite_rule(q)) - ref) for q in (6, 10)]
    assert errs[1] <= errs[0] + 1e-12


def test_inner_order_sensitivity():
    outer = half_range_hermite_rule(15)
    values = [h_y(1.0, outer, half_range_hermite_rule(r)) for r in (8, 10, 12, 15)]
    assert max(values) - min(values) < 1e-6


def test_mutual_information_values():
    assert mutual_information(0.0) == 0.0
    high = mutual_information(1e6)
    assert 0 < high <= EULER_GAMMA


def test_lower_bound_values():
    assert lower_bound(0.0) == 0.0
    assert lower_bound(1.0) == pytest.approx(0.5 * (0.693147 - 0.596347), abs=1e-6)
    assert lower_bound(1.0) == pytest.approx(0.048400, abs=1e-6)
    assert lower_bound(1e6) == pytest.approx(EULER_GAMMA / 2, abs=1e-5)


def test_entropy_gap_values():
    g0 = 0.5 * (1 + math.log(math.pi)) + LOG2 - (1 + EULER_GAMMA / 2)
    assert entropy_gap(0.0) == pytest.approx(g0, abs=1e-12)
    assert entropy_gap(0.0) == pytest.approx(0.4769042910, abs=1e-10)
    floor = math.log(2 * math.sqrt(math.pi * math.e)) - (1 + EULER_GAMMA)
    assert floor == pytest.approx(0.1882964586, abs=1e-10)
    assert entropy_gap(1e6) >= floor
    assert entropy_gap(1.0) < entropy_gap(0.0)


def test_nonfading_entropies():
    h, hx = nonfading_entropies(0.0)
    assert h == hx == pytest.approx(1.072365, abs=1e-6)
    for s in (0.5, 3.0, 100.0):
        h, hx = nonfading_entropies(s)
        assert h - hx == pytest.approx(0.5 * c_cnf(s), abs=1e-14)
    assert nonfading_entropies(1.0)[0] - h_y(1.0) == pytest.approx(entropy_gap(1.0), abs=1e-14)


def test_asymptotic_L():
    L = asymptotic_L()
    assert L == pytest.approx(0.5 * (EULER_GAMMA + 1 + math.log(math.pi)), abs=1e-15)
    assert channel.high_snr_bracket(1e8) == pytest.approx(L, abs=1e-6)
    lhs = L - EULER_GAMMA + LOG2 - (1 + EULER_GAMMA / 2)
    assert lhs == pytest.approx(math.log(2 * math.sqrt(math.pi * math.e)) - (1 + EULER_GAMMA), abs=1e-14)


def test_grid_invariants():
    points = [info_point(s) for s in GRID]
    for p in points:
        assert p.lower_bound <= p.mutual_info + 1e-6
        assert 0 <= p.mutual_info <= min(max(p.c_rcsi, 0.0), EULER_GAMMA + 1e-3) or p.omega_sq == 0
        assert p.mutual_info == p.h_y - p.h_y_given_x or p.omega_sq == 0
        assert p.gap_g <= points[0].gap_g
    for name in ("h_y", "c_rcsi", "c_cnf", "mutual_info", "lower_bound"):
        series = [getattr(p, name) for p in points]
        assert all(b >= a for a, b in zip(series, series[1:])), name


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1e-4, max_value=1e5))
def test_lower_bound_below_mi(s):
    assert 0 <= lower_bound(s) <= mutual_information(s) + 1e-6


def test_clamp_warns_and_raises(monkeypatch):
    monkeypatch.setattr(channel, "h_y", lambda *a, **k: channel.h_y_given_x(1.0) - 5e-10)
    with pytest.warns(ClampWarning):
        assert channel.mutual_information(1.0) == 0.0
    monkeypatch.setattr(channel, "h_y", lambda *a, **k: channel.h_y_given_x(1.0) - 1e-6)
    with pytest.raises(NumericalError):
        channel.mutual_information(1.0)


def test_info_point_fields():
    p = info_point(ChannelParams.from_db(0))
    assert p.snr_db == pytest.approx(0.0)
    assert not p.clamped
    assert p.gap_g == pytest.approx(nonfading_entropies(1.0)[0] - p.h_y)
