"""Scalar special functions used by the closed forms.

Only real arguments are supported. The exponential integral is evaluated with
a power series for small arguments and a continued fraction (modified Lentz)
for large ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

EULER_GAMMA = 0.57721566490153286061

_SERIES_CUTOFF = 6.0
_MAX_TERMS = 500
_EPS = 1e-16
_TINY = 1e-300
HERMITE_MAX_ORDER = 64


@dataclass(frozen=True)
class MathConstants:
    euler_gamma: float = EULER_GAMMA
    log_two: float = math.log(2.0)
    log_pi_e: float = 1.0 + math.log(math.pi)


CONSTANTS = MathConstants()


def _check_negative(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x >= 0.0:
        raise DomainError(f"Ei is only defined here for finite x < 0, got {x!r}")
    return -x


def _e1_series(z: float) -> float:
    # E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
    total = 0.0
    term = 1.0
    for k in range(1, _MAX_TERMS + 1):
        term *= -z / k
        contrib = term / k
        total += contrib
        if abs(contrib) < _EPS * abs(total):
            return -EULER_GAMMA - math.log(z) - total
    raise ConvergenceError(f"E1 series did not converge at z={z}")


def _scaled_e1_fraction(z: float) -> float:
    """Return exp(z) * E1(z) from the continued fraction, valid for z > 1."""
    b = z + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS + 1):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(f"E1 continued fraction did not converge at z={z}")


def scaled_e1(z: float) -> float:
    """exp(z) * E1(z) for z > 0, without overflow for large z.

    This is the combination that appears in the CSI capacity,
    ``-exp(1/snr) * Ei(-1/snr) = scaled_e1(1/snr)``.
    """
    z = float(z)
    if not math.isfinite(z) or z <= 0.0:
        raise DomainError(f"scaled_e1 requires finite z > 0, got {z!r}")
    if z <= _SERIES_CUTOFF:
        return math.exp(z) * _e1_series(z)
    return _scaled_e1_fraction(z)


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x) for x < 0.

    Ei(x) = -E1(-x). The result is strictly negative and underflows to -0.0
    once exp(x) does (x below about -745).
    """
    z = _check_negative(x)
    if z <= _SERIES_CUTOFF:
        return -_e1_series(z)
    return -(math.exp(-z) * _scaled_e1_fraction(z))


def ln_gamma_half_integer(k: int) -> float:
    """log Gamma((k + 1) / 2) for integer k >= 0.

    Built from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1 by the recurrence
    Gamma(z + 1) = z Gamma(z).
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    if k % 2 == 0:
        z, value = 0.5, 0.5 * math.log(math.pi)
    else:
        z, value = 1.0, 0.0
    target = (k + 1) / 2
    while z < target:
        value += math.log(z)
        z += 1.0
    return value


def hermite_poly(q: int, x: float) -> float:
    """Physicists' Hermite polynomial H_q(x) by three-term recurrence."""
    if int(q) != q or q < 0:
        raise DomainError(f"order must be a nonnegative integer, got {q!r}")
    if q > HERMITE_MAX_ORDER:
        raise DomainError(f"order {q} exceeds the overflow guard {HERMITE_MAX_ORDER}")
    h_prev, h = 1.0, 2.0 * x
    if q == 0:
        return h_prev
    for n in range(1, int(q)):
        h_prev, h = h, 2.0 * x * h - 2.0 * n * h_prev
    return h
