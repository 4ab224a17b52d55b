"""Densities, entropies and capacities of the non-coherent Rayleigh channel.

The channel is y = a x + n with circular complex Gaussian fading a and noise
n, both of unit power, so the SNR equals the input power ``omega_sq``.
Everything is expressed through magnitudes and in nats. With a complex
Gaussian input the input magnitude is Rayleigh, the conditional entropy has a
closed form in the exponential integral, and the output entropy is computed
with two half-range Gauss-Hermite rules.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import ClampWarning, DomainError, NumericalError
from .quadrature import Domain, QuadratureRule, half_range_hermite_rule
from .special import EULER_GAMMA, scaled_e1

log = logging.getLogger(__name__)

LOG_TWO = math.log(2.0)
LOG_PI_E = 1.0 + math.log(math.pi)
# entropy of the unit-power Rayleigh magnitude, h(Y|X) and h(Y) at zero power
RAYLEIGH_ENTROPY = 1.0 + 0.5 * EULER_GAMMA - LOG_TWO
CLAMP_LIMIT = 1e-9
DEFAULT_ORDER = 15


@dataclass(frozen=True)
class ChannelParams:
    """Average input power (equal to the SNR under unit fading/noise power)."""

    omega_sq: float

    def __post_init__(self):
        value = float(self.omega_sq)
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"omega_sq must be finite and >= 0, got {self.omega_sq!r}")
        object.__setattr__(self, "omega_sq", value)

    @classmethod
    def from_db(cls, snr_db: float) -> "ChannelParams":
        return cls(10.0 ** (snr_db / 10.0))

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.omega_sq) if self.omega_sq > 0 else -math.inf


@dataclass(frozen=True)
class InfoPoint:
    omega_sq: float
    snr_db: float
    h_y: float
    h_y_given_x: float
    mutual_info: float
    c_rcsi: float
    c_cnf: float
    lower_bound: float
    gap_g: float
    clamped: bool = False


def _power(p) -> float:
    if isinstance(p, ChannelParams):
        return p.omega_sq
    return ChannelParams(p).omega_sq


def _check_nonneg(name, value):
    if not np.all(np.isfinite(value)) or np.any(np.asarray(value) < 0):
        raise DomainError(f"{name} must be finite and >= 0")


def _default_rule(rule):
    if rule is None:
        return half_range_hermite_rule(DEFAULT_ORDER)
    if rule.domain is not Domain.HALF_RANGE:
        raise DomainError("channel quadrature needs a half-range rule")
    return rule


def cond_pdf_y_given_x(y, x):
    """Density of the output magnitude given input magnitude x."""
    _check_nonneg("y", y)
    _check_nonneg("x", x)
    var = 1.0 + np.square(x)
    out = 2.0 * np.asarray(y) / var * np.exp(-np.square(y) / var)
    return float(out) if np.ndim(out) == 0 else out


def rayleigh_input_pdf(x, p):
    """Rayleigh density of the input magnitude with mean power omega_sq."""
    s = _power(p)
    if s == 0.0:
        raise DomainError("zero input power is a point mass at the origin")
    _check_nonneg("x", x)
    out = 2.0 * np.asarray(x) / s * np.exp(-np.square(x) / s)
    return float(out) if np.ndim(out) == 0 else out


def output_pdf(y, p, rule: QuadratureRule | None = None):
    """Output magnitude density for a Gaussian input, by half-range quadrature.

    Substituting x = sqrt(omega_sq) t in the mixture integral turns the
    Rayleigh input density into 2 t exp(-t**2), so p_Y is a finite mixture of
    Rayleigh densities with powers 1 + omega_sq v_j**2 and mixing weights
    2 w_j v_j.
    """
    s = _power(p)
    _check_nonneg("y", y)
    y = np.asarray(y, dtype=float)
    if s == 0.0:
        out = 2.0 * y * np.exp(-y * y)
    else:
        rule = _default_rule(rule)
        v, w = rule.nodes, rule.weights
        var = 1.0 + s * v * v
        yy = y[..., None]
        out = np.sum(2.0 * w * v * (2.0 * yy / var) * np.exp(-yy * yy / var), axis=-1)
    return float(out) if out.ndim == 0 else out


def c_rcsi(p) -> float:
    """Ergodic capacity with perfect receiver CSI, -exp(1/snr) Ei(-1/snr)."""
    s = _power(p)
    if s == 0.0:
        return 0.0
    return scaled_e1(1.0 / s)


def c_cnf(p) -> float:
    """Capacity of the non-fading complex Gaussian channel, log(1 + snr)."""
    return math.log1p(_power(p))


def h_y_given_x(p) -> float:
    """Conditional output entropy for a Gaussian input.

    Equals half the CSI capacity plus the unit Rayleigh entropy.
    """
    return 0.5 * c_rcsi(p) + RAYLEIGH_ENTROPY


def h_y(p, outer: QuadratureRule | None = None, inner: QuadratureRule | None = None) -> float:
    """Output entropy for a Gaussian input as a double quadrature sum.

    The outer rule (order q) turns p_Y into a mixture of Rayleigh densities.
    For the l-th component the output integral is rescaled by
    y = u sqrt(A_l), with A_j = 1 + omega_sq v_j**2, which gives

        h(Y) = -sum_l 4 w_l v_l int_0^inf u exp(-u**2) log S_l(u) du,
        S_l(u) = u sum_j 4 w_j v_j sqrt(A_l) / A_j exp(-u**2 A_l / A_j).

    The ``log u`` part of ``log S_l`` is integrated exactly
    (int_0^inf u exp(-u**2) log u du = -gamma/4) and the smooth remainder
    with the inner rule (order r). Applying the inner rule to ``log S_l``
    directly leaves an error near 1e-4 nats from the log singularity at u=0.
    """
    s = _power(p)
    if s == 0.0:
        return RAYLEIGH_ENTROPY
    outer = _default_rule(outer)
    inner = _default_rule(inner if inner is not None else outer)
    v, w = outer.nodes, outer.weights
    u, wu = inner.nodes, inner.weights
    var = 1.0 + s * v * v
    # log of the j-coefficient for component l: shape (l, j)
    log_coef = np.log(4.0 * w * v)[None, :] + 0.5 * np.log(var)[:, None] - np.log(var)[None, :]
    ratio = var[:, None] / var[None, :]
    # smooth part of log S_l(u_i): shape (l, i)
    smooth = logsumexp(log_coef[:, None, :] - (u * u)[None, :, None] * ratio[:, None, :], axis=-1)
    per_component = smooth @ (wu * u) - 0.25 * EULER_GAMMA
    return float(-np.dot(4.0 * w * v, per_component))


def mutual_information(p, outer: QuadratureRule | None = None, inner: QuadratureRule | None = None) -> float:
    value, _ = _mutual_information(_power(p), outer, inner)
    return value


def _clamp(value, what="mutual information"):
    if value >= 0.0:
        return value, False
    if value > -CLAMP_LIMIT:
        warnings.warn(f"{what} {value:.3e} clamped to 0", ClampWarning, stacklevel=3)
        log.warning("%s %.3e clamped to 0", what, value)
        return 0.0, True
    raise NumericalError(f"{what} is negative ({value:.3e}); quadrature is unreliable here")


def _mutual_information(s, outer, inner):
    if s == 0.0:
        return 0.0, False
    return _clamp(h_y(s, outer, inner) - h_y_given_x(s))


def lower_bound(p) -> float:
    """Analytical lower bound (C_cnf - C_rcsi) / 2 on the Gaussian-input MI."""
    s = _power(p)
    return 0.5 * (c_cnf(s) - c_rcsi(s))


def nonfading_entropies(p):
    """(h(Y), h(Y|X)) of the non-fading complex Gaussian channel, one dimension."""
    s = _power(p)
    return 0.5 * (LOG_PI_E + math.log1p(s)), 0.5 * LOG_PI_E


def entropy_gap(p, outer: QuadratureRule | None = None, inner: QuadratureRule | None = None) -> float:
    """G = h_nf(Y) - h(Y), the entropy lost to fading at the output."""
    s = _power(p)
    return nonfading_entropies(s)[0] - h_y(s, outer, inner)


def asymptotic_L() -> float:
    """High-SNR limit of (log(pi e (1 + snr)) - C_rcsi) / 2, i.e. (gamma + log(pi e)) / 2."""
    return 0.5 * (EULER_GAMMA + LOG_PI_E)


def high_snr_bracket(xi: float) -> float:
    """(log(pi e (1 + xi)) + exp(1/xi) Ei(-1/xi)) / 2, which tends to asymptotic_L()."""
    return 0.5 * (LOG_PI_E + math.log1p(xi) - c_rcsi(xi))


def gap_at_zero() -> float:
    return 0.5 * LOG_PI_E + LOG_TWO - (1.0 + 0.5 * EULER_GAMMA)


def gap_high_snr_floor() -> float:
    """log(2 sqrt(pi e)) - (1 + gamma), the limiting lower bound on G."""
    return LOG_TWO + 0.5 * LOG_PI_E - (1.0 + EULER_GAMMA)


def info_point(p, outer: QuadratureRule | None = None, inner: QuadratureRule | None = None) -> InfoPoint:
    params = p if isinstance(p, ChannelParams) else ChannelParams(p)
    s = params.omega_sq
    hy = h_y(s, outer, inner)
    hyx = h_y_given_x(s)
    if s == 0.0:
        mi, clamped = 0.0, False
    else:
        mi, clamped = _clamp(hy - hyx)
    return InfoPoint(
        omega_sq=s,
        snr_db=params.snr_db,
        h_y=hy,
        h_y_given_x=hyx,
        mutual_info=mi,
        c_rcsi=c_rcsi(s),
        c_cnf=c_cnf(s),
        lower_bound=lower_bound(s),
        gap_g=nonfading_entropies(s)[0] - hy,
        clamped=clamped,
    )
