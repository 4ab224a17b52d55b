"""Brute-force estimates used to validate the closed forms.

Nothing here touches the Gauss-Hermite machinery except the Monte Carlo
estimator, which needs some p_Y and uses the quadrature mixture by design.
"""
from __future__ import annotations

import math

import numpy as np

from . import channel
from .errors import DomainError
from .quadrature import OracleEstimate, adaptive_integrate, half_range_hermite_rule

# Inner integrals run ten times tighter than the outer one.
INNER_TOL_RATIO = 10.0
MC_CHUNK = 100_000


def _rayleigh_mix_integrand(y, s):
    var_bound = 2.0 / (math.e * y) if y > 0 else math.inf
    peak = min(2.0 * y, var_bound)

    def integrand(x):
        a = 1.0 + x * x
        return (2.0 * x / s) * math.exp(-x * x / s) * (2.0 * y / a) * math.exp(-y * y / a)

    def envelope(x):
        return (2.0 * x / s) * math.exp(-x * x / s) * peak

    return integrand, envelope


def numeric_output_pdf(y: float, p, tol: float = 1e-12) -> OracleEstimate:
    """p_Y(y) by direct adaptive integration over the Rayleigh input."""
    s = channel._power(p)
    if y < 0:
        raise DomainError("y must be >= 0")
    if s == 0.0:
        return OracleEstimate(2.0 * y * math.exp(-y * y), 0.0, 1)
    if y == 0.0:
        return OracleEstimate(0.0, 0.0, 1)
    f, env = _rayleigh_mix_integrand(y, s)
    root = math.sqrt(s)
    return adaptive_integrate(f, 0.0, math.inf, tol, points=(min(y, root), root), envelope=env)


def output_envelope(y: float, s: float) -> float:
    """Upper bound on p_Y(y).

    With w = x**2 / s, p_Y(y) = E_w[(2y/a) exp(-y**2/a)], a = 1 + s w. Bounding
    the expectation by 2 sup_w exp(-w/2)(...) and minimizing the exponent
    over a gives 4 y exp(1/(2s) - y sqrt(2/s)).
    """
    if s == 0.0:
        return 2.0 * y * math.exp(-y * y)
    return 4.0 * y * math.exp(min(0.5 / s - y * math.sqrt(2.0 / s), 700.0))


def _neg_plogp(p):
    return -p * math.log(p) if p > 0.0 else 0.0


def numeric_h_y(p, tol: float = 1e-9, threshold: float | None = None) -> OracleEstimate:
    """h(Y) for a Gaussian input by nested adaptive integration.

    The outer range is truncated where the analytic envelope of -p log p
    drops below `threshold` (default tol/100). The reported error bound adds
    the outer error estimate to the inner errors propagated through the
    derivative of -p log p.
    """
    s = channel._power(p)
    inner_tol = tol / INNER_TOL_RATIO
    propagated = []

    def integrand(y):
        est = numeric_output_pdf(y, s, inner_tol)
        if est.value > 0.0:
            propagated.append((y, est.error_bound * abs(1.0 + math.log(est.value))))
        integrand.evals += est.evaluations
        return _neg_plogp(est.value)

    integrand.evals = 0

    def envelope(y):
        e = output_envelope(y, s)
        return _neg_plogp(e) if e < 1.0 / math.e else 1.0

    scale = math.sqrt(1.0 + s)
    points = (0.01, 0.1, 1.0, scale, 10.0 * scale)
    outer = adaptive_integrate(integrand, 0.0, math.inf, tol, points=points,
                               envelope=envelope, threshold=threshold)
    inner_err = 0.0
    if propagated:
        propagated.sort()
        ys = np.array([t for t, _ in propagated])
        es = np.array([e for _, e in propagated])
        inner_err = float(np.trapezoid(es, ys)) if len(ys) > 1 else float(es[0])
    return OracleEstimate(outer.value, outer.error_bound + inner_err, outer.evaluations + integrand.evals)


def numeric_output_mass(p, tol: float = 1e-10, quadrature: bool = False) -> OracleEstimate:
    """int_0^inf p_Y(y) dy, with p_Y from the quadrature mixture or by brute force."""
    s = channel._power(p)
    if quadrature:
        rule = half_range_hermite_rule(channel.DEFAULT_ORDER)
        f = lambda y: channel.output_pdf(y, s, rule)
    else:
        f = lambda y: numeric_output_pdf(y, s, tol / INNER_TOL_RATIO).value
    scale = math.sqrt(1.0 + s)
    return adaptive_integrate(f, 0.0, math.inf, tol, points=(1.0, scale, 10.0 * scale),
                              envelope=lambda y: output_envelope(y, s))


def numeric_h_y_given_x(p, tol: float = 1e-10) -> OracleEstimate:
    """h(Y|X) from the integral form, int (x/s) exp(-x**2/s) log(1+x**2) dx + const."""
    s = channel._power(p)
    if s == 0.0:
        return OracleEstimate(channel.RAYLEIGH_ENTROPY, 0.0, 0)
    f = lambda x: (x / s) * math.exp(-x * x / s) * math.log1p(x * x)
    root = math.sqrt(s)
    est = adaptive_integrate(f, 0.0, math.inf, tol, points=(min(1.0, root), root, 10.0 * root))
    return OracleEstimate(est.value + channel.RAYLEIGH_ENTROPY, est.error_bound, est.evaluations)


def mc_mutual_info(p, n: int = 1_000_000, seed: int = 42) -> OracleEstimate:
    """Monte Carlo estimate of I(X;Y) for a Gaussian input.

    Samples use numpy's PCG64 generator seeded with `seed`, so a given
    (seed, n) always produces the same estimate. Input magnitudes are drawn
    by inverting the Rayleigh CDF and outputs given the input likewise. The
    reported error bound is one standard error.
    """
    s = channel._power(p)
    if s == 0.0:
        raise DomainError("mutual information is identically zero at zero power")
    if n < 1000:
        raise DomainError("need at least 1000 samples")
    rng = np.random.Generator(np.random.PCG64(seed))
    rule = half_range_hermite_rule(channel.DEFAULT_ORDER)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        m = min(MC_CHUNK, n - done)
        # 1 - U lies in (0, 1], so the logarithms stay finite
        x = math.sqrt(s) * np.sqrt(-np.log1p(-rng.random(m)))
        y = np.sqrt(1.0 + x * x) * np.sqrt(-np.log1p(-rng.random(m)))
        y = np.maximum(y, np.finfo(float).tiny)
        var = 1.0 + x * x
        log_cond = np.log(2.0 * y / var) - y * y / var
        sample = log_cond - np.log(channel.output_pdf(y, s, rule))
        total += float(np.sum(sample))
        total_sq += float(np.sum(sample * sample))
        done += m
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return OracleEstimate(mean, math.sqrt(var / (n - 1)), n)
