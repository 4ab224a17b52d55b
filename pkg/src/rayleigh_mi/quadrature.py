"""Gaussian rules for the weight exp(-t**2) and an adaptive integrator.

The half-range rule (weight exp(-t**2) on [0, inf)) has no classical closed
form, so it is built from its moments: Cholesky of the Hankel moment matrix
gives the three-term recurrence, and the Golub-Welsch eigenproblem on the
resulting Jacobi matrix gives nodes and weights. The full-range rule uses the
known Hermite recurrence and exists mainly to cross-check the construction.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath as mp
import numpy as np
from scipy import integrate, linalg

from .errors import ConvergenceError, DomainError, EvaluationError
from .special import ln_gamma_half_integer

HALF_RANGE_MAX_ORDER = 15
FULL_RANGE_MAX_ORDER = 30
MAX_EVALUATIONS = 1_000_000
MOMENT_DPS = 50


class Domain(str, enum.Enum):
    HALF_RANGE = "half_range"
    FULL_RANGE = "full_range"


@dataclass(frozen=True)
class QuadratureRule:
    domain: Domain
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for arr in (self.nodes, self.weights):
            arr.flags.writeable = False


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    error_bound: float
    evaluations: int


def half_range_moment(k: int) -> float:
    """int_0^inf t**k exp(-t**2) dt = Gamma((k + 1) / 2) / 2."""
    return 0.5 * math.exp(ln_gamma_half_integer(k))


def half_range_moments_mp(count: int):
    """The first `count` half-range moments at the current mpmath precision.

    mu_0 = sqrt(pi)/2, mu_1 = 1/2 and mu_{k+2} = (k+1)/2 * mu_k.
    """
    mu = [mp.sqrt(mp.pi) / 2, mp.mpf(1) / 2]
    for k in range(count - 2):
        mu.append(mp.mpf(k + 1) / 2 * mu[k])
    return mu[:count]


def _check_order(q, cap):
    if isinstance(q, bool) or int(q) != q or not 1 <= q <= cap:
        raise DomainError(f"rule order must be an integer in [1, {cap}], got {q!r}")
    return int(q)


def recurrence_from_moments(moments, q: int, dps: int = MOMENT_DPS):
    """Recurrence coefficients (alpha, beta) of the monic orthogonal polynomials.

    Uses the Cholesky factor R of the (q+1)x(q+1) Hankel matrix of moments
    (Golub and Welsch, 1969); beta[0] is the zeroth moment. The Hankel matrix
    is badly conditioned (about 1e19 at q=15), so the factorization runs in
    mpmath at `dps` digits and only the coefficients are rounded to float.
    """
    if len(moments) < 2 * q + 1:
        raise DomainError(f"need {2 * q + 1} moments for order {q}, got {len(moments)}")
    with mp.workdps(dps):
        mu = [mp.mpf(m) for m in moments]
        hankel = mp.matrix(q + 1, q + 1)
        for i in range(q + 1):
            for j in range(q + 1):
                hankel[i, j] = mu[i + j]
        try:
            r = mp.cholesky(hankel).T
        except (ValueError, ZeroDivisionError) as exc:
            raise ConvergenceError(
                f"Hankel moment matrix lost positive definiteness at order {q}"
            ) from exc
        ratio = [r[k, k + 1] / r[k, k] for k in range(q)]
        alpha = [ratio[0]] + [ratio[k] - ratio[k - 1] for k in range(1, q)]
        beta = [mu[0]] + [(r[k, k] / r[k - 1, k - 1]) ** 2 for k in range(1, q)]
        return (
            np.array([float(a) for a in alpha]),
            np.array([float(b) for b in beta]),
        )


def gauss_rule_from_recurrence(alpha, beta):
    """Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
    from the first eigenvector components scaled by the zeroth moment."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.size == 1:
        return alpha.copy(), beta[:1].copy()
    nodes, vecs = linalg.eigh_tridiagonal(alpha, np.sqrt(beta[1:]))
    weights = beta[0] * vecs[0, :] ** 2
    return nodes, weights


@lru_cache(maxsize=None)
def half_range_hermite_rule(q: int) -> QuadratureRule:
    """q-point Gauss rule for int_0^inf exp(-t**2) f(t) dt."""
    q = _check_order(q, HALF_RANGE_MAX_ORDER)
    if q == 1:
        # one-point rule: w = mu0, w v = mu1
        nodes = np.array([half_range_moment(1) / half_range_moment(0)])
        weights = np.array([half_range_moment(0)])
    else:
        with mp.workdps(MOMENT_DPS):
            mu = half_range_moments_mp(2 * q + 1)
            coeffs = recurrence_from_moments(mu, q)
        nodes, weights = gauss_rule_from_recurrence(*coeffs)
    if np.any(nodes <= 0.0) or np.any(weights <= 0.0):
        raise ConvergenceError(f"half-range rule of order {q} has invalid nodes or weights")
    return QuadratureRule(Domain.HALF_RANGE, q, nodes, weights)


@lru_cache(maxsize=None)
def full_range_hermite_rule(q: int) -> QuadratureRule:
    """Standard q-point Gauss-Hermite rule on (-inf, inf)."""
    q = _check_order(q, FULL_RANGE_MAX_ORDER)
    alpha = np.zeros(q)
    beta = 0.5 * np.arange(q, dtype=float)
    beta[0] = math.sqrt(math.pi)
    nodes, weights = gauss_rule_from_recurrence(alpha, beta)
    # the middle node of an odd rule is zero by symmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(Domain.FULL_RANGE, q, nodes, weights)


def hermite_rule(q: int, domain: Domain | str = Domain.HALF_RANGE) -> QuadratureRule:
    domain = Domain(domain)
    if domain is Domain.HALF_RANGE:
        return half_range_hermite_rule(q)
    return full_range_hermite_rule(q)


def apply_rule(rule: QuadratureRule, f: Callable[[float], float]) -> float:
    values = np.array([f(float(t)) for t in rule.nodes], dtype=float)
    if not np.all(np.isfinite(values)):
        raise EvaluationError("integrand is not finite at a quadrature node")
    return float(np.dot(rule.weights, values))


def truncation_point(envelope, start, threshold, limit=1e8):
    """First point of a doubling sequence beyond `start` where envelope < threshold."""
    t = max(float(start), 1.0)
    while envelope(t) >= threshold:
        t *= 2.0
        if t > limit:
            raise ConvergenceError("envelope does not decay below the truncation threshold")
    return t


def adaptive_integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    points: Sequence[float] = (),
    envelope: Callable[[float], float] | None = None,
    threshold: float | None = None,
) -> OracleEstimate:
    """Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance.

    `b` may be ``math.inf``. Without an `envelope` the infinite piece is
    mapped onto a finite interval by QUADPACK. With an envelope (an upper
    bound on |f| in the tail), the range is cut where the envelope drops below
    `threshold` (default ``tol / 100``) and the tail is dropped.
    `points` split the range into pieces integrated separately.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if math.isinf(b) and envelope is not None:
        b = truncation_point(envelope, max([a, *points]), tol / 100.0 if threshold is None else threshold)
    edges = [a, *sorted(p for p in points if a < p < b), b]
    pieces = len(edges) - 1
    value = 0.0
    error = 0.0
    nevals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            res, err, info = integrate.quad(
                f, lo, hi, epsabs=tol / pieces, epsrel=0.0, limit=2000, full_output=1
            )[:3]
        if not (math.isfinite(res) and math.isfinite(err)):
            raise EvaluationError(f"integrand produced non-finite values on [{lo}, {hi}]")
        value += res
        error += err
        nevals += info["neval"]
        if nevals > MAX_EVALUATIONS:
            raise ConvergenceError(f"exceeded {MAX_EVALUATIONS} integrand evaluations")
    if error > tol:
        raise ConvergenceError(
            f"adaptive integration reached error estimate {error:.3g} > tol {tol:.3g}"
        )
    return OracleEstimate(value, error, nevals)
