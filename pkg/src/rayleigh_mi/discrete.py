"""Mutual information of discrete input magnitudes and the two-point optimizer.

The comparison curve uses inputs with one mass point at the origin and one at
amplitude x1 > 0, optimized over (x1, p) under the average power budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import RAYLEIGH_ENTROPY, _clamp
from .errors import ConvergenceError, DomainError
from .quadrature import adaptive_integrate

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GRID_AMPLITUDES = 41
GRID_FRACTIONS = 12


@dataclass(frozen=True)
class DiscreteInput:
    amplitudes: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        amps = tuple(float(a) for a in self.amplitudes)
        probs = tuple(float(q) for q in self.probabilities)
        if not amps or len(amps) != len(probs):
            raise DomainError("need matching, non-empty amplitude and probability lists")
        if any(not math.isfinite(a) or a < 0 for a in amps):
            raise DomainError("amplitudes must be finite and >= 0")
        if any(b <= a for a, b in zip(amps, amps[1:])):
            raise DomainError("amplitudes must be strictly increasing")
        if any(not 0.0 <= q <= 1.0 for q in probs) or abs(sum(probs) - 1.0) > 1e-12:
            raise DomainError("probabilities must lie in [0, 1] and sum to 1")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float]]) -> "DiscreteInput":
        amps, probs = zip(*points)
        return cls(amps, probs)

    @classmethod
    def on_off(cls, amplitude: float, prob: float) -> "DiscreteInput":
        if prob <= 0.0 or amplitude == 0.0:
            return cls((0.0,), (1.0,))
        if prob >= 1.0:
            return cls((amplitude,), (1.0,))
        return cls((0.0, amplitude), (1.0 - prob, prob))

    @property
    def power(self) -> float:
        return sum(q * a * a for a, q in zip(self.amplitudes, self.probabilities))

    @property
    def points(self):
        return list(zip(self.amplitudes, self.probabilities))


def discrete_mi(d: DiscreteInput, tol: float = 1e-10) -> float:
    """I(X;Y) for a discrete input magnitude distribution, in nats."""
    live = [(a, q) for a, q in d.points if q > 0.0]
    if len(live) == 1:
        return 0.0
    var = np.array([1.0 + a * a for a, _ in live])
    mix = np.array([q for _, q in live]) * 2.0 / var
    neg_inv = -1.0 / var

    def integrand(y):
        p = y * float(np.dot(mix, np.exp(y * y * neg_inv)))
        return -p * math.log(p) if p > 0.0 else 0.0

    widest = math.sqrt(var.max())
    points = sorted({0.1, 1.0, 5.0, *(math.sqrt(v) for v in var), 10.0 * widest})
    # -p log p <= sqrt(p) and p_Y(y) <= 2 y exp(-y**2 / var_max)
    envelope = lambda y: math.sqrt(2.0 * y) * math.exp(-0.5 * y * y / var.max())
    h_y = adaptive_integrate(integrand, 0.0, math.inf, tol, points=points, envelope=envelope).value
    h_y_given_x = 0.5 * sum(q * math.log(v) for (_, q), v in zip(live, var)) + RAYLEIGH_ENTROPY
    value, _ = _clamp(h_y - h_y_given_x, "discrete mutual information")
    return value


def golden_section_max(f, lo, hi, tol):
    """Maximize a unimodal f on [lo, hi]; stops once the bracket is below tol."""
    if not hi > lo:
        raise ConvergenceError("empty bracket for golden-section search")
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceError("golden-section search did not shrink its bracket")
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    best_f, best_x = max(candidates)
    return best_x, best_f


def two_point_capacity(power_budget: float, tol: float = 1e-9):
    """Best on-off input {(0, 1-p), (x1, p)} with p x1**2 <= power_budget.

    Candidates are parametrized by log10(x1) and theta in (0, 1] with
    p = theta * min(1, budget / x1**2); theta = 1 with x1 >= sqrt(budget) is
    the active power constraint. The active branch is searched on a grid and
    refined by golden section in log10(x1). Interior points (theta < 1, and
    amplitudes below sqrt(budget)) are probed on a coarse grid; if one beats
    the active branch by more than `tol`, it is refined by alternating
    golden-section searches instead.

    Returns the optimizing DiscreteInput and its mutual information.
    """
    budget = float(power_budget)
    if not math.isfinite(budget) or budget <= 0.0:
        raise DomainError(f"power budget must be positive and finite, got {power_budget!r}")
    mi_tol = min(1e-10, tol)
    cache = {}

    def make(log_amp, theta):
        amp = 10.0 ** log_amp
        prob = theta * min(1.0, budget / (amp * amp))
        return DiscreteInput.on_off(amp, prob)

    def objective(log_amp, theta=1.0):
        key = (log_amp, theta)
        if key not in cache:
            cache[key] = discrete_mi(make(log_amp, theta), mi_tol)
        return cache[key]

    centre = 0.5 * math.log10(budget)
    lo_amp, hi_amp = centre - 2.0, centre + 2.0

    active_grid = np.linspace(centre, hi_amp, GRID_AMPLITUDES)
    active_best = max((objective(la), la) for la in active_grid)
    step = active_grid[1] - active_grid[0]
    log_amp, value = golden_section_max(
        objective, max(centre, active_best[1] - step), min(hi_amp, active_best[1] + step), 1e-7)
    theta = 1.0

    probe = [(objective(la, th), la, th)
             for la in np.linspace(lo_amp, hi_amp, GRID_AMPLITUDES)
             for th in np.linspace(1.0 / GRID_FRACTIONS, 1.0, GRID_FRACTIONS)[:-1]]
    probe += [(objective(la), la, 1.0) for la in np.linspace(lo_amp, centre, GRID_AMPLITUDES)[:-1]]
    interior = max(probe)
    if interior[0] > value + tol:
        value, log_amp, theta = interior
        amp_step = 4.0 / (GRID_AMPLITUDES - 1)
        theta_step = 1.0 / GRID_FRACTIONS
        for _ in range(100):
            previous = value
            log_amp, value = golden_section_max(
                lambda la: objective(la, theta),
                max(lo_amp, log_amp - amp_step), min(hi_amp, log_amp + amp_step), 1e-7)
            theta, value = golden_section_max(
                lambda th: objective(log_amp, th),
                max(1e-6, theta - theta_step), min(1.0, theta + theta_step), 1e-7)
            if value - previous < tol:
                break
        else:
            raise ConvergenceError("interior two-point refinement did not settle")
    return make(log_amp, theta), value
