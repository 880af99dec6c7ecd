"""Optimal discrimination time for a pair of Pauli dynamical maps.

The error probability at time ``t`` is obtained by composing
:func:`~paulidisc.pauli_dynamics.channel_probabilities` with the closed-form
error probabilities. :func:`minimize_error` then scans a geometric time grid,
refines every bracketed local minimum with golden-section search and a
slope-sign bisection, then compares
the best finite value with the exact stationary error, reporting
:data:`AT_INFINITY` when waiting forever is strictly better.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .discrimination import Priors, error_prob_ent, error_prob_no_ent, r_vector
from .pauli_dynamics import (
    RatesLike,
    as_rates,
    channel_probabilities,
    rate_sums,
    stationary_probabilities,
)

__all__ = [
    "AT_INFINITY",
    "StrategyMode",
    "OptimizerConfig",
    "LocalMinimum",
    "OptimizationResult",
    "ErrorCurve",
    "error_at",
    "stationary_error",
    "curve",
    "golden_section",
    "bisect",
    "minimize_error",
]

AT_INFINITY = math.inf
TIE_TOL = 1e-10
# grid minima shallower than this are rounding noise, not structure
NOISE_FLOOR = 1e-14


class StrategyMode(str, Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"

    @classmethod
    def coerce(cls, mode) -> "StrategyMode":
        return mode if isinstance(mode, cls) else cls(str(mode).lower())


def _error_from_r(r, mode: StrategyMode):
    if mode is StrategyMode.ENTANGLED:
        return error_prob_ent(r)
    return error_prob_no_ent(r)


def error_at(rates1: RatesLike, rates2: RatesLike, priors, t, mode):
    """Minimum error probability for discriminating at time ``t`` (vectorised over ``t``)."""
    mode = StrategyMode.coerce(mode)
    r = r_vector(priors, channel_probabilities(rates1, t), channel_probabilities(rates2, t))
    return _error_from_r(r, mode)


def stationary_error(rates1: RatesLike, rates2: RatesLike, priors, mode) -> float:
    """Error probability in the ``t -> infinity`` limit, from the exact stationary channels."""
    r = r_vector(priors, stationary_probabilities(rates1), stationary_probabilities(rates2))
    return _error_from_r(r, StrategyMode.coerce(mode))


@dataclass(frozen=True)
class ErrorCurve:
    times: np.ndarray
    p_no_ent: np.ndarray
    p_ent: np.ndarray

    def __len__(self):
        return len(self.times)


def curve(rates1: RatesLike, rates2: RatesLike, priors, t_grid) -> ErrorCurve:
    """Both error probabilities on a strictly increasing grid of times ``t >= 0``."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-D array")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ValueError("time grid must be finite and nonnegative")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly increasing")
    r = r_vector(priors, channel_probabilities(rates1, t), channel_probabilities(rates2, t))
    return ErrorCurve(times=t, p_no_ent=error_prob_no_ent(r), p_ent=error_prob_ent(r))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                   max_iter: int = 500) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    Stops once the bracket is shorter than ``tol * (1 + |x|)``. Derivative-free,
    so kinks at the minimiser are fine.
    """
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * (1.0 + abs(0.5 * (a + b))):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc <= fd else (d, fd)
    return x, fx


def bisect(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
           max_iter: int = 200) -> float:
    """Root of ``f`` in ``[a, b]`` where ``f(a)`` and ``f(b)`` differ in sign."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise ValueError(f"f does not change sign on [{a}, {b}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if b - a <= tol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _slope(f: Callable[[float], float], t: float) -> float:
    # central difference; the step balances rounding against truncation
    h = 1e-5 * (1.0 + t)
    return (f(t + h) - f(t - h)) / (2.0 * h)


def _polish(f: Callable[[float], float], t0: float, a: float, b: float) -> float:
    """Sharpen a golden-section minimiser by bisecting on the slope sign.

    Comparing function values pins a smooth minimum only to about sqrt(eps)
    relative, which is coarse when the curve is very flat. The slope changes
    sign at the minimum and stays resolvable much closer to it.
    """
    lo, hi = max(a, t0 - 1e-3 * (1.0 + t0)), min(b, t0 + 1e-3 * (1.0 + t0))
    if lo - 1e-5 * (1.0 + lo) <= 0.0:
        return t0
    if not (_slope(f, lo) < 0.0 < _slope(f, hi)):
        return t0
    for _ in range(200):
        if hi - lo <= 1e-14 * (1.0 + lo):
            break
        m = 0.5 * (lo + hi)
        if _slope(f, m) < 0.0:
            lo = m
        else:
            hi = m
    t = 0.5 * (lo + hi)
    # never trade a lower error for a nicer slope
    return t if f(t) <= f(t0) + 4 * np.finfo(float).eps else t0


@dataclass(frozen=True)
class OptimizerConfig:
    t_max_factor: float = 30.0
    grid_points: int = 2000
    refine_tol: float = 1e-10
    # smallest grid time, in units of the fastest decay time
    t_min_factor: float = 1e-4


class LocalMinimum(NamedTuple):
    t: float
    p: float
    bracket: tuple[float, float]


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of :func:`minimize_error`.

    ``t_star`` is :data:`AT_INFINITY` when the infimum is only reached in the
    stationary limit, and ``nan`` for degenerate (identical) processes.
    ``minima`` holds every local minimum tied with the optimum;
    ``local_minima`` holds all refined local minima sorted by ``p``.
    """

    t_star: float
    p_star: float
    mode: StrategyMode
    method: str = "numeric"
    bracket: tuple[float, float] | None = None
    minima: tuple[LocalMinimum, ...] = ()
    local_minima: tuple[LocalMinimum, ...] = ()
    p_stationary: float = 0.5
    degenerate: bool = False
    grid: tuple[float, float] = field(default=(0.0, 0.0))

    @property
    def at_infinity(self) -> bool:
        return self.t_star == AT_INFINITY

    @property
    def t_stars(self) -> tuple[float, ...]:
        if self.minima:
            return tuple(m.t for m in self.minima)
        return (self.t_star,)


def _time_window(r1, r2, config: OptimizerConfig) -> tuple[float, float]:
    exps = 2.0 * np.concatenate([rate_sums(r1), rate_sums(r2)])
    positive = exps[exps > 0]
    t_hi = config.t_max_factor / positive.min()
    t_lo = config.t_min_factor / positive.max()
    return t_lo, t_hi


def _grid_minima(f: np.ndarray, noise: float) -> tuple[list[tuple[int, int]], bool]:
    """Interior local minima of a sampled curve as ``(first, last)`` index runs.

    Consecutive equal samples are merged into one run. Also reports whether the
    final run is lower than its predecessor, i.e. the curve is still decreasing
    at the end of the grid.
    """
    starts = np.flatnonzero(np.concatenate([[True], f[1:] != f[:-1]]))
    ends = np.concatenate([starts[1:] - 1, [len(f) - 1]])
    vals = f[starts]
    found = []
    for j in range(1, len(starts) - 1):
        if vals[j] < vals[j - 1] and vals[j] < vals[j + 1]:
            s, e = starts[j], ends[j]
            if vals[j] < f[:s].max() - noise and vals[j] < f[e + 1:].max() - noise:
                found.append((int(s), int(e)))
    tail_decreasing = len(vals) > 1 and vals[-1] < vals[-2]
    return found, tail_decreasing


def minimize_error(rates1: RatesLike, rates2: RatesLike, priors=None, mode="entangled",
                   config: OptimizerConfig | None = None) -> OptimizationResult:
    """Infimum over ``t > 0`` of the discrimination error.

    Every interior local minimum of the sampled curve is refined by golden
    section and then by bisection on the slope sign; the best one is compared with the exact stationary error and
    :data:`AT_INFINITY` is reported when the stationary value is lower by more
    than ``config.refine_tol`` (this includes curves that decrease all the
    way to the end of the grid).
    """
    config = config or OptimizerConfig()
    mode = StrategyMode.coerce(mode)
    priors = Priors.coerce(priors)
    r1, r2 = as_rates(rates1), as_rates(rates2)
    p_inf = float(stationary_error(r1, r2, priors, mode))

    if r1 == r2:
        # identical processes: the error never moves away from its t=0 value
        return OptimizationResult(
            t_star=math.nan, p_star=float(error_at(r1, r2, priors, 0.0, mode)), mode=mode,
            p_stationary=p_inf, degenerate=True,
        )

    t_lo, t_hi = _time_window(r1, r2, config)
    times = np.geomspace(t_lo, t_hi, config.grid_points)
    values = np.asarray(error_at(r1, r2, priors, times, mode))

    def f(t):
        return float(error_at(r1, r2, priors, t, mode))

    found, _ = _grid_minima(values, NOISE_FLOOR)
    minima = []
    for s, e in found:
        a, b = times[s - 1], times[e + 1]
        t, _ = golden_section(f, a, b, tol=config.refine_tol)
        t = _polish(f, t, a, b)
        minima.append(LocalMinimum(float(t), f(t), (float(a), float(b))))
    minima.sort(key=lambda m: (m.p, m.t))

    best = minima[0].p if minima else math.inf
    if p_inf < best - config.refine_tol:
        return OptimizationResult(
            t_star=AT_INFINITY, p_star=p_inf, mode=mode, local_minima=tuple(minima),
            p_stationary=p_inf, grid=(t_lo, t_hi),
        )
    ties = tuple(sorted((m for m in minima if m.p <= best + TIE_TOL), key=lambda m: m.t))
    top = minima[0]
    return OptimizationResult(
        t_star=top.t, p_star=top.p, mode=mode, bracket=top.bracket, minima=ties,
        local_minima=tuple(minima), p_stationary=p_inf, grid=(t_lo, t_hi),
    )
