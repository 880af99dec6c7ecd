"""Closed-form optima for five families of Pauli dynamical maps.

Each family fixes the shape of both rate vectors and leaves two positive
rates ``g1`` and ``g2`` free (equal priors throughout):

=====================  ==================  ==================
kind                   process 1           process 2
=====================  ==================  ==================
same_axis_dephasing    (0, 0, g1)          (0, 0, g2)
orthogonal_dephasing   (0, 0, g1)          (g2, 0, 0)
coplanar               (g1, g1, 0)         (g2, g2, 0)
depolarising           (g1, g1, g1)        (g2, g2, g2)
depol_vs_dephasing     (g1, g1, g1)        (0, 0, g2)
=====================  ==================  ==================

The solvers here use only the analytic error curves of each family; they are
cross-checked against :func:`paulidisc.time_opt.minimize_error`, which knows
nothing about the families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli_dynamics import DecayRates
from .time_opt import AT_INFINITY, OptimizerConfig, StrategyMode, bisect, minimize_error

__all__ = [
    "KINDS",
    "DegenerateScenario",
    "ScenarioSpec",
    "ScenarioSolution",
    "ThresholdResult",
    "ratio_power",
    "solve_same_axis_dephasing",
    "solve_orthogonal_dephasing",
    "solve_coplanar",
    "solve_depolarising",
    "solve_depol_vs_dephasing",
    "solve",
    "coplanar_p_ent",
    "coplanar_p_no_ent",
    "depol_vs_dephasing_p_ent",
    "depol_vs_dephasing_p_no_ent",
    "advantage_predicate",
    "find_advantage_threshold",
    "closed_form_threshold",
]

KINDS = (
    "same_axis_dephasing",
    "orthogonal_dephasing",
    "coplanar",
    "depolarising",
    "depol_vs_dephasing",
)


class DegenerateScenario(ValueError):
    """The two processes coincide, so no discrimination time is defined."""


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    gamma1: float
    gamma2: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; expected one of {KINDS}")
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise ValueError("scenario rates must be strictly positive")
        if not (math.isfinite(self.gamma1) and math.isfinite(self.gamma2)):
            raise ValueError("scenario rates must be finite")

    @property
    def rates(self) -> tuple[DecayRates, DecayRates]:
        g1, g2 = self.gamma1, self.gamma2
        return {
            "same_axis_dephasing": (DecayRates((0, 0, g1)), DecayRates((0, 0, g2))),
            "orthogonal_dephasing": (DecayRates((0, 0, g1)), DecayRates((g2, 0, 0))),
            "coplanar": (DecayRates((g1, g1, 0)), DecayRates((g2, g2, 0))),
            "depolarising": (DecayRates((g1, g1, g1)), DecayRates((g2, g2, g2))),
            "depol_vs_dephasing": (DecayRates((g1, g1, g1)), DecayRates((0, 0, g2))),
        }[self.kind]


@dataclass(frozen=True)
class ScenarioSolution:
    kind: str
    gamma1: float
    gamma2: float
    t_star_no_ent: tuple[float, ...]
    p_star_no_ent: float
    t_star_ent: float
    p_star_ent: float
    advantage_regime: bool

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "t_star_no_ent": list(self.t_star_no_ent),
            "p_star_no_ent": self.p_star_no_ent,
            "t_star_ent": self.t_star_ent,
            "p_star_ent": self.p_star_ent,
            "advantage_regime": self.advantage_regime,
        }


def _require_distinct(g1: float, g2: float):
    if not (g1 > 0 and g2 > 0):
        raise ValueError("rates must be strictly positive")
    if g1 == g2:
        raise DegenerateScenario(f"identical rates g1 = g2 = {g1}: the processes coincide")


def ratio_power(g1: float, g2: float) -> float:
    """``(g1/g2) ** (g1/(g2 - g1)) * |g1/g2 - 1|``, the peak of ``|e^{-a t} - e^{-b t}|``
    for decay constants in ratio ``g1/g2``.
    """
    x = g1 / g2
    return x ** (g1 / (g2 - g1)) * abs(x - 1.0)


def solve_same_axis_dephasing(g1: float, g2: float) -> ScenarioSolution:
    """Two dephasing processes about the same axis: both strategies coincide."""
    _require_distinct(g1, g2)
    t = math.log(g1 / g2) / (2.0 * (g1 - g2))
    p = 0.5 - 0.25 * ratio_power(g1, g2)
    return ScenarioSolution("same_axis_dephasing", g1, g2, (t,), p, t, p, False)


def solve_orthogonal_dephasing(g1: float, g2: float) -> ScenarioSolution:
    """Dephasing about z versus about x.

    The error ``(1 + exp(-2 max(g1, g2) t)) / 4`` decreases for ever, so the
    infimum 1/4 is only reached at infinity, with or without entanglement.
    """
    if not (g1 > 0 and g2 > 0):
        raise ValueError("rates must be strictly positive")
    return ScenarioSolution(
        "orthogonal_dephasing", g1, g2, (AT_INFINITY,), 0.25, AT_INFINITY, 0.25, False
    )


def coplanar_p_no_ent(g1: float, g2: float, t):
    t = np.asarray(t, dtype=float)
    d2 = np.abs(np.exp(-2 * g1 * t) - np.exp(-2 * g2 * t))
    d4 = np.abs(np.exp(-4 * g1 * t) - np.exp(-4 * g2 * t))
    return 0.5 - 0.25 * np.maximum(d2, d4)


def coplanar_p_ent(g1: float, g2: float, t):
    t = np.asarray(t, dtype=float)
    d2 = np.abs(np.exp(-2 * g1 * t) - np.exp(-2 * g2 * t))
    d4 = np.abs(np.exp(-4 * g1 * t) - np.exp(-4 * g2 * t))
    return 0.5 - 0.25 * d2 - 0.125 * d4


def _coplanar_slope_sign(g1: float, g2: float, t: float) -> float:
    # d/dt p_ent is proportional to this with a t-independent sign
    return g1 * (math.exp(-4 * g1 * t) + math.exp(-2 * g1 * t)) - g2 * (
        math.exp(-4 * g2 * t) + math.exp(-2 * g2 * t)
    )


def solve_coplanar(g1: float, g2: float, tol: float = 1e-12) -> ScenarioSolution:
    """Two coplanar decays ``(g, g, 0)``.

    Separable inputs have two tied optima at ``kappa * ln(g1/g2) / (g1 - g2)``
    for ``kappa`` in (1/4, 1/2). With entanglement the unique optimum solves
    ``g1 (e^{-4 g1 t} + e^{-2 g1 t}) = g2 (e^{-4 g2 t} + e^{-2 g2 t})``, found
    here by bisection.
    """
    _require_distinct(g1, g2)
    base = math.log(g1 / g2) / (g1 - g2)
    t_sep = (0.25 * base, 0.5 * base)
    p_sep = 0.5 - 0.25 * ratio_power(g1, g2)

    def h(t):
        return _coplanar_slope_sign(g1, g2, t)

    # h(0) = 2 (g1 - g2); walk out until the sign flips
    lo, hi = 0.0, 0.5 / max(g1, g2)
    while np.sign(h(hi)) == np.sign(h(0.0)):
        lo, hi = hi, 2.0 * hi
        if hi > 1e6 / min(g1, g2):
            raise RuntimeError("no stationary point found for the entangled coplanar error")
    t_ent = bisect(h, lo, hi, tol=tol)
    p_ent = float(coplanar_p_ent(g1, g2, t_ent))
    return ScenarioSolution("coplanar", g1, g2, t_sep, p_sep, t_ent, p_ent, True)


def solve_depolarising(g1: float, g2: float) -> ScenarioSolution:
    """Two depolarising processes: both strategies peak at the same time."""
    _require_distinct(g1, g2)
    t = math.log(g1 / g2) / (4.0 * (g1 - g2))
    k = ratio_power(g1, g2)
    return ScenarioSolution("depolarising", g1, g2, (t,), 0.5 - 0.25 * k, t, 0.5 - 0.375 * k, True)


def depol_vs_dephasing_p_no_ent(g1: float, g2: float, t):
    t = np.asarray(t, dtype=float)
    e4 = np.exp(-4 * g1 * t)
    e2 = np.exp(-2 * g2 * t)
    return 0.5 - 0.25 * np.maximum(1 - e4, np.abs(e4 - e2))


def depol_vs_dephasing_p_ent(g1: float, g2: float, t):
    t = np.asarray(t, dtype=float)
    e4 = np.exp(-4 * g1 * t)
    e2 = np.exp(-2 * g2 * t)
    return (
        0.5
        - 0.125 * (1 - e4)
        - np.abs(1 - 3 * e4 + 2 * e2) / 16
        - np.abs(1 + e4 - 2 * e2) / 16
    )


def _depol_vs_dephasing_candidate(g1: float, g2: float) -> tuple[float, float, bool]:
    """Stationary point of ``(3 + 3 e^{-4 g1 t} - 2 e^{-2 g2 t}) / 8`` and whether it
    lies inside the region where that branch is the actual entangled error.
    """
    if 4 * g1 - 2 * g2 <= 0:
        return math.nan, math.nan, False
    t = math.log(3 * g1 / g2) / (4 * g1 - 2 * g2)
    p = 0.375 * (1 - (3 * g1 / g2) ** (2 * g1 / (g2 - 2 * g1)) * (2 * g1 / g2 - 1))
    inside = math.exp(-2 * g2 * t) >= (3 * math.exp(-4 * g1 * t) + 1) / 2
    return t, p, inside


def solve_depol_vs_dephasing(g1: float, g2: float) -> ScenarioSolution:
    """Depolarising ``(g1, g1, g1)`` versus dephasing ``(0, 0, g2)``.

    Separable strategies always have to wait for the stationary state (error
    1/4). Entanglement beats 1/4 at a finite time only when ``g2/g1`` is below
    roughly 0.3786.
    """
    if not (g1 > 0 and g2 > 0):
        raise ValueError("rates must be strictly positive")
    t, p, inside = _depol_vs_dephasing_candidate(g1, g2)
    if inside and p < 0.25:
        return ScenarioSolution("depol_vs_dephasing", g1, g2, (AT_INFINITY,), 0.25, t, p, True)
    return ScenarioSolution(
        "depol_vs_dephasing", g1, g2, (AT_INFINITY,), 0.25, AT_INFINITY, 0.25, False
    )


_SOLVERS = {
    "same_axis_dephasing": solve_same_axis_dephasing,
    "orthogonal_dephasing": solve_orthogonal_dephasing,
    "coplanar": solve_coplanar,
    "depolarising": solve_depolarising,
    "depol_vs_dephasing": solve_depol_vs_dephasing,
}


def solve(kind: str, g1: float, g2: float) -> ScenarioSolution:
    ScenarioSpec(kind, g1, g2)
    return _SOLVERS[kind](g1, g2)


@dataclass(frozen=True)
class ThresholdResult:
    ratio: float
    bracket: tuple[float, float]
    iterations: int
    trace: tuple[tuple[float, bool], ...]


def advantage_predicate(ratio: float, refine_tol: float = 1e-12) -> bool:
    """Does entanglement push the depolarising-vs-dephasing error below 1/4 at some finite time?

    Evaluated numerically with ``g1 = 1`` and ``g2 = ratio``.
    """
    res = minimize_error(
        (1.0, 1.0, 1.0), (0.0, 0.0, ratio), None, StrategyMode.ENTANGLED,
        OptimizerConfig(refine_tol=refine_tol),
    )
    return (not res.at_infinity) and res.p_star < 0.25


def find_advantage_threshold(tol: float = 5e-4, lo: float = 0.01, hi: float = 1.0,
                             refine_tol: float = 1e-12) -> ThresholdResult:
    """Largest ``g2/g1`` for which entanglement gives a finite-time advantage.

    Bisection on :func:`advantage_predicate`; the returned ratio is the
    midpoint of a final bracket no wider than ``tol``.
    """
    if tol < 1e-6:
        raise ValueError("tol must be at least 1e-6")
    trace = []
    for x, expected in ((lo, True), (hi, False)):
        got = advantage_predicate(x, refine_tol)
        trace.append((x, got))
        if got is not expected:
            raise ValueError(f"predicate at ratio {x} is {got}; the bracket does not straddle the threshold")
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ok = advantage_predicate(mid, refine_tol)
        trace.append((mid, ok))
        if ok:
            lo = mid
        else:
            hi = mid
        it += 1
    return ThresholdResult(0.5 * (lo + hi), (lo, hi), it, tuple(trace))


def closed_form_threshold(tol: float = 1e-14) -> float:
    """Ratio at which the finite-time entangled optimum reaches exactly 1/4.

    Root of ``p*(x) - 1/4`` using the closed-form optimum of the in-region branch;
    an analytic counterpart to :func:`find_advantage_threshold`.
    """
    def gap(x):
        return _depol_vs_dephasing_candidate(1.0, x)[1] - 0.25

    return bisect(gap, 0.05, 0.99, tol=tol)
