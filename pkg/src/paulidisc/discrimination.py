"""Minimum-error discrimination between two Pauli channels.

Closed forms
------------
With ``r_k = q1 p1_k - q2 p2_k``:

* separable input (eigenstate of sigma_z, sigma_x or sigma_y)::

      p_no_ent = (1 - M) / 2,
      M = max(|r0+r3| + |r1+r2|, |r0+r1| + |r2+r3|, |r0+r2| + |r1+r3|)

* maximally entangled input::

      p_ent = (1 - sum_k |r_k|) / 2

Entanglement strictly helps iff ``r0 r1 r2 r3 < 0``.

Brute-force oracles
-------------------
:func:`brute_force_no_ent` and :func:`brute_force_ent` build explicit density
matrices, push them through the channels and evaluate the Helstrom bound with
:mod:`paulidisc.linalg`. They share nothing with the closed forms beyond the
channel weights, which is what makes them useful as checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import trace_norm
from .pauli_dynamics import SIGMA, apply_channel_extended

__all__ = [
    "Priors",
    "AXES",
    "DiscriminationReport",
    "EntangledSearch",
    "OracleMismatch",
    "r_vector",
    "separable_scores",
    "error_prob_no_ent",
    "optimal_axis",
    "error_prob_ent",
    "entanglement_advantage",
    "discriminate",
    "helstrom",
    "fibonacci_sphere",
    "bloch_states",
    "brute_force_no_ent",
    "bell_state",
    "brute_force_ent",
]

# order of the three candidate inputs; ties resolve to the earliest
AXES = ("z", "x", "y")
ADVANTAGE_MARGIN = 1e-14


class OracleMismatch(RuntimeError):
    """Raised when a brute-force check disagrees with a closed form."""


@dataclass(frozen=True)
class Priors:
    q1: float = 0.5
    q2: float | None = None

    def __post_init__(self):
        q1 = float(self.q1)
        q2 = 1.0 - q1 if self.q2 is None else float(self.q2)
        if not (0.0 <= q1 <= 1.0 and 0.0 <= q2 <= 1.0):
            raise ValueError(f"priors must lie in [0, 1], got ({q1}, {q2})")
        if abs(q1 + q2 - 1.0) > 1e-12:
            raise ValueError(f"priors must sum to 1, got {q1 + q2}")
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)

    @classmethod
    def coerce(cls, priors) -> "Priors":
        if priors is None:
            return cls()
        if isinstance(priors, Priors):
            return priors
        if np.ndim(priors) == 0:
            return cls(float(priors))
        q1, q2 = priors
        return cls(q1, q2)


EQUAL_PRIORS = Priors()


def r_vector(priors, p1, p2) -> np.ndarray:
    """Weighted difference ``q1 * p1 - q2 * p2`` (broadcasts over leading axes)."""
    pr = Priors.coerce(priors)
    return pr.q1 * np.asarray(p1, dtype=float) - pr.q2 * np.asarray(p2, dtype=float)


def separable_scores(r) -> np.ndarray:
    """Trace norms reached by sigma_z, sigma_x and sigma_y eigenstates, in that order."""
    r = np.asarray(r, dtype=float)
    r0, r1, r2, r3 = r[..., 0], r[..., 1], r[..., 2], r[..., 3]
    return np.stack(
        [
            np.abs(r0 + r3) + np.abs(r1 + r2),
            np.abs(r0 + r1) + np.abs(r2 + r3),
            np.abs(r0 + r2) + np.abs(r1 + r3),
        ],
        axis=-1,
    )


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def error_prob_no_ent(r, return_axis: bool = False):
    """Minimum error probability without side entanglement.

    With ``return_axis=True`` also returns which input eigenbasis (``"z"``,
    ``"x"`` or ``"y"``) is optimal; only valid for a single r-vector.
    """
    scores = separable_scores(r)
    p = _scalar((1.0 - scores.max(axis=-1)) / 2.0)
    if return_axis:
        return p, optimal_axis(r)
    return p


def optimal_axis(r) -> str:
    scores = separable_scores(r)
    if scores.ndim != 1:
        raise ValueError("optimal_axis expects a single r-vector")
    # argmax returns the first maximum, giving the z > x > y tie order
    return AXES[int(np.argmax(scores))]


def error_prob_ent(r):
    """Minimum error probability with a maximally entangled input."""
    r = np.asarray(r, dtype=float)
    return _scalar((1.0 - np.abs(r).sum(axis=-1)) / 2.0)


def entanglement_advantage(r):
    """True iff the product of the four r-components is strictly negative."""
    r = np.asarray(r, dtype=float)
    out = np.prod(r, axis=-1) < 0.0
    return bool(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DiscriminationReport:
    p_no_ent: float
    p_ent: float
    advantage: bool
    optimal_axis: str
    r: tuple[float, float, float, float]


def discriminate(p1, p2, priors=None) -> DiscriminationReport:
    """Both error probabilities for a single pair of Pauli channels."""
    r = r_vector(priors, p1, p2)
    p_sep, axis = error_prob_no_ent(r, return_axis=True)
    p_ent = error_prob_ent(r)
    return DiscriminationReport(
        p_no_ent=p_sep,
        p_ent=p_ent,
        advantage=bool(p_ent < p_sep - ADVANTAGE_MARGIN),
        optimal_axis=axis,
        r=tuple(float(x) for x in r),
    )


def helstrom(q1, rho1, q2, rho2):
    """Helstrom minimum error ``(1 - ||q1 rho1 - q2 rho2||_1) / 2``.

    Works on stacks of states with matching shapes.
    """
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    if rho1.shape != rho2.shape:
        raise ValueError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    return _scalar((1.0 - np.asarray(trace_norm(q1 * rho1 - q2 * rho2))) / 2.0)


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on the sphere (golden-angle spiral)."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    rho = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


def bloch_states(vectors) -> np.ndarray:
    """Density matrices ``(I + n . sigma) / 2`` for an array of Bloch vectors."""
    v = np.asarray(vectors, dtype=float)
    return 0.5 * (SIGMA[0] + np.einsum("...k,kab->...ab", v, SIGMA[1:]))


def _pauli_apply_batch(p, rho):
    out = np.zeros_like(rho)
    for pk, s in zip(np.asarray(p, dtype=float), SIGMA):
        out += pk * (s @ rho @ s)
    return out


def brute_force_no_ent(p1, p2, priors=None, n_grid: int = 10_000, chunk: int = 20_000) -> float:
    """Best Helstrom error over ``n_grid`` pure qubit inputs on a Fibonacci sphere.

    Always an upper bound on the separable optimum; the gap shrinks like
    ``1 / n_grid``.
    """
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    pr = Priors.coerce(priors)
    dirs = fibonacci_sphere(n_grid)
    best = 0.5
    for start in range(0, n_grid, chunk):
        rho = bloch_states(dirs[start:start + chunk])
        out1 = _pauli_apply_batch(p1, rho)
        out2 = _pauli_apply_batch(p2, rho)
        best = min(best, float(np.min(helstrom(pr.q1, out1, pr.q2, out2))))
    return best


def bell_state() -> np.ndarray:
    """``|Phi+><Phi+|`` with ``|Phi+> = (|00> + |11>) / sqrt(2)``."""
    psi = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def random_pure_states(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    psi /= np.linalg.norm(psi, axis=-1, keepdims=True)
    return np.einsum("na,nb->nab", psi, psi.conj())


class EntangledSearch(NamedTuple):
    p_min: float
    p_bell: float
    p_closed_form: float
    p_random_min: float


def brute_force_ent(p1, p2, priors=None, n_samples: int = 1000, seed: int = 0,
                    atol: float = 1e-12) -> EntangledSearch:
    """Entanglement-assisted Helstrom error over explicit two-qubit inputs.

    Evaluates the Bell input plus ``n_samples`` random pure states. Raises
    :class:`OracleMismatch` if the Bell input misses the closed form by more
    than ``atol``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    pr = Priors.coerce(priors)
    bell = bell_state()
    p_bell = helstrom(pr.q1, apply_channel_extended(p1, bell), pr.q2, apply_channel_extended(p2, bell))
    p_closed = error_prob_ent(r_vector(pr, p1, p2))
    if not abs(p_bell - p_closed) <= atol:
        raise OracleMismatch(
            f"Bell input gives {p_bell!r}, closed form gives {p_closed!r} (atol={atol})"
        )
    rng = np.random.default_rng(seed)
    states = random_pure_states(n_samples, 4, rng)
    vals = helstrom(pr.q1, apply_channel_extended(p1, states), pr.q2, apply_channel_extended(p2, states))
    p_rand = float(np.min(vals))
    return EntangledSearch(min(p_bell, p_rand), p_bell, p_closed, p_rand)
