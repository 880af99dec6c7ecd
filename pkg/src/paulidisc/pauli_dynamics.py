"""Pauli dynamical maps and the time-dependent Pauli channels they generate.

A Pauli dynamical map is the semigroup generated by

    L(rho) = sum_k gamma_k (sigma_k rho sigma_k - rho),   k = x, y, z

with nonnegative decay rates. At every time ``t`` the solution is a Pauli
channel ``rho -> sum_k p_k(t) sigma_k rho sigma_k`` (with ``sigma_0 = I``),
whose weights follow from the rates through a 4x4 Hadamard transform of
exponential decay factors.

Probability vectors are ordered ``(p_I, p_x, p_y, p_z)`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "SIGMA",
    "DecayRates",
    "as_rates",
    "hadamard4",
    "rate_sums",
    "exponent_vector",
    "channel_probabilities",
    "stationary_probabilities",
    "pauli_convolve",
    "apply_channel",
    "apply_channel_extended",
    "validate_density_matrix",
]

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SIGMA.setflags(write=False)

_HADAMARD = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ],
    dtype=int,
)
_HADAMARD.setflags(write=False)


@dataclass(frozen=True)
class DecayRates:
    """Decay rates ``(gamma_x, gamma_y, gamma_z)`` of one Pauli dynamical map."""

    gamma: tuple[float, float, float]

    def __post_init__(self):
        g = tuple(float(x) for x in self.gamma)
        if len(g) != 3:
            raise ValueError(f"expected 3 decay rates, got {len(g)}")
        if not all(np.isfinite(g)):
            raise ValueError(f"decay rates must be finite, got {g}")
        if any(x < 0 for x in g):
            raise ValueError(f"decay rates must be nonnegative, got {g}")
        object.__setattr__(self, "gamma", g)

    def __iter__(self):
        return iter(self.gamma)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.gamma)

    def is_zero(self) -> bool:
        return all(x == 0.0 for x in self.gamma)

    def scaled(self, c: float) -> "DecayRates":
        return DecayRates(tuple(c * x for x in self.gamma))

    @classmethod
    def dephasing(cls, gamma: float, axis: str = "z") -> "DecayRates":
        g = [0.0, 0.0, 0.0]
        g["xyz".index(axis)] = gamma
        return cls(tuple(g))

    @classmethod
    def depolarising(cls, gamma: float) -> "DecayRates":
        return cls((gamma, gamma, gamma))


RatesLike = Union[DecayRates, Sequence[float], np.ndarray]


def as_rates(rates: RatesLike) -> DecayRates:
    if isinstance(rates, DecayRates):
        return rates
    return DecayRates(tuple(np.asarray(rates, dtype=float).ravel()))


def hadamard4() -> np.ndarray:
    """Return the 4x4 Hadamard matrix mapping decay factors to channel weights."""
    return _HADAMARD.copy()


def rate_sums(rates: RatesLike) -> np.ndarray:
    """Decay exponents of the four Pauli components: ``A_l(t) = exp(-2 s_l t)``.

    ``s = (0, g_y + g_z, g_x + g_z, g_x + g_y)``.
    """
    g1, g2, g3 = as_rates(rates).gamma
    return np.array([0.0, g2 + g3, g1 + g3, g1 + g2])


def _check_time(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("time must be finite")
    if np.any(t < 0):
        raise ValueError("time must be nonnegative")
    return t


def exponent_vector(rates: RatesLike, t) -> np.ndarray:
    """Decay factors ``A(t)`` of the Pauli components.

    ``t`` may be a scalar or an array; the result has shape ``t.shape + (4,)``.
    """
    t = _check_time(t)
    s = rate_sums(rates)
    return np.exp(-2.0 * t[..., None] * s)


def channel_probabilities(rates: RatesLike, t) -> np.ndarray:
    """Pauli weights ``(p_I, p_x, p_y, p_z)`` of the channel reached at time ``t``.

    Vectorised over ``t``: returns shape ``t.shape + (4,)``.

    >>> channel_probabilities((0, 0, 1), 0.0)
    array([1., 0., 0., 0.])
    """
    a = exponent_vector(rates, t)
    return a @ _HADAMARD.T / 4.0


def stationary_probabilities(rates: RatesLike) -> np.ndarray:
    """Exact ``t -> infinity`` limit of :func:`channel_probabilities`.

    Components whose rate-sum is exactly zero never decay; all others vanish.
    Decided structurally so no large-``t`` evaluation is involved.
    """
    a_inf = (rate_sums(rates) == 0.0).astype(float)
    return _HADAMARD @ a_inf / 4.0


def pauli_convolve(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Weights of the composition of two Pauli channels.

    With labels 0=I, 1=x, 2=y, 3=z the product ``sigma_i sigma_j`` is
    proportional to ``sigma_{i XOR j}``, so composition is a convolution
    over the Klein four-group.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    out = np.zeros(np.broadcast_shapes(p.shape, q.shape))
    for i in range(4):
        for j in range(4):
            out[..., i ^ j] += p[..., i] * q[..., j]
    return out


def validate_density_matrix(rho, dim: int | None = None, atol: float = 1e-10) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=1e-12, rtol=0):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > 1e-12:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _check_probs(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"Pauli weights must have shape (4,), got {p.shape}")
    return p


def apply_channel(p, rho) -> np.ndarray:
    """Apply the Pauli channel with weights ``p`` to a single-qubit state."""
    p = _check_probs(p)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (2, 2):
        raise ValueError(f"expected 2x2 density matrix, got shape {rho.shape}")
    return np.einsum("k,kab,...bc,kcd->...ad", p, SIGMA, rho, SIGMA, optimize=True)


_SIGMA_EXT = np.array([np.kron(s, np.eye(2)) for s in SIGMA])
_SIGMA_EXT.setflags(write=False)


def apply_channel_extended(p, rho) -> np.ndarray:
    """Apply ``E (x) id`` to a two-qubit state; the channel acts on the first qubit.

    Accepts a stack of states with shape ``(..., 4, 4)``.
    """
    p = _check_probs(p)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise ValueError(f"expected 4x4 density matrix, got shape {rho.shape}")
    return np.einsum("k,kab,...bc,kcd->...ad", p, _SIGMA_EXT, rho, _SIGMA_EXT, optimize=True)
