"""
Pauli dynamical maps
====================

A time-independent Pauli generator with decay rates (a, b, c) gives, at every
time, a Pauli channel. Its four weights follow from a 4x4 Hadamard transform
of exponentials in the pairwise rate sums.
"""

import numpy as np

from paulidisc import channel_probabilities, stationary_probabilities
from paulidisc.pauli_dynamics import pauli_convolve

rates = (1.0, 1.0, 0.0)
for t in (0.0, 0.25, 1.0, 4.0):
    print(f"t = {t:5.2f}  p = {np.round(channel_probabilities(rates, t), 6)}")

# the long-time limit is read off from which rate sums vanish
print("stationary:", stationary_probabilities(rates))
print("z-dephasing stationary:", stationary_probabilities((0, 0, 1)))

# evolving for s and then t is the same channel as evolving for s + t
s, t = 0.3, 0.9
lhs = channel_probabilities(rates, s + t)
rhs = pauli_convolve(channel_probabilities(rates, s), channel_probabilities(rates, t))
print("semigroup residual:", np.abs(lhs - rhs).max())
