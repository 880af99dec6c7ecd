"""
Closed forms against brute force
================================

The minimum error with a single-qubit probe is a maximum over three Pauli
axes, and with an entangled probe it is a plain sum of absolute values.
Both can be checked by searching over explicit input states.
"""

import numpy as np

from paulidisc import brute_force_ent, brute_force_no_ent, error_prob_ent, error_prob_no_ent, r_vector

rng = np.random.default_rng(1)
p1, p2 = rng.dirichlet(np.ones(4), 2)
q = 0.4
r = r_vector(q, p1, p2)
print("r =", np.round(r, 4), " product sign:", np.sign(np.prod(r)))

closed_sep, axis = error_prob_no_ent(r, return_axis=True)
print(f"separable closed form  {closed_sep:.8f}  (probe eigenstates of sigma_{axis})")
for n in (100, 1000, 10_000):
    print(f"  Bloch-sphere search, {n:6d} states: {brute_force_no_ent(p1, p2, q, n_grid=n):.8f}")

res = brute_force_ent(p1, p2, q, n_samples=2000, seed=0)
print(f"entangled closed form  {error_prob_ent(r):.8f}")
print(f"  Bell input           {res.p_bell:.8f}")
print(f"  best random input    {res.p_random_min:.8f}")
