"""
When to look
============

At t = 0 the two processes have not acted and cannot be told apart; at long
times both may have forgotten everything. The optimiser scans a geometric
grid, refines each local minimum and compares with the stationary value.
"""

from paulidisc import curve, minimize_error
import numpy as np

pairs = {
    "dephasing z vs z": ((0, 0, 1), (0, 0, 0.25)),
    "dephasing z vs x": ((0, 0, 1), (1, 0, 0)),
    "coplanar": ((1, 1, 0), (0.2, 0.2, 0)),
    "depolarising": ((1, 1, 1), (0.2, 0.2, 0.2)),
}
for name, (r1, r2) in pairs.items():
    for mode in ("separable", "entangled"):
        res = minimize_error(r1, r2, None, mode)
        times = ", ".join(f"{t:.6f}" for t in res.t_stars)
        print(f"{name:18s} {mode:10s} t* = {times:22s} p* = {res.p_star:.6f}")

# the coplanar curve without entanglement has two equally deep minima
c = curve((1, 1, 0), (0.2, 0.2, 0), None, np.linspace(0.01, 3, 7))
for t, a, b in zip(c.times, c.p_no_ent, c.p_ent):
    print(f"t = {t:5.3f}  separable {a:.5f}  entangled {b:.5f}")
