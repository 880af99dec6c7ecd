"""
Advantage threshold
===================

Depolarising at unit rate against dephasing at rate x: with an entangled
probe the error dips below 1/4 at a finite time only when x is small enough.
Bisection on that yes/no question locates the crossover.
"""

from paulidisc.scenarios import advantage_predicate, closed_form_threshold, find_advantage_threshold

for x in (0.2, 0.3, 0.378, 0.379, 0.5, 10.0):
    print(f"x = {x:6.3f}  finite-time advantage: {advantage_predicate(x)}")

res = find_advantage_threshold(tol=1e-5)
print(f"bisection: {res.ratio:.6f} after {res.iterations} steps, bracket {res.bracket}")
print(f"closed-form root: {closed_form_threshold():.10f}")
