"""
Case studies in closed form
===========================

Five families of process pairs with closed-form optima, each cross-checked
against the numerical optimiser.
"""

from paulidisc.scenarios import KINDS, ScenarioSpec, solve
from paulidisc.time_opt import minimize_error

examples = {
    "same_axis_dephasing": (1.0, 0.25),
    "orthogonal_dephasing": (1.0, 0.5),
    "coplanar": (1.0, 0.2),
    "depolarising": (1.0, 0.2),
    "depol_vs_dephasing": (1.0, 0.2),
}
for kind in KINDS:
    g1, g2 = examples[kind]
    sol = solve(kind, g1, g2)
    r1, r2 = ScenarioSpec(kind, g1, g2).rates
    ent = minimize_error(r1, r2, None, "entangled")
    print(kind)
    print(f"  separable  t* = {sol.t_star_no_ent}  p* = {sol.p_star_no_ent:.6f}")
    print(f"  entangled  t* = {sol.t_star_ent:.6f}  p* = {sol.p_star_ent:.6f}"
          f"  (numeric {ent.t_star:.6f}, {ent.p_star:.6f})")
    print(f"  entanglement helps: {sol.advantage_regime}")
