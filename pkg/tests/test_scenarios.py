import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paulidisc.scenarios import (
    DegenerateScenario,
    ScenarioSpec,
    advantage_predicate,
    closed_form_threshold,
    coplanar_p_ent,
    coplanar_p_no_ent,
    depol_vs_dephasing_p_ent,
    depol_vs_dephasing_p_no_ent,
    find_advantage_threshold,
    solve,
    solve_coplanar,
    solve_depol_vs_dephasing,
    solve_depolarising,
    solve_orthogonal_dephasing,
    solve_same_axis_dephasing,
)
from paulidisc.time_opt import AT_INFINITY, error_at, minimize_error

# reference values evaluated directly from the error curves at the closed-form times
SAME_AXIS_T = math.log(4) / 1.5
SAME_AXIS_P = 0.5 - 0.25 * (math.exp(-0.5 * SAME_AXIS_T) - math.exp(-2 * SAME_AXIS_T))
DEPOL_T = math.log(5) / 3.2
DEPOL_D = math.exp(-0.8 * DEPOL_T) - math.exp(-4 * DEPOL_T)


def test_frozen_reference_values():
    assert SAME_AXIS_T == pytest.approx(0.9241962407465937, abs=1e-15)
    assert SAME_AXIS_P == pytest.approx(0.38188240157235565, abs=1e-15)
    assert DEPOL_T == pytest.approx(0.5029493476356564, abs=1e-15)
    assert 0.5 - 0.25 * DEPOL_D == pytest.approx(0.3662519390047156, abs=1e-15)
    assert 0.5 - 0.375 * DEPOL_D == pytest.approx(0.29937790850707335, abs=1e-15)


def test_same_axis_dephasing():
    sol = solve_same_axis_dephasing(1.0, 0.25)
    assert sol.t_star_no_ent == (pytest.approx(SAME_AXIS_T, abs=1e-14),)
    assert sol.t_star_ent == pytest.approx(SAME_AXIS_T, abs=1e-14)
    assert sol.p_star_ent == sol.p_star_no_ent == pytest.approx(SAME_AXIS_P, abs=1e-15)
    assert not sol.advantage_regime
    assert solve_same_axis_dephasing(1, 4).p_star_ent == pytest.approx(solve_same_axis_dephasing(4, 1).p_star_ent, abs=1e-15)
    assert solve_same_axis_dephasing(2, 0.5).p_star_ent == pytest.approx(sol.p_star_ent, abs=1e-15)
    with pytest.raises(DegenerateScenario):
        solve_same_axis_dephasing(1, 1)


def test_orthogonal_dephasing():
    for g in [(1, 0.5), (1, 1)]:
        sol = solve_orthogonal_dephasing(*g)
        assert sol.t_star_ent == AT_INFINITY and sol.t_star_no_ent == (AT_INFINITY,)
        assert sol.p_star_ent == sol.p_star_no_ent == 0.25
        assert not sol.advantage_regime
    r1, r2 = ScenarioSpec("orthogonal_dephasing", 1, 0.5).rates
    assert error_at(r1, r2, None, 0.0, "separable") == 0.5
    t = np.linspace(0, 5, 50)
    np.testing.assert_allclose(error_at(r1, r2, None, t, "separable"), 0.25 * (1 + np.exp(-2 * t)), atol=1e-15)


def test_coplanar():
    sol = solve_coplanar(1.0, 0.2)
    assert sol.t_star_ent == pytest.approx(0.782, abs=1e-3)
    assert sol.p_star_ent == pytest.approx(0.308, abs=1e-3)
    assert sol.t_star_no_ent == pytest.approx((math.log(5) / 0.8 / 4, math.log(5) / 0.8 / 2), abs=1e-14)
    assert sol.t_star_no_ent == pytest.approx((0.50294, 1.00589), abs=1e-5)
    a, b = (float(coplanar_p_no_ent(1.0, 0.2, t)) for t in sol.t_star_no_ent)
    assert abs(a - b) < 1e-12
    assert a == pytest.approx(sol.p_star_no_ent, abs=1e-15)
    # the transcendental condition holds at the entangled optimum
    t = sol.t_star_ent
    lhs = math.exp(-4 * t) + math.exp(-2 * t)
    rhs = 0.2 * (math.exp(-0.8 * t) + math.exp(-0.4 * t))
    assert abs(lhs - rhs) < 1e-11
    assert sol.advantage_regime


def test_coplanar_branch_curves_match_general_machinery():
    r1, r2 = ScenarioSpec("coplanar", 1.0, 0.2).rates
    t = np.geomspace(1e-3, 20, 500)
    np.testing.assert_allclose(coplanar_p_no_ent(1.0, 0.2, t), error_at(r1, r2, None, t, "separable"), atol=1e-15)
    np.testing.assert_allclose(coplanar_p_ent(1.0, 0.2, t), error_at(r1, r2, None, t, "entangled"), atol=1e-15)
    # the max switches branch between the two separable optima
    d2 = np.abs(np.exp(-2 * t) - np.exp(-0.4 * t))
    d4 = np.abs(np.exp(-4 * t) - np.exp(-0.8 * t))
    switch = np.flatnonzero(np.diff(np.sign(d2 - d4)))
    assert len(switch) == 1
    assert 0.50294 < t[switch[0]] < 1.00589


def test_depolarising():
    sol = solve_depolarising(1.0, 0.2)
    assert sol.t_star_ent == sol.t_star_no_ent[0] == pytest.approx(DEPOL_T, abs=1e-15)
    assert sol.p_star_ent == pytest.approx(0.5 - 0.375 * DEPOL_D, abs=1e-15)
    assert sol.p_star_no_ent == pytest.approx(0.5 - 0.25 * DEPOL_D, abs=1e-15)
    scaled = solve_depolarising(2.0, 0.4)
    assert scaled.p_star_ent == pytest.approx(sol.p_star_ent, abs=1e-15)
    assert scaled.p_star_no_ent == pytest.approx(sol.p_star_no_ent, abs=1e-15)
    x = 5.0
    gap = 0.125 * x ** (1 / (0.2 - 1)) * (x - 1)
    assert sol.p_star_no_ent - sol.p_star_ent == pytest.approx(gap, abs=1e-15)


def test_depol_vs_dephasing_advantage():
    sol = solve_depol_vs_dephasing(1.0, 0.2)
    assert sol.t_star_ent == pytest.approx(math.log(15) / 3.6, abs=1e-15)
    expected = 0.375 * (1 - 15 ** (2 / (0.2 - 2)) * (2 / 0.2 - 1))
    assert sol.p_star_ent == pytest.approx(expected, abs=1e-15)
    assert sol.p_star_ent < 0.25
    assert sol.p_star_ent == pytest.approx(float(depol_vs_dephasing_p_ent(1, 0.2, sol.t_star_ent)), abs=1e-15)
    assert sol.t_star_no_ent == (AT_INFINITY,) and sol.p_star_no_ent == 0.25
    assert sol.advantage_regime


def test_depol_vs_dephasing_no_advantage():
    sol = solve_depol_vs_dephasing(1.0, 0.5)
    assert not sol.advantage_regime
    assert sol.t_star_ent == AT_INFINITY and sol.p_star_ent == 0.25


def test_depol_vs_dephasing_boundary():
    r1, r2 = ScenarioSpec("depol_vs_dephasing", 1.0, 0.3785).rates
    res = minimize_error(r1, r2, None, "entangled")
    assert abs(res.p_star - 0.25) < 1e-4


def test_depol_vs_dephasing_curves_match_general_machinery():
    for g2 in (0.2, 0.5, 3.0):
        r1, r2 = ScenarioSpec("depol_vs_dephasing", 1.0, g2).rates
        t = np.geomspace(1e-3, 20, 500)
        np.testing.assert_allclose(depol_vs_dephasing_p_no_ent(1, g2, t), error_at(r1, r2, None, t, "separable"), atol=1e-15)
        np.testing.assert_allclose(depol_vs_dephasing_p_ent(1, g2, t), error_at(r1, r2, None, t, "entangled"), atol=1e-15)


@pytest.mark.parametrize("g2", [0.1, 0.2, 0.5, 2.0, 10.0])
def test_depol_vs_dephasing_region_identities(g2):
    g1 = 1.0
    t = np.linspace(1e-4, 10, 20001)
    e4, e2 = np.exp(-4 * g1 * t), np.exp(-2 * g2 * t)
    r1, r2 = ScenarioSpec("depol_vs_dephasing", g1, g2).rates
    pe = error_at(r1, r2, None, t, "entangled")
    pt = error_at(r1, r2, None, t, "separable")
    equal_region = (3 * e4 - 1 <= 2 * e2) & (2 * e2 <= e4 + 1)
    np.testing.assert_allclose(pe[equal_region], 0.25 * (1 + e4[equal_region]), atol=1e-12)
    np.testing.assert_allclose(pt[equal_region], 0.25 * (1 + e4[equal_region]), atol=1e-12)
    low_region = e2 >= (3 * e4 + 1) / 2
    np.testing.assert_allclose(pe[low_region], (3 + 3 * e4[low_region] - 2 * e2[low_region]) / 8, atol=1e-12)


def test_threshold_predicate():
    assert advantage_predicate(0.2)
    assert not advantage_predicate(10.0)
    assert not advantage_predicate(0.5)


def test_threshold_search():
    res = find_advantage_threshold(tol=5e-4)
    assert abs(res.ratio - 0.3785) <= 5e-4
    assert res.bracket[1] - res.bracket[0] <= 5e-4
    fine = find_advantage_threshold(tol=1e-5)
    assert fine.bracket[1] - fine.bracket[0] <= 1e-5
    assert abs(fine.ratio - closed_form_threshold()) < 1e-5
    assert find_advantage_threshold(tol=5e-4) == res
    with pytest.raises(ValueError):
        find_advantage_threshold(tol=1e-7)


def test_closed_form_threshold_value():
    assert closed_form_threshold() == pytest.approx(0.37857925, abs=1e-8)


def test_solve_dispatch_and_spec():
    assert solve("coplanar", 1, 0.2) == solve_coplanar(1, 0.2)
    with pytest.raises(ValueError):
        solve("nonsense", 1, 0.2)
    with pytest.raises(ValueError):
        ScenarioSpec("coplanar", 0, 1)
    assert ScenarioSpec("coplanar", 1, 0.2).rates[0].gamma == (1.0, 1.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 20), st.floats(0.05, 20).filter(lambda x: abs(math.log(x)) > 0.05), st.floats(0.1, 10))
def test_ratio_invariance(g1, x, c):
    g2 = g1 * x
    for solver in (solve_same_axis_dephasing, solve_depolarising):
        a, b = solver(g1, g2), solver(c * g1, c * g2)
        assert b.p_star_ent == pytest.approx(a.p_star_ent, abs=1e-12)
        assert b.p_star_no_ent == pytest.approx(a.p_star_no_ent, abs=1e-12)
        assert b.t_star_ent == pytest.approx(a.t_star_ent / c, rel=1e-12)
