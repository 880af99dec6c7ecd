import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from paulidisc.discrimination import (
    OracleMismatch,
    Priors,
    bell_state,
    bloch_states,
    brute_force_ent,
    brute_force_no_ent,
    discriminate,
    entanglement_advantage,
    error_prob_ent,
    error_prob_no_ent,
    fibonacci_sphere,
    helstrom,
    r_vector,
)
from paulidisc.pauli_dynamics import channel_probabilities

UNIFORM = np.full(4, 0.25)
IDENTITY = np.array([1.0, 0, 0, 0])

prob4 = st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4).filter(lambda v: sum(v) > 1e-3).map(
    lambda v: np.array(v) / sum(v)
)
prior = st.floats(0.0, 1.0)


def test_priors():
    assert Priors().q2 == 0.5
    assert Priors(0.3).q2 == pytest.approx(0.7)
    with pytest.raises(ValueError):
        Priors(0.3, 0.3)
    with pytest.raises(ValueError):
        Priors(1.2)


def test_r_vector_examples():
    np.testing.assert_array_equal(r_vector(0.5, UNIFORM, UNIFORM), np.zeros(4))
    np.testing.assert_allclose(r_vector(0.5, IDENTITY, UNIFORM), [3 / 8, -1 / 8, -1 / 8, -1 / 8])
    p1 = np.array([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_array_equal(r_vector((1.0, 0.0), p1, UNIFORM), p1)


def test_error_prob_examples():
    assert error_prob_no_ent(np.zeros(4), return_axis=True) == (0.5, "z")
    assert error_prob_ent(np.zeros(4)) == 0.5
    r = np.array([3 / 8, -1 / 8, -1 / 8, -1 / 8])
    assert error_prob_ent(r) == pytest.approx(1 / 8, abs=1e-15)
    assert entanglement_advantage(r) is True
    assert entanglement_advantage(np.array([0.1, 0.0, -0.2, 0.3])) is False


def test_optimal_axis_order():
    # an x-flip is invisible to sigma_x eigenstates; z and y tie, z comes first
    r = r_vector(0.5, [0.5, 0.5, 0, 0], IDENTITY)
    assert error_prob_no_ent(r, return_axis=True) == (0.25, "z")
    # a z-flip: x and y tie, x comes first
    r = r_vector(0.5, [0.5, 0, 0, 0.5], IDENTITY)
    assert error_prob_no_ent(r, return_axis=True)[1] == "x"
    # x- and z-flips both act on sigma_y eigenstates
    r = r_vector(0.5, [0.5, 0.25, 0, 0.25], IDENTITY)
    assert error_prob_no_ent(r, return_axis=True) == (0.25, "y")


@pytest.mark.parametrize("g1,g2,t", [(1.0, 0.25, 0.5), (1.0, 4.0, 1.3), (0.3, 0.9, 2.0)])
def test_same_axis_dephasing_closed_form(g1, g2, t):
    r = r_vector(0.5, channel_probabilities((0, 0, g1), t), channel_probabilities((0, 0, g2), t))
    expected = 0.5 - 0.25 * abs(math.exp(-2 * g1 * t) - math.exp(-2 * g2 * t))
    assert error_prob_no_ent(r) == pytest.approx(expected, abs=1e-15)
    assert error_prob_ent(r) == pytest.approx(expected, abs=1e-15)
    assert entanglement_advantage(r) is False


@pytest.mark.parametrize("g1,g2,t", [(1.0, 0.2, 0.5), (2.0, 0.5, 0.1)])
def test_depolarising_closed_form(g1, g2, t):
    r = r_vector(
        0.5, channel_probabilities((g1,) * 3, t), channel_probabilities((g2,) * 3, t)
    )
    d = abs(math.exp(-4 * g1 * t) - math.exp(-4 * g2 * t))
    assert error_prob_no_ent(r) == pytest.approx(0.5 - d / 4, abs=1e-15)
    assert error_prob_ent(r) == pytest.approx(0.5 - 3 * d / 8, abs=1e-15)


def test_discriminate_report():
    rep = discriminate(IDENTITY, UNIFORM)
    assert rep.advantage
    assert rep.p_ent == pytest.approx(1 / 8)
    assert rep.p_ent <= rep.p_no_ent <= 0.5


def test_helstrom_examples():
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    assert helstrom(0.5, zero, 0.5, zero) == 0.5
    assert helstrom(0.5, zero, 0.5, one) == 0.0
    assert helstrom(0.5, zero, 0.5, np.eye(2) / 2) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ValueError):
        helstrom(0.5, zero, 0.5, np.eye(4) / 4)


def test_fibonacci_sphere_unit_and_balanced():
    v = fibonacci_sphere(5000)
    np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-14)
    assert np.abs(v.mean(axis=0)).max() < 1e-3
    rho = bloch_states(v[:3])
    np.testing.assert_allclose(np.trace(rho, axis1=1, axis2=2), 1.0)


def test_brute_force_no_ent_identical_channels():
    p = np.array([0.4, 0.3, 0.2, 0.1])
    assert brute_force_no_ent(p, p, 0.5, n_grid=64) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        brute_force_no_ent(p, p, 0.5, n_grid=8)


def test_brute_force_no_ent_dephasing_pair():
    t, g1, g2 = 0.9, 1.0, 0.25
    p1 = channel_probabilities((0, 0, g1), t)
    p2 = channel_probabilities((0, 0, g2), t)
    closed = 0.5 - 0.25 * abs(math.exp(-2 * g1 * t) - math.exp(-2 * g2 * t))
    bf = brute_force_no_ent(p1, p2, 0.5, n_grid=10_000)
    assert closed - 1e-12 <= bf <= closed + 1e-4


def test_brute_force_no_ent_converges_from_above():
    rng = np.random.default_rng(11)
    p1, p2 = rng.dirichlet(np.ones(4), 2)
    closed = error_prob_no_ent(r_vector(0.4, p1, p2))
    gaps = [brute_force_no_ent(p1, p2, 0.4, n_grid=n) - closed for n in (100, 1000, 10_000)]
    assert all(g >= -1e-12 for g in gaps)
    assert gaps[2] <= gaps[0]
    assert gaps[2] < 2e-4


def test_brute_force_ent_examples():
    p = np.array([0.4, 0.3, 0.2, 0.1])
    res = brute_force_ent(p, p, 0.5, n_samples=50, seed=1)
    assert res.p_min == pytest.approx(0.5, abs=1e-12)
    g1, g2, t = 1.0, 0.2, 0.5
    p1 = channel_probabilities((g1,) * 3, t)
    p2 = channel_probabilities((g2,) * 3, t)
    res = brute_force_ent(p1, p2, 0.5, n_samples=200, seed=2)
    expected = 0.5 - 0.375 * abs(math.exp(-4 * g1 * t) - math.exp(-4 * g2 * t))
    assert res.p_bell == pytest.approx(expected, abs=1e-12)
    assert res.p_random_min >= expected - 1e-10


def test_brute_force_ent_is_deterministic():
    p1, p2 = np.array([0.4, 0.3, 0.2, 0.1]), np.array([0.1, 0.2, 0.3, 0.4])
    assert brute_force_ent(p1, p2, 0.3, 100, seed=5) == brute_force_ent(p1, p2, 0.3, 100, seed=5)


def test_brute_force_ent_mismatch_raises():
    p1, p2 = np.array([0.4, 0.3, 0.2, 0.1]), np.array([0.1, 0.2, 0.3, 0.4])
    with pytest.raises(OracleMismatch):
        brute_force_ent(p1, p2, 0.3, 10, atol=-1.0)


def test_bell_state_is_maximally_entangled():
    rho = bell_state()
    reduced = np.einsum("ajbj->ab", rho.reshape(2, 2, 2, 2))
    np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-15)


@settings(max_examples=500, deadline=None)
@given(prob4, prob4, prior)
def test_rvector_invariants(p1, p2, q):
    r = r_vector(q, p1, p2)
    assert abs(r.sum() - (2 * q - 1)) <= 1e-12
    assert np.abs(r).max() <= max(q, 1 - q) + 1e-15


@settings(max_examples=500, deadline=None)
@given(prob4, prob4, prior)
def test_ordering_and_advantage(p1, p2, q):
    r = r_vector(q, p1, p2)
    pe, pt = error_prob_ent(r), error_prob_no_ent(r)
    assert pe <= pt + 1e-15
    # the margin cannot resolve gaps below it; see test_advantage_gap_identity
    assume(np.abs(r).min() > 1e-13 or np.prod(r) >= 0)
    assert entanglement_advantage(r) == (pe < pt - 1e-14)


@settings(max_examples=500, deadline=None)
@given(prob4, prob4, prior)
def test_advantage_gap_identity(p1, p2, q):
    # separable minus entangled error is min|r_k| when the product is negative, else 0
    r = r_vector(q, p1, p2)
    gap = error_prob_no_ent(r) - error_prob_ent(r)
    expected = np.abs(r).min() if np.prod(r) < 0 else 0.0
    assert gap == pytest.approx(expected, abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(prob4, prob4)
def test_equal_prior_range(p1, p2):
    r = r_vector(0.5, p1, p2)
    assert 0 <= error_prob_ent(r) <= error_prob_no_ent(r) + 1e-15
    assert error_prob_no_ent(r) <= 0.5


@settings(max_examples=30, deadline=None)
@given(prob4, prob4, prior)
def test_separable_oracle_equivalence(p1, p2, q):
    closed = error_prob_no_ent(r_vector(q, p1, p2))
    bf = brute_force_no_ent(p1, p2, q, n_grid=10_000)
    assert closed - 1e-12 <= bf <= closed + 2e-4


@settings(max_examples=100, deadline=None)
@given(prob4, prob4, prior)
def test_bell_input_is_exact(p1, p2, q):
    pr = Priors(q)
    from paulidisc.pauli_dynamics import apply_channel_extended

    bell = bell_state()
    val = helstrom(pr.q1, apply_channel_extended(p1, bell), pr.q2, apply_channel_extended(p2, bell))
    assert abs(val - error_prob_ent(r_vector(pr, p1, p2))) <= 1e-12
