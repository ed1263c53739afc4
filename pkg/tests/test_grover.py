import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pimachine.grover import (
    GroverInstance,
    apply_oracle,
    apply_phase_shift_about_start,
    basis_state,
    evolve_two_dim,
    g_matrix,
    grover_iterate,
    instance_from_ratio,
    marked_probability,
    optimal_iterations,
    probability_trace,
    success_probability_closed_form,
    uniform_state,
)


def _rotation(phi):
    return np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])


@pytest.mark.parametrize("ratio, n", [(3, 2), (100, 7), (1, 1), (F(7, 2), 3), (127, 7), (F(1271, 10), 8)])
def test_instance_from_ratio(ratio, n):
    inst = instance_from_ratio(1, ratio)
    assert inst.n == n
    assert inst.k == 0
    assert inst.mass_ratio == ratio
    assert 2 ** (n - 1) < 1 + ratio <= 2**n


def test_instance_from_ratio_rejects_light_m2():
    with pytest.raises(ValueError):
        instance_from_ratio(2, 1)


def test_instance_invariants():
    inst = GroverInstance(5, 31)
    assert inst.N == 32
    assert math.sin(inst.theta) == pytest.approx(math.sqrt(1 / 32), abs=1e-12)
    assert inst.as_dict() == {"n": 5, "N": 32, "k": 31, "theta": inst.theta}
    with pytest.raises(ValueError):
        GroverInstance(5, 32)
    with pytest.raises(ValueError):
        GroverInstance(0)


def test_oracle():
    s = apply_oracle(uniform_state(4), 2)
    np.testing.assert_array_equal(s, [0.5, 0.5, -0.5, 0.5])
    np.testing.assert_array_equal(apply_oracle(basis_state(8, 3), 3), -basis_state(8, 3))
    np.testing.assert_array_equal(apply_oracle(s, 2), uniform_state(4))
    with pytest.raises(ValueError):
        apply_oracle(s, 4)


def test_phase_shift():
    u = uniform_state(8)
    np.testing.assert_allclose(apply_phase_shift_about_start(u), u, atol=1e-15)
    orth = np.array([1, -1, 0, 0], dtype=complex) / math.sqrt(2)
    np.testing.assert_allclose(apply_phase_shift_about_start(orth), -orth, atol=1e-15)
    np.testing.assert_allclose(
        apply_phase_shift_about_start(basis_state(4, 0)), [-0.5, 0.5, 0.5, 0.5], atol=1e-15
    )


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31), st.integers(0, 2**31))
def test_involutions_and_norm(n, k_seed, seed):
    rng = np.random.default_rng(seed)
    N = 2**n
    k = k_seed % N
    s = rng.normal(size=N) + 1j * rng.normal(size=N)
    s /= np.linalg.norm(s)
    np.testing.assert_allclose(apply_oracle(apply_oracle(s, k), k), s, atol=1e-12)
    r = apply_phase_shift_about_start(s)
    np.testing.assert_allclose(apply_phase_shift_about_start(r), s, atol=1e-12)
    assert abs(np.linalg.norm(r) - 1) < 1e-12


def test_norm_over_many_applications():
    s = uniform_state(64)
    for _ in range(10**4):
        s = grover_iterate(s, 17, 1)
    assert abs(np.linalg.norm(s) - 1) < 1e-8


def test_exact_search_n2():
    s = grover_iterate(uniform_state(4), 1, 1)
    assert marked_probability(s, 1) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [1, 3, 6, 10])
def test_zero_iterations(n):
    assert marked_probability(grover_iterate(uniform_state(2**n), 0, 0), 0) == pytest.approx(2**-n)


def test_n7_k5_t8():
    # sin(17 asin(1/sqrt(128)))**2 = 0.99561986569432224 (mpmath, 30 digits)
    s = grover_iterate(uniform_state(128), 5, 8)
    assert marked_probability(s, 5) == pytest.approx(0.99561986569432224, abs=1e-9)


@pytest.mark.parametrize("n", [2, 5, 9])
def test_state_stays_in_two_dim_subspace(n):
    N, k = 2**n, 3
    s = uniform_state(N)
    others = np.arange(N) != k
    for _ in range(2 * optimal_iterations(GroverInstance(n).theta) + 3):
        s = grover_iterate(s, k, 1)
        residual = s[others] - s[others].mean()
        assert np.linalg.norm(residual) < 1e-10


def test_g_matrix_examples():
    np.testing.assert_allclose(g_matrix(0.0), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(g_matrix(math.pi / 4), _rotation(math.pi / 2), atol=1e-15)
    assert np.trace(g_matrix(math.pi / 6)) == pytest.approx(1, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(-4, 4), st.floats(-4, 4))
def test_g_matrix_composes_as_rotation(a, b):
    np.testing.assert_allclose(g_matrix(a) @ g_matrix(b), _rotation(2 * (a + b)), atol=1e-12)


def test_g_matrix_is_grover_iteration_in_plane():
    n, k = 4, 9
    theta = GroverInstance(n, k).theta
    s = grover_iterate(uniform_state(2**n), k, 1)
    unmarked = s[(k + 1) % 2**n].real * math.sqrt(2**n - 1)
    plane = g_matrix(theta) @ np.array([math.cos(theta), math.sin(theta)])
    np.testing.assert_allclose([unmarked, s[k].real], plane, atol=1e-12)


def test_evolve_two_dim():
    np.testing.assert_array_equal(evolve_two_dim((0.3, -0.4), 0.2, 0), [0.3, -0.4])
    theta = math.pi / 12
    np.testing.assert_allclose(evolve_two_dim((1.0, 0.5), theta, 6), (-1.0, -0.5), atol=1e-12)
    v = evolve_two_dim((-1.0, 0.0), 0.1, 7)
    np.testing.assert_allclose(v, (math.cos(math.pi + 1.4), math.sin(math.pi + 1.4)), atol=1e-12)


def test_success_probability_closed_form():
    assert success_probability_closed_form(0, 0.3) == pytest.approx(math.sin(0.3) ** 2)
    assert success_probability_closed_form(1, math.pi / 6) == pytest.approx(1, abs=1e-15)
    # sin(15 * 0.0997087)**2 = 0.99436073093218515 (mpmath)
    assert success_probability_closed_form(7, 0.0997087) == pytest.approx(0.99436073093218515, abs=1e-12)
    with pytest.raises(ValueError):
        success_probability_closed_form(-1, 0.1)


def test_probability_trace_for_padded_instance():
    inst = instance_from_ratio(1, 100)
    rows = probability_trace(inst, optimal_iterations(inst.theta))
    theta_ratio = math.asin(math.sqrt(1 / 101))
    assert rows[0][1] == pytest.approx(1 / 128)
    assert rows[0][2] == pytest.approx(1 / 101)
    assert rows[-1][3] == pytest.approx((2 * rows[-1][0] + 1) * theta_ratio)
    # padding lowers the rotation angle, so the padded run lags the ratio's curve early on
    assert all(p_sv < p_cf for _, p_sv, p_cf, _ in rows[:7])
