import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotframe.dynamics import (
    IntegrationError,
    StationaryStateError,
    evolve,
    generator,
    observables,
    steady_state,
    total_variation,
)
from rotframe.eigensolver import diagonalize_hermitian, ground_state_of_sector, resolve_sectors
from rotframe.models import build_compass4, build_xy_pair, compass_symmetry_sectors
from rotframe.operators import PauliString
from rotframe.rates import BathSpec, CouplingProfile, Profile, emission_rate_matrix, golden_rule_matrix

UNIFORM16 = np.full(16, 1 / 16)


@pytest.fixture(scope="module")
def compass():
    return resolve_sectors(diagonalize_hermitian(build_compass4(1.0)), compass_symmetry_sectors())


@pytest.fixture(scope="module")
def compass_run(compass):
    W = emission_rate_matrix(compass, 1.0)
    logical = ground_state_of_sector(compass, (1, 1))
    p0 = np.zeros(16)
    p0[logical] = 1.0
    traj = evolve(W, p0, np.linspace(0, 5, 201))
    observables(traj, compass, logical, (1, 1), 1.0)
    return W, traj


def test_no_rates_no_motion():
    p0 = np.array([0.2, 0.3, 0.5])
    traj = evolve(np.zeros((3, 3)), p0, [0, 1, 10])
    for p in traj.states:
        np.testing.assert_array_equal(p, p0)


def test_single_qubit_decay_is_exponential():
    d = diagonalize_hermitian(np.zeros((2, 2)))
    W = emission_rate_matrix(d, 1.0)
    t = np.linspace(0, 5, 51)
    traj = evolve(W, [1.0, 0.0], t)
    np.testing.assert_allclose(traj.states[:, 0], np.exp(-t), atol=1e-10, rtol=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 10.0), st.floats(0.0, 10.0), st.floats(0.0, 1.0))
def test_two_state_closed_form(a, b, p_init):
    # rates a: 0 -> 1, b: 1 -> 0
    W = np.array([[0.0, b], [a, 0.0]])
    t = np.linspace(0, 3.0 / (a + b), 31)
    traj = evolve(W, [p_init, 1 - p_init], t)
    eq = b / (a + b)
    exact = eq + (p_init - eq) * np.exp(-(a + b) * t)
    np.testing.assert_allclose(traj.states[:, 0], exact, atol=1e-10, rtol=0)


def test_step_halving_changes_little(compass_run):
    W, traj = compass_run
    finer = evolve(W, traj.states[0], traj.times, step_scale=0.5)
    assert np.max(np.abs(finer.states - traj.states)) <= 1e-8


def test_probability_conserved(compass_run):
    _, traj = compass_run
    np.testing.assert_allclose(traj.states.sum(axis=1), 1.0, atol=1e-9)
    assert traj.states.min() >= 0.0


def test_mixing_is_monotone(compass_run):
    W, traj = compass_run
    ss = steady_state(W)
    tv = [total_variation(p, ss) for p in traj.states]
    assert np.all(np.diff(tv) <= 1e-12)


def test_compass_mixes_by_five_lifetimes(compass_run):
    _, traj = compass_run
    assert total_variation(traj.states[-1], UNIFORM16) < 0.05


def test_compass_observables(compass_run):
    _, traj = compass_run
    obs = traj.observables
    assert obs["logical0"][0] == 1.0 and obs["sector_pop"][0] == 1.0
    assert obs["reference_exp"][40] == pytest.approx(math.exp(-1.0), rel=1e-15)  # t = 1
    assert np.all(np.diff(obs["logical0"]) <= 0)
    assert obs["logical0"][-1] == pytest.approx(1 / 16, abs=0.01)
    assert obs["sector_pop"][-1] == pytest.approx(1 / 4, abs=0.01)


def test_long_time_limit_of_observables(compass):
    W = emission_rate_matrix(compass, 1.0)
    logical = ground_state_of_sector(compass, (1, 1))
    p0 = np.zeros(16)
    p0[logical] = 1
    traj = evolve(W, p0, [0.0, 60.0])
    obs = observables(traj, compass, logical, (1, 1), 1.0)
    assert obs["logical0"][-1] == pytest.approx(1 / 16, abs=1e-9)
    assert obs["sector_pop"][-1] == pytest.approx(1 / 4, abs=1e-9)


@pytest.mark.parametrize("c", [0.0, 1.0])
def test_compass_steady_state_is_uniform(compass, c):
    ss = steady_state(emission_rate_matrix(compass, 1.0, c))
    assert np.max(np.abs(ss - UNIFORM16)) <= 1e-8
    assert np.linalg.norm(generator(emission_rate_matrix(compass, 1.0, c)) @ ss) <= 1e-10


def test_steady_state_matches_svd_null_vector(compass):
    # independent route: right singular vector of the generator
    W = golden_rule_matrix(compass, BathSpec(0.7, Profile.ohmic(1.0, 5.0), CouplingProfile.uniform(0.3), "LAB"))
    _, s, vh = np.linalg.svd(generator(W))
    null = np.abs(vh[-1].real)
    np.testing.assert_allclose(steady_state(W), null / null.sum(), atol=1e-10)


def test_steady_state_is_fixed_point_of_evolution(compass):
    W = emission_rate_matrix(compass, 1.0)
    ss = steady_state(W)
    traj = evolve(W, ss, np.linspace(0, 4, 9))
    assert np.max(np.abs(traj.states - ss)) <= 1e-8


@pytest.mark.parametrize("T", [0.2, 1.0, 5.0])
def test_lab_xy_pair_thermalizes(T):
    d = resolve_sectors(diagonalize_hermitian(build_xy_pair(1.0)), [PauliString.from_label("ZZ")])
    W = golden_rule_matrix(d, BathSpec(T, Profile.flat(1.0), CouplingProfile.uniform(0.5), "LAB"))
    boltz = np.exp(-d.eigenvalues / T)
    boltz /= boltz.sum()
    np.testing.assert_allclose(steady_state(W), boltz, rtol=1e-8)


def test_rotating_xy_pair_does_not_thermalize():
    d = resolve_sectors(diagonalize_hermitian(build_xy_pair(1.0)), [PauliString.from_label("ZZ")])
    W = golden_rule_matrix(d, BathSpec(0.0, Profile.flat(1.0), CouplingProfile.uniform(0.5), "INTERACTION", 50.0))
    ss = steady_state(W)
    assert ss[0] < 1e-12  # the effective ground state is emptied
    assert ss[2] == pytest.approx(1.0)  # everything ends in |11>


def test_multiple_stationary_states_reported():
    W = np.zeros((3, 3))
    W[1, 0] = 1.0  # state 2 is isolated
    with pytest.raises(StationaryStateError):
        steady_state(W)
    with pytest.raises(StationaryStateError):
        steady_state(np.zeros((2, 2)))


def test_evolve_input_errors():
    W = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        evolve(W, [1.0, 0.0], [-1.0, 1.0])
    with pytest.raises(ValueError):
        evolve(W, [1.0, 0.0], [2.0, 1.0])
    with pytest.raises(ValueError):
        evolve(np.array([[0.0, np.nan], [1.0, 0.0]]), [1.0, 0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        evolve(W, [0.7, 0.7], [0.0, 1.0])


def test_large_step_fails_loudly():
    W = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(IntegrationError):
        evolve(W, [1.0, 0.0], [0.0, 100.0], step_scale=500.0)
