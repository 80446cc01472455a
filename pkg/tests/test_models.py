import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rotframe.models import (
    IonParams,
    ModelSpec,
    build_bare_qubits,
    build_compass4,
    build_xy_pair,
    ca40_preset,
    compass_symmetry_sectors,
    ms_coupling,
)
from rotframe.operators import PauliString, basis_state, commutator, is_hermitian, string_matrix

TWO_PI = 2 * math.pi
SINGLET = (basis_state("01") - basis_state("10")) / math.sqrt(2)


def test_xy_pair_spectrum_and_singlet():
    H = build_xy_pair(1.0)
    assert is_hermitian(H)
    np.testing.assert_allclose(np.linalg.eigvalsh(H), [-1, 0, 0, 1], atol=1e-14)
    np.testing.assert_allclose(H @ SINGLET, -SINGLET, atol=1e-15)
    assert np.trace(H) == 0


def test_compass_commutes_with_sectors_and_is_traceless():
    H = build_compass4(0.7)
    assert is_hermitian(H)
    assert abs(np.trace(H)) == 0
    syms = [string_matrix(s) for s in compass_symmetry_sectors()]
    for s in syms:
        assert np.abs(commutator(H, s)).max() <= 1e-12 * 0.7
        np.testing.assert_array_equal(s @ s, np.eye(16))
    np.testing.assert_array_equal(commutator(*syms), np.zeros((16, 16)))


def test_compass_spectrum_is_symmetric():
    w = np.linalg.eigvalsh(build_compass4(1.0))
    np.testing.assert_allclose(np.sort(w), np.sort(-w), atol=1e-12)
    # Z1 Z4 anticommutes with every term, which is what pairs E with -E
    parity = string_matrix(PauliString.from_label("ZIIZ"))
    H = build_compass4(1.0)
    np.testing.assert_allclose(parity @ H + H @ parity, 0, atol=1e-12)


@given(st.floats(0.01, 100.0), st.floats(0.1, 10.0))
def test_compass_spectrum_scales_linearly(J, c):
    w1 = np.linalg.eigvalsh(build_compass4(J))
    w2 = np.linalg.eigvalsh(build_compass4(c * J))
    np.testing.assert_allclose(w2, c * w1, atol=1e-10 * c * J)


def test_bare_qubits_levels():
    H = build_bare_qubits(2.0, 2)
    np.testing.assert_allclose(np.diag(H).real, [2, 0, 0, -2])


def test_model_spec_builds():
    np.testing.assert_array_equal(ModelSpec("XY_PAIR", J=1.0).hamiltonian(), build_xy_pair(1.0))
    assert ModelSpec("compass_4", J=2.0).n_qubits == 4
    assert ModelSpec("BARE_QUBITS", nu=3.0, n_qubits=3).hamiltonian().shape == (8, 8)
    with pytest.raises(ValueError):
        ModelSpec("XY_PAIR")
    with pytest.raises(ValueError):
        build_xy_pair(0.0)


def _drive(**kw):
    base = dict(eta=0.1, Omega=TWO_PI * 1e5, delta=TWO_PI * 1e4, omega_s=TWO_PI * 2e6, nu=1e15, gamma=1.0)
    base.update(kw)
    return IonParams(**base)


def test_ms_coupling_example():
    # 2 * 0.1^2 * (2pi 1e5)^2 / (2pi 1e4) = 2pi * 2e4
    assert ms_coupling(_drive()) == pytest.approx(TWO_PI * 2e4, rel=1e-14)
    assert ms_coupling(_drive(delta=TWO_PI * 2e4)) == pytest.approx(TWO_PI * 1e4, rel=1e-14)


def test_ms_coupling_rejects_unphysical_drive():
    with pytest.raises(ValueError, match="unphysical"):
        ms_coupling(_drive(Omega=TWO_PI * 1e7))
    with pytest.raises(ValueError):
        _drive(delta=TWO_PI * 3e6)
    with pytest.raises(ValueError):
        _drive(eta=-0.1)


@given(st.floats(0.1, 3.0))
def test_ms_coupling_is_quadratic_in_rabi(s):
    p = _drive()
    assert ms_coupling(p.with_(Omega=s * p.Omega)) == pytest.approx(s**2 * ms_coupling(p), rel=1e-12)


def test_ca40_preset_constants():
    p = ca40_preset()
    assert p.nu / TWO_PI == pytest.approx(411e12, rel=1e-15)
    assert p.gamma / TWO_PI == pytest.approx(0.16, rel=1e-15)
    ratio = p.nu / ms_coupling(p)
    assert 1e8 <= ratio < 1e9
