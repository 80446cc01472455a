import numpy as np
import pytest
from hypothesis import given, strategies as st

from rotframe.models import build_compass4
from rotframe.operators import (
    DimensionError,
    PauliString,
    adjoint,
    basis_state,
    commutator,
    embed,
    is_hermitian,
    lowering,
    matrix_element,
    multiply,
    pauli_matrix,
    string_matrix,
)


def test_pauli_matrices():
    np.testing.assert_array_equal(pauli_matrix("X"), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli_matrix("Y"), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(pauli_matrix("Z"), [[1, 0], [0, -1]])
    with pytest.raises(ValueError):
        pauli_matrix("W")


@pytest.mark.parametrize("axis", "XYZ")
def test_paulis_square_to_identity_and_are_traceless(axis):
    p = pauli_matrix(axis)
    np.testing.assert_array_equal(p @ p, np.eye(2))
    assert np.trace(p) == 0


def test_embed_x_on_leftmost_qubit_swaps_halves():
    expected = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    np.testing.assert_array_equal(embed(pauli_matrix("X"), 0, 2), expected)


def test_embed_identity_and_z_eigenvalue():
    for n in (1, 3, 5):
        for k in range(n):
            np.testing.assert_array_equal(embed(np.eye(2), k, n), np.eye(2**n))
    ket = basis_state("01")
    np.testing.assert_array_equal(embed(pauli_matrix("Z"), 1, 2) @ ket, -ket)


def test_embed_rejects_bad_index():
    with pytest.raises(IndexError):
        embed(pauli_matrix("X"), 2, 2)
    with pytest.raises(IndexError):
        lowering(4, 4)


def test_string_matrix_examples():
    np.testing.assert_array_equal(string_matrix(PauliString(2, {0: "X", 1: "X"})), np.fliplr(np.eye(4)))
    np.testing.assert_array_equal(string_matrix(PauliString(2, {}, 2.5j)), 2.5j * np.eye(4))
    xx = string_matrix(PauliString(4, {0: "X", 2: "X"}))
    np.testing.assert_array_equal(xx @ basis_state("0000"), basis_state("1010"))


def test_pauli_string_label_roundtrip():
    s = PauliString.from_label("XIYZ", 0.5)
    assert s.label == "XIYZ"
    assert s.factors == {0: "X", 2: "Y", 3: "Z"}
    with pytest.raises(IndexError):
        PauliString(2, {2: "X"})


def test_lowering_action():
    L = lowering(0, 1)
    np.testing.assert_array_equal(L @ basis_state("0"), basis_state("1"))
    np.testing.assert_array_equal(L @ basis_state("1"), np.zeros(2))


def test_all_ground_state_does_not_emit():
    total = sum(lowering(k, 4) for k in range(4))
    np.testing.assert_array_equal(total @ basis_state("1111"), np.zeros(16))


def test_lowering_is_nilpotent():
    Ld = adjoint(lowering(1, 3))
    np.testing.assert_array_equal(Ld @ Ld, np.zeros((8, 8)))


def test_commutator_examples():
    np.testing.assert_allclose(commutator(pauli_matrix("X"), pauli_matrix("Y")), 2j * pauli_matrix("Z"))
    H = build_compass4(1.3)
    for label in ("XXII", "IIXX"):
        np.testing.assert_allclose(commutator(H, string_matrix(PauliString.from_label(label))), 0, atol=1e-12)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(4))
    with pytest.raises(DimensionError):
        multiply(np.eye(2), np.eye(4))
    with pytest.raises(DimensionError):
        matrix_element(np.ones(2), np.eye(4), np.ones(4))


pauli_strings = st.integers(1, 4).flatmap(
    lambda n: st.builds(
        PauliString,
        st.just(n),
        st.dictionaries(st.integers(0, n - 1), st.sampled_from("XYZ")),
        st.floats(-3, 3, allow_nan=False),
    )
)


@given(pauli_strings)
def test_real_coefficient_strings_are_hermitian(s):
    m = string_matrix(s)
    assert is_hermitian(m, 1e-12)
    if s.factors:
        assert abs(np.trace(m)) == 0


def _complex_array(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 8]))
def test_adjoint_and_matrix_element_symmetry(seed, dim):
    rng = np.random.default_rng(seed)
    A = _complex_array(rng, (dim, dim))
    v, w = _complex_array(rng, dim), _complex_array(rng, dim)
    np.testing.assert_array_equal(adjoint(adjoint(A)), A)
    lhs = matrix_element(v, A, w)
    rhs = np.conj(matrix_element(w, adjoint(A), v))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
