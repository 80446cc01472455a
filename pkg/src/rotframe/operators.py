"""Dense operators on small n-qubit Hilbert spaces.

Basis convention: qubit 0 is the leftmost tensor factor and the most
significant bit of the computational-basis index, so ``|01>`` is index 1
for two qubits.  ``Z|0> = +|0>``.

All operators are plain ``numpy`` complex arrays.  Nothing here mutates its
inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping

import numpy as np

MAX_QUBITS = 6

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# |1><0|: takes the excited level |0> to the ground level |1>
_LOWER = np.array([[0, 0], [1, 0]], dtype=complex)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def pauli_matrix(axis: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for ``axis`` in {"X", "Y", "Z"} (or "I")."""
    try:
        return _PAULI[axis.upper()].copy()
    except (KeyError, AttributeError):
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def _check_qubit(qubit: int, n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    if not 0 <= qubit < n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {n_qubits} qubits")


def embed(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Return ``I x ... x op x ... x I`` with ``op`` acting on ``qubit``."""
    _check_qubit(qubit, n_qubits)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise DimensionError(f"single-qubit operator must be 2x2, got {op.shape}")
    left = np.eye(2**qubit, dtype=complex)
    right = np.eye(2 ** (n_qubits - qubit - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


@dataclass(frozen=True)
class PauliString:
    """A weighted tensor product of single-qubit Pauli factors.

    ``factors`` maps qubit index to axis; unlisted qubits carry identity.
    """

    n_qubits: int
    factors: Mapping[int, str] = field(default_factory=dict)
    coefficient: complex = 1.0

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        clean = {}
        for q, axis in self.factors.items():
            _check_qubit(q, self.n_qubits)
            axis = str(axis).upper()
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli axis {axis!r} on qubit {q}")
            clean[int(q)] = axis
        object.__setattr__(self, "factors", dict(sorted(clean.items())))

    @classmethod
    def from_label(cls, label: str, coefficient: complex = 1.0) -> "PauliString":
        """Build from a label such as ``"XIXI"`` (leftmost character is qubit 0)."""
        factors = {q: c for q, c in enumerate(label.upper()) if c != "I"}
        return cls(len(label), factors, coefficient)

    @property
    def label(self) -> str:
        return "".join(self.factors.get(q, "I") for q in range(self.n_qubits))

    def to_matrix(self) -> np.ndarray:
        return string_matrix(self)


def string_matrix(s: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string, including its coefficient."""
    mats = [_PAULI[s.factors.get(q, "I")] for q in range(s.n_qubits)]
    return s.coefficient * reduce(np.kron, mats)


def lowering(qubit: int, n_qubits: int) -> np.ndarray:
    """Emission operator ``|1><0|`` on ``qubit``, embedded in ``n_qubits``."""
    return embed(_LOWER, qubit, n_qubits)


def n_qubits_of(op: np.ndarray) -> int:
    """Number of qubits for a square operator of dimension 2**n."""
    dim = np.shape(op)[0]
    n = int(dim).bit_length() - 1
    if np.ndim(op) != 2 or op.shape[1] != dim or 2**n != dim or not 1 <= n <= MAX_QUBITS:
        raise DimensionError(f"not an n-qubit operator: shape {np.shape(op)}")
    return n


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket for a bit string like ``"0110"``."""
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return vec


# --- plain linear algebra with shape checks ---------------------------------


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if np.shape(a) != np.shape(b):
        raise DimensionError(f"shape mismatch: {np.shape(a)} vs {np.shape(b)}")


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_shape(a, b)
    return np.asarray(a) + np.asarray(b)


def scale(a: np.ndarray, c: complex) -> np.ndarray:
    return c * np.asarray(a)


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.shape(a)[-1] != np.shape(b)[0]:
        raise DimensionError(f"cannot multiply {np.shape(a)} by {np.shape(b)}")
    return np.asarray(a) @ np.asarray(b)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``AB - BA``."""
    _same_shape(a, b)
    return multiply(a, b) - multiply(b, a)


def matrix_element(bra: np.ndarray, op: np.ndarray, ket: np.ndarray) -> complex:
    """``<bra|op|ket>``; the bra vector is conjugated here."""
    bra, ket = np.asarray(bra), np.asarray(ket)
    dim = np.shape(op)[0]
    if bra.shape != (dim,) or ket.shape != (dim,) or np.shape(op) != (dim, dim):
        raise DimensionError(
            f"incompatible shapes bra={bra.shape} op={np.shape(op)} ket={ket.shape}"
        )
    return complex(np.vdot(bra, np.asarray(op) @ ket))


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)
