"""Model Hamiltonians and trapped-ion parameter conversions.

Units are natural (hbar = k_B = 1) with angular frequencies in rad/s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .operators import PauliString, embed, pauli_matrix, string_matrix

TWO_PI = 2.0 * math.pi

# 40Ca+ S1/2 <-> D5/2 quadrupole qubit
CA40_NU = TWO_PI * 411e12
CA40_GAMMA = TWO_PI * 0.16


def build_xy_pair(J: float) -> np.ndarray:
    """``(J/2)(X1 X2 + Y1 Y2)`` on two qubits.

    Spectrum is {-J, 0, 0, J}; the singlet (|01> - |10>)/sqrt(2) sits at -J.
    """
    if not J > 0:
        raise ValueError(f"J must be positive, got {J}")
    xx = string_matrix(PauliString(2, {0: "X", 1: "X"}))
    yy = string_matrix(PauliString(2, {0: "Y", 1: "Y"}))
    return 0.5 * J * (xx + yy)


_COMPASS_TERMS = ("XIXI", "IXIX", "YYII", "IIYY")


def build_compass4(J: float) -> np.ndarray:
    """Four-qubit compass model ``J(X1X3 + X2X4 + Y1Y2 + Y3Y4)``."""
    if not J > 0:
        raise ValueError(f"J must be positive, got {J}")
    return J * sum(string_matrix(PauliString.from_label(t)) for t in _COMPASS_TERMS)


def compass_symmetry_sectors() -> list[PauliString]:
    """The commuting sector operators X1X2 and X3X4 of the compass model."""
    return [PauliString.from_label("XXII"), PauliString.from_label("IIXX")]


def build_bare_qubits(nu: float, n_qubits: int) -> np.ndarray:
    """Uncoupled qubits ``(nu/2) sum_i Z_i``; |0> is the upper level."""
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    z = pauli_matrix("Z")
    return 0.5 * nu * sum(embed(z, q, n_qubits) for q in range(n_qubits))


@dataclass(frozen=True)
class IonParams:
    """Drive and atomic constants of a two-ion Molmer-Sorensen setup.

    All rates and frequencies are angular (rad/s).
    """

    eta: float
    Omega: float
    delta: float
    omega_s: float
    nu: float
    gamma: float

    def __post_init__(self):
        for name in ("eta", "Omega", "delta", "omega_s", "nu", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"IonParams.{name} must be finite and positive, got {value}")
        if not self.delta < self.omega_s:
            raise ValueError("IonParams.delta must be smaller than omega_s")

    def with_(self, **changes) -> "IonParams":
        return replace(self, **changes)


def ms_coupling(p: IonParams) -> float:
    """Effective spin-spin coupling ``J = 2 eta^2 Omega^2 / delta``.

    Raises ValueError when J reaches the trap frequency, where the
    virtual-phonon picture no longer holds.
    """
    J = 2.0 * p.eta**2 * p.Omega**2 / p.delta
    if J >= p.omega_s:
        raise ValueError(
            f"unphysical drive: J/2pi = {J / TWO_PI:.6g} Hz is not below "
            f"omega_s/2pi = {p.omega_s / TWO_PI:.6g} Hz"
        )
    return J


def ca40_preset() -> IonParams:
    """Ca-40 optical qubit with a default drive giving J/2pi = 1 MHz.

    nu and gamma are the atomic values; eta, Omega, delta and omega_s are
    representative choices, not measured data.
    """
    return IonParams(
        eta=0.1,
        Omega=TWO_PI * 5e6,
        delta=TWO_PI * 500e3,
        omega_s=TWO_PI * 2e6,
        nu=CA40_NU,
        gamma=CA40_GAMMA,
    )


@dataclass(frozen=True)
class ModelSpec:
    """Which Hamiltonian to build and with what scale.

    ``kind`` is one of "XY_PAIR", "COMPASS_4" or "BARE_QUBITS".
    """

    kind: str
    J: float | None = None
    nu: float | None = None
    n_qubits: int | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind in ("XY_PAIR", "COMPASS_4"):
            if self.J is None or not self.J > 0:
                raise ValueError(f"{kind} needs J > 0")
            n = 2 if kind == "XY_PAIR" else 4
            if self.n_qubits not in (None, n):
                raise ValueError(f"{kind} has {n} qubits, got n_qubits={self.n_qubits}")
            object.__setattr__(self, "n_qubits", n)
        elif kind == "BARE_QUBITS":
            if self.nu is None or not self.nu > 0:
                raise ValueError("BARE_QUBITS needs nu > 0")
            if self.n_qubits is None:
                object.__setattr__(self, "n_qubits", 1)
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    def hamiltonian(self) -> np.ndarray:
        if self.kind == "XY_PAIR":
            return build_xy_pair(self.J)
        if self.kind == "COMPASS_4":
            return build_compass4(self.J)
        return build_bare_qubits(self.nu, self.n_qubits)
