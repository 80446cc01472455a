"""Golden-rule transition rates between system eigenstates.

Every qubit couples to its own bosonic bath.  The bath itself never appears
as data: the golden rule integrates it out into a spectral density, a
per-axis coupling profile and the Bose occupation.

Two frames are supported.  In the LAB frame the system Hamiltonian is the
full one and photons/phonons are exchanged at the eigenstate energy
differences.  In an INTERACTION frame rotating at the qubit frequency nu,
the transverse coupling splits into an emission channel ``|1><0|`` whose
bath frequency is shifted up by nu and an absorption channel shifted down
by nu.  From the slow effective Hamiltonian's point of view the bath then
has negative-energy modes, and spontaneous emission can excite it.

Rate matrices follow the column convention ``W[j, i] = rate(i -> j)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .eigensolver import EigenDecomposition
from .operators import embed, lowering, n_qubits_of, pauli_matrix

PROFILE_KINDS = ("FLAT", "OHMIC", "CUBIC", "TABULATED")


@dataclass(frozen=True)
class Profile:
    """A nonnegative function of frequency, used for rho(w) and alpha(w).

    FLAT:      value
    OHMIC:     A * w * exp(-w / wc)
    CUBIC:     A * w**3
    TABULATED: linear interpolation through sorted (w, value) points,
               held constant beyond the ends
    """

    kind: str = "FLAT"
    value: float = 1.0
    A: float = 1.0
    wc: float = 1.0
    points: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if kind == "FLAT" and not self.value >= 0:
            raise ValueError("FLAT profile value must be >= 0")
        if kind in ("OHMIC", "CUBIC") and not self.A >= 0:
            raise ValueError(f"{kind} amplitude must be >= 0")
        if kind == "OHMIC" and not self.wc > 0:
            raise ValueError("OHMIC cutoff wc must be > 0")
        if kind == "TABULATED":
            pts = tuple((float(w), float(r)) for w, r in self.points)
            if len(pts) < 1:
                raise ValueError("TABULATED profile needs at least one point")
            ws = [w for w, _ in pts]
            if any(b <= a for a, b in zip(ws, ws[1:])):
                raise ValueError("TABULATED frequencies must be strictly increasing")
            if any(r < 0 for _, r in pts):
                raise ValueError("TABULATED values must be >= 0")
            object.__setattr__(self, "points", pts)

    @classmethod
    def flat(cls, value: float) -> "Profile":
        return cls("FLAT", value=value)

    @classmethod
    def ohmic(cls, A: float, wc: float) -> "Profile":
        return cls("OHMIC", A=A, wc=wc)

    @classmethod
    def cubic(cls, A: float) -> "Profile":
        return cls("CUBIC", A=A)

    @classmethod
    def tabulated(cls, points: Sequence[tuple[float, float]]) -> "Profile":
        return cls("TABULATED", points=tuple(points))

    def __call__(self, w):
        w = np.asarray(w, dtype=float)
        if self.kind == "FLAT":
            return np.full_like(w, self.value)
        if self.kind == "OHMIC":
            return self.A * w * np.exp(-w / self.wc)
        if self.kind == "CUBIC":
            return self.A * w**3
        xs, ys = zip(*self.points)
        return np.interp(w, xs, ys)

    def to_dict(self) -> dict:
        if self.kind == "FLAT":
            return {"kind": "FLAT", "value": self.value}
        if self.kind == "OHMIC":
            return {"kind": "OHMIC", "A": self.A, "wc": self.wc}
        if self.kind == "CUBIC":
            return {"kind": "CUBIC", "A": self.A}
        return {"kind": "TABULATED", "points": [list(p) for p in self.points]}


SpectralDensity = Profile


@dataclass(frozen=True)
class CouplingProfile:
    """Per-axis coupling strengths alpha_x(w), alpha_y(w), alpha_z(w)."""

    x: Profile = field(default_factory=lambda: Profile.flat(1.0))
    y: Profile = field(default_factory=lambda: Profile.flat(1.0))
    z: Profile = field(default_factory=lambda: Profile.flat(1.0))

    @classmethod
    def uniform(cls, value: float) -> "CouplingProfile":
        p = Profile.flat(value)
        return cls(p, p, p)


@dataclass(frozen=True)
class BathSpec:
    """Environment seen by every qubit.

    ``frame`` is "LAB" or "INTERACTION"; the latter needs the rotating-frame
    frequency ``nu``.
    """

    temperature: float = 0.0
    spectral: Profile = field(default_factory=lambda: Profile.flat(1.0))
    coupling: CouplingProfile = field(default_factory=CouplingProfile)
    frame: str = "LAB"
    nu: float | None = None

    def __post_init__(self):
        frame = self.frame.upper()
        object.__setattr__(self, "frame", frame)
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise ValueError(f"temperature must be finite and >= 0, got {self.temperature}")
        if frame == "INTERACTION":
            if self.nu is None or not self.nu > 0:
                raise ValueError("INTERACTION frame needs nu > 0")
        elif frame != "LAB":
            raise ValueError(f"unknown frame {self.frame!r}")


def occupation(omega, T: float):
    """Bose-Einstein occupation ``1 / (exp(omega/T) - 1)``; exactly 0 at T = 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("occupation needs omega > 0")
    if T < 0:
        raise ValueError("temperature must be >= 0")
    if T == 0:
        out = np.zeros_like(omega)
    else:
        x = omega / T
        out = np.exp(-x) / -np.expm1(-x)
    return float(out) if out.ndim == 0 else out


def _channels(bath: BathSpec, n_qubits: int):
    """Yield (operator, carrier shift, squared-strength function) per channel."""
    c = bath.coupling
    z = pauli_matrix("Z")
    for k in range(n_qubits):
        yield embed(z, k, n_qubits), 0.0, lambda w: c.z(w) ** 2
        if bath.frame == "LAB":
            yield embed(pauli_matrix("X"), k, n_qubits), 0.0, lambda w: c.x(w) ** 2
            yield embed(pauli_matrix("Y"), k, n_qubits), 0.0, lambda w: c.y(w) ** 2
        else:
            # alpha_x X + alpha_y Y = (alpha_x + i alpha_y) L + h.c.
            strength = lambda w: c.x(w) ** 2 + c.y(w) ** 2  # noqa: E731
            low = lowering(k, n_qubits)
            yield low, bath.nu, strength
            yield low.conj().T, -bath.nu, strength


def _resonant(strength, bath: BathSpec, omega: np.ndarray, stimulated: bool) -> np.ndarray:
    """``2 pi alpha^2 rho (n [+1])`` where omega > 0, zero elsewhere."""
    out = np.zeros_like(omega)
    mask = omega > 0
    if mask.any():
        w = omega[mask]
        n = occupation(w, bath.temperature)
        out[mask] = 2 * np.pi * strength(w) * bath.spectral(w) * (n + 1.0 if stimulated else n)
    return out


def golden_rule_matrix(d: EigenDecomposition, bath: BathSpec, n_qubits: int | None = None) -> np.ndarray:
    """First-order rate matrix ``W[j, i]`` between eigenstates of ``d``.

    For a channel with operator A and carrier shift s, the transition i -> j
    (frequency w_ji = E_j - E_i) emits a boson at ``s - w_ji`` with weight
    n + 1 and absorbs one at ``w_ji - s`` with weight n; only positive bath
    frequencies contribute.  Zero-frequency (pure dephasing) terms are
    dropped.
    """
    if n_qubits is None:
        n_qubits = n_qubits_of(d.matrix)
    if d.dim != 2**n_qubits:
        raise ValueError(f"decomposition has dimension {d.dim}, expected {2**n_qubits}")
    E = np.asarray(d.eigenvalues, dtype=float)
    V = d.eigenvectors
    w_ji = E[:, None] - E[None, :]
    W = np.zeros((d.dim, d.dim))
    for op, shift, strength in _channels(bath, n_qubits):
        m2 = np.abs(V.conj().T @ op @ V) ** 2
        emit = _resonant(strength, bath, shift - w_ji, stimulated=True)
        absorb = _resonant(strength, bath, w_ji - shift, stimulated=False)
        W += (emit + absorb) * m2
    np.fill_diagonal(W, 0.0)
    if not np.all(np.isfinite(W)):
        raise FloatingPointError("non-finite transition rate")
    return W


def out_rate(W: np.ndarray, i: int) -> float:
    """Total rate out of state ``i``."""
    return float(np.sum(W[:, i]) - W[i, i])


# --- literal closed forms for the two-qubit XX+YY model ---------------------


def closed_form_lab(J: float, T: float, alpha: CouplingProfile, rho: Profile) -> float:
    """Lab-frame excitation rate out of the singlet ground state."""
    if not J > 0:
        raise ValueError("J must be positive")
    two_j = 2.0 * J
    z = 4 * np.pi * alpha.z(two_j) ** 2 * rho(two_j) * occupation(two_j, T)
    xy = 4 * np.pi * (alpha.x(J) ** 2 + alpha.y(J) ** 2) * rho(J) * occupation(J, T)
    return float(z + xy)


def closed_form_rotating(J: float, nu: float, T: float, alpha: CouplingProfile, rho: Profile) -> float:
    """Rotating-frame rate out of the singlet, at temperature T."""
    if not 0 < J < nu:
        raise ValueError("need 0 < J < nu")
    two_j, up, down = 2.0 * J, nu + J, nu - J
    z = 4 * np.pi * alpha.z(two_j) ** 2 * rho(two_j) * occupation(two_j, T)
    absorb = 2 * np.pi * (alpha.x(up) ** 2 + alpha.y(up) ** 2) * rho(up) * occupation(up, T)
    emit = 2 * np.pi * (alpha.x(down) ** 2 + alpha.y(down) ** 2) * rho(down) * (occupation(down, T) + 1)
    return float(z + absorb + emit)


def closed_form_rotating_zero_t(J: float, nu: float, alpha: CouplingProfile, rho: Profile) -> float:
    """Zero-temperature rotating-frame rate: pure spontaneous excitation."""
    if not 0 < J < nu:
        raise ValueError("need 0 < J < nu")
    down = nu - J
    return float(2 * np.pi * (alpha.x(down) ** 2 + alpha.y(down) ** 2) * rho(down))


# --- spontaneous emission with a collective-interference knob ---------------


def emission_rate_matrix(
    d: EigenDecomposition,
    gamma: float,
    cross_coeff: float = 0.0,
    nu: float | None = None,
    fifth_power: bool = False,
) -> np.ndarray:
    """Spontaneous-emission rates between eigenstates of an effective Hamiltonian.

    ``W[j, i] = gamma * F_ji * ((1 - c) sum_k |a_k|^2 + c |sum_k a_k|^2)``
    with ``a_k = <j|L_k|i>``.  ``c = 0`` treats the ions as emitting into
    independent modes and ``c = 1`` into one shared mode (full Dicke
    interference).  ``gamma`` is the single-qubit decay rate.  With
    ``fifth_power`` the quadrupole frequency law enters as
    ``F_ji = ((nu - w_ji) / nu)**5``; otherwise F = 1.
    """
    if not 0.0 <= cross_coeff <= 1.0:
        raise ValueError(f"cross_coeff must lie in [0, 1], got {cross_coeff}")
    if not gamma >= 0:
        raise ValueError("gamma must be >= 0")
    n = n_qubits_of(d.matrix)
    V = d.eigenvectors
    amps = [V.conj().T @ lowering(k, n) @ V for k in range(n)]
    incoherent = sum(np.abs(a) ** 2 for a in amps)
    coherent = np.abs(sum(amps)) ** 2
    W = gamma * ((1.0 - cross_coeff) * incoherent + cross_coeff * coherent)
    if fifth_power:
        if nu is None or not nu > 0:
            raise ValueError("fifth_power needs nu > 0")
        E = np.asarray(d.eigenvalues, dtype=float)
        ratio = (nu - (E[:, None] - E[None, :])) / nu
        if np.any(ratio[W > 0] < 0):
            raise ValueError("nu is too small: negative emission frequency")
        W = W * ratio**5
    np.fill_diagonal(W, 0.0)
    return W
