"""Classical (Pauli) master equation over eigenstate populations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigensolver import EigenDecomposition, SectorError

CLAMP_TOL = 1e-12


class IntegrationError(RuntimeError):
    pass


class StationaryStateError(ValueError):
    """The generator does not have a unique stationary distribution."""


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n_times, n_states)
    observables: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states have different lengths")


def _check_rates(W: np.ndarray) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError(f"rate matrix must be square, got {W.shape}")
    if np.isnan(W).any() or not np.isfinite(W).all():
        raise ValueError("rate matrix contains NaN or infinite entries")
    off = W - np.diag(np.diag(W))
    if (off < 0).any():
        raise ValueError("rate matrix has negative off-diagonal entries")
    return off


def generator(W: np.ndarray) -> np.ndarray:
    """``G`` with ``G[j, i] = W[j, i]`` off the diagonal and zero column sums."""
    off = _check_rates(W)
    return off - np.diag(off.sum(axis=0))


def _clamp(p: np.ndarray) -> np.ndarray:
    if (p < -CLAMP_TOL).any():
        raise IntegrationError(f"population went negative ({p.min():.3e})")
    return np.where(p < 0, 0.0, p)


def _rk4_propagator(G: np.ndarray, h: float) -> np.ndarray:
    # one classical RK4 step for a linear system is a 4th-order Taylor polynomial
    hG = h * G
    n = len(G)
    eye = np.eye(n)
    return eye + hG @ (eye + hG @ (eye / 2 + hG @ (eye / 6 + hG / 24)))


def step_size(W: np.ndarray, span: float) -> float:
    """Default RK4 step: ``min(0.01 / max out-rate, span / 1000)``."""
    G = generator(W)
    gmax = float(np.max(-np.diag(G), initial=0.0))
    candidates = [span / 1000.0] if span > 0 else []
    if gmax > 0:
        candidates.append(0.01 / gmax)
    return min(candidates) if candidates else 1.0


def evolve(W: np.ndarray, p0, times, step_scale: float = 1.0) -> Trajectory:
    """Integrate ``dp/dt = G p`` with fixed-step RK4, reporting at ``times``.

    Each interval between output times is split into equal steps no longer
    than the default step times ``step_scale``.
    """
    G = generator(W)
    p = np.asarray(p0, dtype=float)
    times = np.asarray(times, dtype=float)
    if p.shape != (len(G),):
        raise ValueError(f"p0 has shape {p.shape}, expected ({len(G)},)")
    if (p < 0).any() or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("p0 must be a normalized probability vector")
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a non-empty 1-d sequence")
    if times[0] < 0:
        raise ValueError("times must be nonnegative")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")
    h_max = step_size(W, float(times[-1] - times[0])) * step_scale

    states = np.empty((len(times), len(p)))
    states[0] = p
    cache: dict[tuple[int, float], np.ndarray] = {}
    for k in range(1, len(times)):
        dt = float(times[k] - times[k - 1])
        if dt > 0:
            n_steps = max(1, math.ceil(dt / h_max - 1e-9))
            key = (n_steps, dt)
            if key not in cache:
                cache[key] = np.linalg.matrix_power(_rk4_propagator(G, dt / n_steps), n_steps)
            p = cache[key] @ p
        states[k] = _clamp(p)
        if abs(states[k].sum() - 1.0) > 1e-9:
            raise IntegrationError("probability not conserved")
    return Trajectory(times.copy(), states)


def steady_state(W: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Unique stationary distribution of the rate matrix ``W``.

    Row-reduces the generator with partial pivoting.  A numerical rank below
    n - 1 means several stationary distributions exist, which is reported
    rather than resolved.
    """
    G = generator(W)
    n = len(G)
    if n == 1:
        return np.ones(1)
    scale = float(np.max(np.abs(G), initial=0.0))
    if scale == 0.0:
        raise StationaryStateError("all rates vanish; every distribution is stationary")
    a = G / scale
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == n:
            break
        r = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[r, col]) <= rtol:
            continue
        a[[row, r]] = a[[r, row]]
        a[row] /= a[row, col]
        for other in range(n):
            if other != row and a[other, col] != 0.0:
                a[other] -= a[other, col] * a[row]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise StationaryStateError(
            f"null space of the generator has dimension {len(free)}; stationary state is not unique"
        )
    p = np.zeros(n)
    p[free[0]] = 1.0
    for r, col in enumerate(pivots):
        p[col] = -a[r, free[0]]
    p = _clamp(p / p.sum())
    p /= p.sum()
    resid = np.linalg.norm(G @ p)
    if resid > 1e-10 * max(1.0, scale):
        raise StationaryStateError(f"stationary residual {resid:.3e} too large")
    return p


def total_variation(p, q) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))


def observables(
    traj: Trajectory,
    d: EigenDecomposition,
    logical_index: int,
    sector_label,
    gamma: float,
) -> dict[str, np.ndarray]:
    """Populations of the logical state and of its sector, plus ``exp(-gamma t)``.

    The result is also stored on ``traj.observables``.
    """
    if d.sector_labels is None:
        raise SectorError("decomposition has no sector labels")
    label = tuple(sector_label)
    members = [i for i, lab in enumerate(d.sector_labels) if lab == label]
    if not members:
        raise SectorError(f"no state carries sector label {label}")
    obs = {
        "logical0": traj.states[:, logical_index].copy(),
        "sector_pop": np.clip(traj.states[:, members].sum(axis=1), 0.0, 1.0),
        "reference_exp": np.exp(-gamma * traj.times),
    }
    traj.observables.update(obs)
    return obs
