"""Exact diagonalization of small Hermitian matrices.

Uses cyclic complex Jacobi rotations, which are slow asymptotically but
deterministic and accurate to roundoff for the dimensions used here
(at most 64).  Degenerate eigenspaces can then be rotated into joint
eigenbases of commuting symmetry operators.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .operators import PauliString, is_hermitian, string_matrix

OFFDIAG_RTOL = 1e-14
MAX_SWEEPS = 100
GROUP_RTOL = 1e-9
MAX_DIM = 64


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    """Jacobi sweeps did not converge; indicates a bug, not bad input."""


class SectorError(ValueError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a Hermitian matrix.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``.  ``groups`` lists
    index tuples of (numerically) degenerate eigenvalues.  ``sector_labels``
    is filled by :func:`resolve_sectors`.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: tuple[tuple[int, ...], ...]
    sector_labels: tuple[tuple, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def state(self, i: int) -> np.ndarray:
        return self.eigenvectors[:, i]

    def residual(self) -> float:
        """Largest ``||H v - lambda v||`` over all eigenpairs."""
        r = self.matrix @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0)))

    def orthonormality_error(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.conj().T @ v - np.eye(self.dim))))


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of a round-robin tournament: n-1 rounds of disjoint pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        p, q = zip(*sorted(pairs))
        rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize Hermitian ``a`` in place; return (diagonal, unitary).

    Cyclic Jacobi in round-robin order: every round zeroes a set of disjoint
    (p, q) pairs at once, and each sweep visits every pair exactly once.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v
    thresh = OFFDIAG_RTOL * scale
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        if np.abs(a - np.diag(a.diagonal())).max() <= thresh:
            return a.diagonal().real.copy(), v
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > thresh
            if not active.any():
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            phase = apq / mag
            app, aqq = a[p, p].real, a[q, q].real
            theta = (aqq - app) / (2.0 * mag)
            t = np.where(theta < 0.0, -1.0, 1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # R = [[c, s*phase], [-s*conj(phase), c]] on each (p, q); a <- R^H a R
            sp, sm = s * phase, s * np.conj(phase)
            col_p, col_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * col_p - sm * col_q
            a[:, q] = sp * col_p + c * col_q
            row_p, row_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * row_p - sp[:, None] * row_q
            a[q, :] = sm[:, None] * row_p + c[:, None] * row_q
            a[p, p] = app - t * mag
            a[q, q] = aqq + t * mag
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - sm * vq
            v[:, q] = sp * vp + c * vq
    raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (dim {n})")


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry real and positive.

    Near-ties (within 1e-12) go to the lowest index so that symmetric
    vectors such as (|01> - |10>)/sqrt(2) come out with a stable sign.
    """
    out = vecs.copy()
    for k in range(out.shape[1]):
        mags = np.abs(out[:, k])
        idx = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
        out[:, k] *= np.conj(out[idx, k]) / mags[idx]
        out[idx, k] = mags[idx]
    return out


def _lead_index(vec: np.ndarray) -> int:
    mags = np.abs(vec)
    return int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])


def _group(values: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    groups, current = [], [0]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tol:
            current.append(i)
        else:
            groups.append(tuple(current))
            current = [i]
    groups.append(tuple(current))
    return tuple(groups)


def _hermitian_eig(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = _jacobi(np.array(h, dtype=complex))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def diagonalize_hermitian(H: np.ndarray, tol: float | None = None) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``tol`` is the absolute degeneracy tolerance; by default it is
    ``1e-9 * max|lambda|``.
    """
    H = np.array(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or not 1 <= H.shape[0] <= MAX_DIM:
        raise ValueError(f"expected a square matrix of dimension <= {MAX_DIM}, got {H.shape}")
    norm = np.linalg.norm(H)
    if not np.all(np.isfinite(H)):
        raise ValueError("matrix has non-finite entries")
    if not is_hermitian(H, 1e-10 * max(norm, 1e-300)):
        raise NotHermitianError("matrix is not Hermitian")
    w, v = _hermitian_eig(H)
    v = _fix_phases(v)
    if tol is None:
        tol = GROUP_RTOL * float(np.max(np.abs(w)))
    H.setflags(write=False)
    return EigenDecomposition(H, w, v, _group(w, tol))


def _label_value(x: float):
    r = round(x)
    return int(r) if abs(x - r) < 1e-8 else round(x, 9)


def _as_matrix(s) -> np.ndarray:
    return string_matrix(s) if isinstance(s, PauliString) else np.asarray(s, dtype=complex)


def _split(basis: np.ndarray, syms: list[np.ndarray], labels: tuple) -> list[tuple[tuple, np.ndarray]]:
    """Recursively split ``basis`` columns into joint eigenvectors of ``syms``."""
    if not syms:
        return [(labels, basis)]
    s = syms[0]
    m = basis.conj().T @ s @ basis
    m = 0.5 * (m + m.conj().T)
    w, u = _hermitian_eig(m)
    rotated = basis @ u
    out = []
    for grp in _group(w, 1e-8 * max(1.0, float(np.max(np.abs(w))))):
        value = _label_value(float(np.mean(w[list(grp)])))
        out.extend(_split(rotated[:, list(grp)], syms[1:], labels + (value,)))
    return out


def resolve_sectors(d: EigenDecomposition, symmetries: Sequence) -> EigenDecomposition:
    """Rotate each degenerate group into joint eigenvectors of ``symmetries``.

    Symmetries may be matrices or :class:`PauliString` objects; they must
    commute with the Hamiltonian and with each other.  Within each group
    states are ordered by label tuple and then by the index of their
    largest component.
    """
    syms = [_as_matrix(s) for s in symmetries]
    if not syms:
        return replace(d, sector_labels=tuple(() for _ in range(d.dim)))
    H = d.matrix
    scale = max(np.linalg.norm(H), 1e-300)
    for k, s in enumerate(syms):
        if s.shape != H.shape:
            raise SectorError(f"symmetry {k} has shape {s.shape}, expected {H.shape}")
        if not is_hermitian(s, 1e-10 * max(np.linalg.norm(s), 1.0)):
            raise SectorError(f"symmetry {k} is not Hermitian")
        if np.linalg.norm(H @ s - s @ H) > 1e-9 * scale * max(np.linalg.norm(s), 1.0):
            raise SectorError(f"symmetry {k} does not commute with the Hamiltonian")
        for m, other in enumerate(syms[:k]):
            if np.linalg.norm(s @ other - other @ s) > 1e-9 * np.linalg.norm(s) * np.linalg.norm(other):
                raise SectorError(f"symmetries {m} and {k} do not commute")

    values = np.empty(d.dim)
    vectors = np.empty_like(d.eigenvectors)
    labels: list[tuple] = []
    for grp in d.groups:
        pieces = []
        for label, block in _split(d.eigenvectors[:, list(grp)], syms, ()):
            block = _fix_phases(block)
            for k in range(block.shape[1]):
                pieces.append((label, _lead_index(block[:, k]), block[:, k]))
        pieces.sort(key=lambda item: (item[0], item[1]))
        for pos, (label, _, vec) in zip(grp, pieces):
            vectors[:, pos] = vec
            values[pos] = float(np.vdot(vec, H @ vec).real)
            labels.append(label)
    return replace(d, eigenvalues=values, eigenvectors=vectors, sector_labels=tuple(labels))


def ground_state_of_sector(d: EigenDecomposition, label) -> int:
    """Index of the lowest-energy state carrying ``label``."""
    if d.sector_labels is None:
        raise SectorError("decomposition has no sector labels; call resolve_sectors first")
    label = tuple(label)
    candidates = [i for i, lab in enumerate(d.sector_labels) if lab == label]
    if not candidates:
        raise SectorError(f"no state carries sector label {label}")
    lowest = min(d.eigenvalues[i] for i in candidates)
    tol = GROUP_RTOL * float(np.max(np.abs(d.eigenvalues)))
    return min(i for i in candidates if d.eigenvalues[i] <= lowest + tol)
