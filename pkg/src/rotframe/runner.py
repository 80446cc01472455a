"""Execute configured scenarios and write CSV/JSON results."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .config import ScenarioConfig
from .dynamics import StationaryStateError, evolve, observables, steady_state, total_variation
from .eigensolver import diagonalize_hermitian, ground_state_of_sector, resolve_sectors
from .models import build_compass4, build_xy_pair, compass_symmetry_sectors
from .operators import PauliString
from .rates import (
    closed_form_lab,
    closed_form_rotating,
    closed_form_rotating_zero_t,
    emission_rate_matrix,
    golden_rule_matrix,
    out_rate,
)

CSV_HEADER = ["t_gamma", "p_logical0", "p_sector_pp", "ref_exp", "tv_to_uniform"]
LOGICAL_ZERO_SECTOR = (1, 1)


def fmt(x: float) -> str:
    """Locale-independent 12-significant-digit decimal."""
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def rel_diff(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def provenance(cfg: ScenarioConfig) -> dict[str, Any]:
    return {
        "tool": "rotframe",
        "version": __version__,
        "config": cfg.resolved(),
        "defaults_applied": list(cfg.defaults_applied),
        "seed": "none: the computation draws no random numbers, so identical configs give identical output",
    }


def _xy_decomposition(J: float):
    # Z1Z2 splits the degenerate |00>, |11> pair into product states
    return resolve_sectors(diagonalize_hermitian(build_xy_pair(J)), [PauliString.from_label("ZZ")])


def _compass_decomposition(J: float):
    return resolve_sectors(diagonalize_hermitian(build_compass4(J)), compass_symmetry_sectors())


def _singlet_index(d) -> int:
    return int(np.argmin(d.eigenvalues))


def _two_qubit_rates(cfg: ScenarioConfig) -> dict[str, Any]:
    d = _xy_decomposition(cfg.J)
    s = _singlet_index(d)
    lab = cfg.bath("LAB")
    rot = cfg.bath("INTERACTION")
    alpha, rho = lab.coupling, lab.spectral

    lab_rate = out_rate(golden_rule_matrix(d, lab), s)
    lab_ref = closed_form_lab(cfg.J, cfg.T, alpha, rho)
    lab0 = out_rate(golden_rule_matrix(d, cfg.bath("LAB", T=0.0)), s)
    rot_rate = out_rate(golden_rule_matrix(d, rot), s)
    rot_ref = closed_form_rotating(cfg.J, cfg.nu, cfg.T, alpha, rho)
    rot0 = out_rate(golden_rule_matrix(d, cfg.bath("INTERACTION", T=0.0)), s)
    rot0_ref = closed_form_rotating_zero_t(cfg.J, cfg.nu, alpha, rho)

    bare = diagonalize_hermitian(np.zeros((2, 2)))
    gamma_engine = out_rate(golden_rule_matrix(bare, cfg.bath("INTERACTION", T=0.0)), 0)
    return {
        "singlet_energy": float(d.eigenvalues[s]),
        "lab": {"T": cfg.T, "engine": lab_rate, "closed_form": lab_ref, "rel_diff": rel_diff(lab_rate, lab_ref)},
        "lab_zero_T": {"engine": lab0},
        "interaction": {"T": cfg.T, "engine": rot_rate, "closed_form": rot_ref, "rel_diff": rel_diff(rot_rate, rot_ref)},
        "interaction_zero_T": {"engine": rot0, "closed_form": rot0_ref, "rel_diff": rel_diff(rot0, rot0_ref)},
        "single_qubit_decay_rate": gamma_engine,
        "zero_T_rate_over_single_qubit": rot0 / gamma_engine if gamma_engine > 0 else None,
    }


def _compass_rates(cfg: ScenarioConfig, d) -> np.ndarray:
    if cfg.frame == "INTERACTION":
        return emission_rate_matrix(d, cfg.gamma, cfg.cross_coeff, cfg.nu, cfg.fifth_power)
    return golden_rule_matrix(d, cfg.bath("LAB"))


def compass_decay(cfg: ScenarioConfig) -> tuple[list[list[float]], dict[str, Any]]:
    """Trajectory rows (time in units of 1/gamma) and a summary dict."""
    d = _compass_decomposition(cfg.J)
    W = _compass_rates(cfg, d)
    logical = ground_state_of_sector(d, LOGICAL_ZERO_SECTOR)
    p0 = np.zeros(d.dim)
    p0[logical] = 1.0
    t_gamma = np.linspace(0.0, cfg.t_max, cfg.n_points)
    traj = evolve(W, p0, t_gamma / cfg.gamma)
    obs = observables(traj, d, logical, LOGICAL_ZERO_SECTOR, cfg.gamma)
    uniform = np.full(d.dim, 1.0 / d.dim)
    tv = [total_variation(p, uniform) for p in traj.states]
    rows = [
        [t_gamma[k], obs["logical0"][k], obs["sector_pop"][k], obs["reference_exp"][k], tv[k]]
        for k in range(len(t_gamma))
    ]
    try:
        ss = steady_state(W)
        steady = {"populations": ss.tolist(), "max_abs_dev_from_uniform": float(np.max(np.abs(ss - uniform)))}
    except StationaryStateError as exc:
        steady = {"populations": None, "error": str(exc)}
    summary = {
        "logical_index": logical,
        "eigenvalues": d.eigenvalues.tolist(),
        "sector_labels": [list(lab) for lab in d.sector_labels],
        "steady_state": steady,
        "tv_to_uniform_at_t_max": tv[-1],
        "p_logical0_at_t_max": float(obs["logical0"][-1]),
        "p_sector_pp_at_t_max": float(obs["sector_pop"][-1]),
    }
    return rows, summary


def _subradiance(cfg: ScenarioConfig) -> dict[str, Any]:
    d = _xy_decomposition(cfg.J)
    s = _singlet_index(d)
    coeffs = sorted({0.0, 0.01, 1.0, cfg.cross_coeff})
    out = []
    for c in coeffs:
        W = emission_rate_matrix(d, cfg.gamma, c, cfg.nu, cfg.fifth_power)
        rate = out_rate(W, s)
        out.append({"cross_coeff": c, "singlet_rate": rate, "ratio_to_gamma": rate / cfg.gamma})
    return {"gamma": cfg.gamma, "singlet_emission": out}


def boltzmann(energies, T: float) -> np.ndarray:
    e = np.asarray(energies, dtype=float)
    if T == 0:
        w = (e <= e.min() + 1e-9 * max(1.0, np.abs(e).max())).astype(float)
    else:
        w = np.exp(-(e - e.min()) / T)
    return w / w.sum()


def _steady_state_contrast(cfg: ScenarioConfig) -> dict[str, Any]:
    d = _xy_decomposition(cfg.J)
    s = _singlet_index(d)
    target = boltzmann(d.eigenvalues, cfg.T)
    lab = steady_state(golden_rule_matrix(d, cfg.bath("LAB")))
    rot = steady_state(golden_rule_matrix(d, cfg.bath("INTERACTION")))
    mask = target > 1e-300
    dc = _compass_decomposition(cfg.J)
    compass = steady_state(emission_rate_matrix(dc, cfg.gamma, cfg.cross_coeff, cfg.nu, cfg.fifth_power))
    return {
        "xy_pair_eigenvalues": d.eigenvalues.tolist(),
        "boltzmann": target.tolist(),
        "lab": {
            "steady_state": lab.tolist(),
            "max_rel_residual_vs_boltzmann": float(np.max(np.abs(lab[mask] - target[mask]) / target[mask])),
        },
        "interaction": {
            "steady_state": rot.tolist(),
            "singlet_population": float(rot[s]),
            "tv_to_boltzmann": total_variation(rot, target),
        },
        "compass_interaction": {
            "steady_state": compass.tolist(),
            "max_abs_dev_from_uniform": float(np.max(np.abs(compass - 1.0 / dc.dim))),
        },
    }


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def render_csv(rows: list[list[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def run_scenario(cfg: ScenarioConfig, out_dir: str | Path = ".") -> list[Path]:
    """Run ``cfg`` and write its outputs under ``out_dir``; return written paths."""
    out_dir = Path(out_dir)
    report: dict[str, Any] = {"scenario": cfg.scenario, "provenance": provenance(cfg)}
    written = []
    if cfg.scenario == "COMPASS_DECAY":
        rows, summary = compass_decay(cfg)
        csv_path = out_dir / cfg.output["csv"]
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_path.write_bytes(render_csv(rows).encode("ascii"))
        written.append(csv_path)
        report["summary"] = summary
        report["csv"] = cfg.output["csv"]
    elif cfg.scenario == "TWO_QUBIT_RATES":
        report["rates"] = _two_qubit_rates(cfg)
    elif cfg.scenario == "SUBRADIANCE":
        report["subradiance"] = _subradiance(cfg)
    else:
        report["contrast"] = _steady_state_contrast(cfg)
    json_path = out_dir / cfg.output["json"]
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_bytes(_dump_json(report).encode("utf-8"))
    written.append(json_path)
    return written
