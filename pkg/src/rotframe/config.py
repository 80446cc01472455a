"""Scenario configuration: JSON parsing, validation and defaults."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

from .models import IonParams, ca40_preset, ms_coupling
from .rates import BathSpec, CouplingProfile, Profile

SCENARIOS = ("TWO_QUBIT_RATES", "COMPASS_DECAY", "SUBRADIANCE", "STEADY_STATE_CONTRAST")
FRAMES = ("LAB", "INTERACTION")

_TOP_KEYS = {
    "scenario", "J", "nu", "gamma", "T", "ion", "frame", "spectral", "coupling",
    "cross_coeff", "fifth_power", "t_max", "n_points", "output",
}
_ION_KEYS = {"eta", "Omega", "delta", "omega_s"}
_PROFILE_KEYS = {
    "FLAT": {"kind", "value"},
    "OHMIC": {"kind", "A", "wc"},
    "CUBIC": {"kind", "A"},
    "TABULATED": {"kind", "points"},
}
_OUTPUT_KEYS = {"csv", "json"}


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"field '{field_name}': {message}" if field_name else message)


@dataclass
class ScenarioConfig:
    scenario: str
    J: float
    nu: float
    gamma: float
    T: float
    ion: dict[str, float]
    frame: str
    spectral: dict[str, Any]
    coupling: dict[str, dict[str, Any]]
    cross_coeff: float
    fifth_power: bool
    t_max: float
    n_points: int
    output: dict[str, str]
    defaults_applied: list[str] = field(default_factory=list)

    def resolved(self) -> dict[str, Any]:
        """Plain-dict view of every setting, for provenance blocks."""
        out = asdict(self)
        out.pop("defaults_applied")
        return out

    def bath(self, frame: str | None = None, T: float | None = None) -> BathSpec:
        return BathSpec(
            temperature=self.T if T is None else T,
            spectral=_profile(self.spectral),
            coupling=CouplingProfile(*(_profile(self.coupling[a]) for a in "xyz")),
            frame=frame or self.frame,
            nu=self.nu,
        )


def _profile(d: dict[str, Any]) -> Profile:
    kind = d["kind"]
    if kind == "TABULATED":
        return Profile.tabulated([tuple(p) for p in d["points"]])
    return Profile(**d)


def _number(value, name: str, *, positive=False, nonneg=False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(name, "must be finite")
    if positive and not value > 0:
        raise ConfigError(name, f"must be > 0, got {value}")
    if nonneg and not value >= 0:
        raise ConfigError(name, f"must be >= 0, got {value}")
    return value


def _check_keys(obj, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(where, f"expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        prefix = f"{where}." if where else ""
        raise ConfigError(f"{prefix}{unknown[0]}", "unknown key")


def _parse_profile(obj, where: str) -> dict[str, Any]:
    if not isinstance(obj, dict):
        raise ConfigError(where, "expected an object with a 'kind'")
    kind = obj.get("kind")
    if not isinstance(kind, str) or kind.upper() not in _PROFILE_KEYS:
        raise ConfigError(f"{where}.kind", f"must be one of {sorted(_PROFILE_KEYS)}, got {kind!r}")
    kind = kind.upper()
    _check_keys(obj, _PROFILE_KEYS[kind], where)
    out: dict[str, Any] = {"kind": kind}
    if kind == "FLAT":
        out["value"] = _number(obj.get("value", 1.0), f"{where}.value", nonneg=True)
    elif kind == "OHMIC":
        out["A"] = _number(obj.get("A", 1.0), f"{where}.A", nonneg=True)
        out["wc"] = _number(obj.get("wc", 1.0), f"{where}.wc", positive=True)
    elif kind == "CUBIC":
        out["A"] = _number(obj.get("A", 1.0), f"{where}.A", nonneg=True)
    else:
        pts = obj.get("points")
        if not isinstance(pts, list) or not pts:
            raise ConfigError(f"{where}.points", "expected a non-empty list of [w, value] pairs")
        parsed = []
        for k, pt in enumerate(pts):
            if not isinstance(pt, list) or len(pt) != 2:
                raise ConfigError(f"{where}.points[{k}]", "expected a [w, value] pair")
            parsed.append([_number(pt[0], f"{where}.points[{k}][0]"),
                           _number(pt[1], f"{where}.points[{k}][1]", nonneg=True)])
        out["points"] = parsed
        try:
            _profile(out)
        except ValueError as exc:
            raise ConfigError(f"{where}.points", str(exc)) from None
    return out


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a JSON scenario document, filling in defaults.

    Unset ion-drive fields, nu and gamma come from the Ca-40 preset; J
    defaults to the Molmer-Sorensen coupling of that drive.  Every default
    that was used is listed in ``defaults_applied``.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    _check_keys(raw, _TOP_KEYS, "")
    applied: list[str] = []

    def get(key, default):
        if key in raw:
            return raw[key]
        applied.append(key)
        return default

    scenario = raw.get("scenario")
    if scenario is None:
        raise ConfigError("scenario", "required")
    if not isinstance(scenario, str) or scenario.upper() not in SCENARIOS:
        raise ConfigError("scenario", f"unknown scenario {scenario!r}; expected one of {list(SCENARIOS)}")
    scenario = scenario.upper()

    preset = ca40_preset()
    ion_raw = raw.get("ion", {})
    _check_keys(ion_raw, _ION_KEYS, "ion")
    ion = {}
    for key in sorted(_ION_KEYS):
        if key in ion_raw:
            ion[key] = _number(ion_raw[key], f"ion.{key}", positive=True)
        else:
            ion[key] = getattr(preset, key)
            applied.append(f"ion.{key}")
    nu = _number(get("nu", preset.nu), "nu", positive=True)
    gamma = _number(get("gamma", preset.gamma), "gamma", positive=True)
    try:
        params = IonParams(nu=nu, gamma=gamma, **ion)
    except ValueError as exc:
        raise ConfigError("ion", str(exc)) from None

    if "J" in raw:
        J = _number(raw["J"], "J", positive=True)
    else:
        try:
            J = ms_coupling(params)
        except ValueError as exc:
            raise ConfigError("ion", str(exc)) from None
        applied.append("J")
    if not J < nu:
        raise ConfigError("J", f"must be smaller than nu ({nu:.6g}), got {J:.6g}")

    # the thermalization contrast needs a finite temperature to be informative
    T = _number(get("T", J if scenario == "STEADY_STATE_CONTRAST" else 0.0), "T", nonneg=True)

    frame = get("frame", "INTERACTION")
    if not isinstance(frame, str) or frame.upper() not in FRAMES:
        raise ConfigError("frame", f"must be one of {list(FRAMES)}, got {frame!r}")
    frame = frame.upper()

    spectral = _parse_profile(get("spectral", {"kind": "FLAT", "value": 1.0}), "spectral")

    # flat couplings normalized so one bare qubit decays at gamma when rho = 1
    alpha0 = math.sqrt(gamma / (4 * math.pi))
    coupling_raw = get("coupling", {})
    _check_keys(coupling_raw, {"x", "y", "z"}, "coupling")
    coupling = {}
    for axis in "xyz":
        if axis in coupling_raw:
            coupling[axis] = _parse_profile(coupling_raw[axis], f"coupling.{axis}")
        else:
            coupling[axis] = {"kind": "FLAT", "value": alpha0}
            if "coupling" in raw:
                applied.append(f"coupling.{axis}")

    cross = _number(get("cross_coeff", 0.0), "cross_coeff")
    if not 0.0 <= cross <= 1.0:
        raise ConfigError("cross_coeff", f"must lie in [0, 1], got {cross}")
    fifth = get("fifth_power", False)
    if not isinstance(fifth, bool):
        raise ConfigError("fifth_power", f"expected true or false, got {fifth!r}")

    t_max = _number(get("t_max", 5.0), "t_max", positive=True)
    n_points = get("n_points", 101)
    if isinstance(n_points, bool) or not isinstance(n_points, int):
        raise ConfigError("n_points", f"expected an integer, got {n_points!r}")
    if n_points < 2:
        raise ConfigError("n_points", f"must be >= 2, got {n_points}")

    stem = scenario.lower()
    output_raw = get("output", {})
    _check_keys(output_raw, _OUTPUT_KEYS, "output")
    output = {}
    for key in sorted(_OUTPUT_KEYS):
        value = output_raw.get(key, f"{stem}.{key}")
        if not isinstance(value, str) or not value:
            raise ConfigError(f"output.{key}", "expected a non-empty path string")
        output[key] = value

    return ScenarioConfig(
        scenario=scenario, J=J, nu=nu, gamma=gamma, T=T, ion=ion, frame=frame,
        spectral=spectral, coupling=coupling, cross_coeff=cross, fifth_power=fifth,
        t_max=t_max, n_points=n_points, output=output, defaults_applied=applied,
    )
