"""Experiment configuration: YAML schema, validation, and resolution.

Units at the boundary follow the lab quoting style: rates as value/2π in
GHz, times in ns, wavelengths in nm, phases in units of π.  Unknown keys
are rejected everywhere.
"""

from dataclasses import dataclass, field

import numpy as np
import yaml
from jsonschema import Draft202012Validator

from . import presets
from .errors import ConfigError
from .instrument import DetectorModel, NoiseAveragingPlan
from .model import DriveConfig, EmitterParams, PulseSpec, WaveguideSystem
from .units import ghz_to_angular

EXPERIMENTS = (
    "transmission-scan", "transmission-saturation", "lifetime",
    "phase-sweep", "detuning-sweep", "g2-cw", "g2-pulsed", "g2-map",
    "scalability", "scalability-heatmap",
)

_RANGE = {
    "type": "object",
    "additionalProperties": False,
    "oneOf": [
        {"required": ["start", "stop", "points"]},
        {"required": ["values"]},
    ],
    "properties": {
        "start": {"type": "number"},
        "stop": {"type": "number"},
        "points": {"type": "integer", "minimum": 1},
        "log": {"type": "boolean"},
        "values": {"type": "array", "items": {"type": "number"},
                   "minItems": 1},
    },
}

_EMITTER = {
    "type": "object",
    "additionalProperties": False,
    "required": ["gamma_ghz", "beta"],
    "properties": {
        "gamma_ghz": {"type": "number", "exclusiveMinimum": 0},
        "beta": {"type": "number", "minimum": 0, "maximum": 1},
        "detuning_ghz": {"type": "number"},
        "dephasing_ghz": {"type": "number", "minimum": 0},
        "spectral_diffusion_ghz": {"type": "number", "minimum": 0},
        "permanent_dipole_ghz_per_mv": {"type": "number"},
        "fano_xi": {"type": "number"},
    },
}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["experiment"],
    "properties": {
        "experiment": {"enum": list(EXPERIMENTS)},
        "seed": {"type": "integer", "minimum": 0},
        "output": {"type": "string"},
        "system": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "coupling_phase_over_pi": {"type": "number"},
                "emitters": {"type": "array", "items": _EMITTER,
                             "minItems": 1, "maxItems": 12},
            },
        },
        "drive": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mode": {"enum": ["cw", "pulsed"]},
                "rabi_ghz": {"type": "array", "items": {"type": "number"}},
                "weights": {"type": "array", "items": {"type": "number"}},
                "phase_over_pi": {"type": "array",
                                  "items": {"type": "number"}},
                "pulse": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "sigma_ns": {"type": "number", "exclusiveMinimum": 0},
                        "area_over_pi": {"type": "number", "minimum": 0},
                        "period_ns": {"type": "number", "exclusiveMinimum": 0},
                    },
                },
            },
        },
        "detector": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "irf_sigma_ns": {"type": "number", "minimum": 0},
                "bin_ns": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "noise": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "scheme": {"enum": ["none", "gauss_hermite", "monte_carlo"]},
                "nodes": {"type": "integer", "minimum": 1},
                "samples": {"type": "integer", "minimum": 1},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "detuning1_ghz": _RANGE,
                "detuning2_ghz": _RANGE,
                "theta_over_pi": _RANGE,
                "rabi_over_gamma": _RANGE,
                "mu_qd": _RANGE,
                "delta_over_sigma": _RANGE,
                "tau_max_ns": {"type": "number", "exclusiveMinimum": 0},
                "t_max_ns": {"type": "number", "exclusiveMinimum": 0},
                "window_ns": {"type": "number", "exclusiveMinimum": 0},
                "dt_ns": {"type": "number", "exclusiveMinimum": 0},
                "integration_windows_ns": {
                    "type": "array", "items": {"type": "number"}},
                "pairs": {"type": "array",
                          "items": {"enum": ["LL", "RR", "LR", "RL"]}},
                "ports": {"enum": ["LL", "RR", "LR", "RL"]},
            },
        },
        "scalability": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mu_qd": {"type": "number", "exclusiveMinimum": 0},
                "sigma_qd_nm": {"type": "number", "exclusiveMinimum": 0},
                "delta_lambda_nm": {"type": "number", "minimum": 0},
                "n_reg": {"type": "integer", "minimum": 1},
                "n_set": {"type": "integer", "minimum": 1},
                "n_wg": {"type": "integer", "minimum": 1},
                "runs": {"type": "integer", "minimum": 1},
                "mode": {"enum": ["consecutive", "window_distinct", "both"]},
            },
        },
    },
}


@dataclass
class ResolvedConfig:
    """Validated configuration with physics objects attached."""
    experiment: str
    seed: int
    output: str
    system: WaveguideSystem
    drive: DriveConfig
    detector: DetectorModel
    noise: NoiseAveragingPlan  # None when scheme == 'none'
    grid: dict
    scalability: dict
    raw: dict = field(default_factory=dict)


def load_config(path):
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    return data


def validate_config(data):
    """Schema-validate a raw config dict; returns the list of errors."""
    validator = Draft202012Validator(SCHEMA)
    errors = []
    for err in sorted(validator.iter_errors(data), key=lambda e: list(e.path)):
        loc = "/".join(str(p) for p in err.path) or "<root>"
        errors.append({"path": loc, "message": err.message})
    return errors


def expand_range(spec, default=None):
    """Materialize a grid axis from {start,stop,points[,log]} or {values}."""
    if spec is None:
        spec = default
    if spec is None:
        raise ConfigError("missing grid axis")
    if isinstance(spec, (list, tuple, np.ndarray)):
        return np.asarray(spec, dtype=float)
    if "values" in spec:
        return np.asarray(spec["values"], dtype=float)
    if spec.get("log"):
        return np.geomspace(spec["start"], spec["stop"], spec["points"])
    return np.linspace(spec["start"], spec["stop"], spec["points"])


def _build_emitter(entry):
    return EmitterParams(
        gamma_total=ghz_to_angular(entry["gamma_ghz"]),
        beta=entry["beta"],
        detuning=ghz_to_angular(entry.get("detuning_ghz", 0.0)),
        dephasing=ghz_to_angular(entry.get("dephasing_ghz", 0.0)),
        spectral_diffusion_sigma=ghz_to_angular(
            entry.get("spectral_diffusion_ghz", 0.0)),
        permanent_dipole=entry.get("permanent_dipole_ghz_per_mv", 0.0),
        fano_xi=entry.get("fano_xi", 0.0),
    )


def _build_system(section):
    if section is None:
        return presets.qd_pair()
    emitters = section.get("emitters")
    if emitters is None:
        built = presets.qd_pair().emitters
    else:
        built = tuple(_build_emitter(e) for e in emitters)
    phi = np.pi * section.get("coupling_phase_over_pi",
                              presets.COUPLING_PHASE / np.pi)
    if len(built) == 1:
        phi = 0.0
    return WaveguideSystem(built, phi)


def _build_drive(section, system, default_mode, default_rabi_ghz=None,
                 default_weights=None, default_pulse=None):
    n = system.n
    section = section or {}
    mode = section.get("mode", default_mode)
    phases = tuple(np.pi * p for p in section.get(
        "phase_over_pi", [0.0] * n))
    if len(phases) != n:
        raise ConfigError("drive.phase_over_pi length mismatch")
    if mode == "cw":
        if "weights" in section:
            raise ConfigError("drive.weights is only valid in pulsed mode")
        rabi_ghz = section.get("rabi_ghz", default_rabi_ghz)
        if rabi_ghz is None:
            raise ConfigError("cw drive requires drive.rabi_ghz")
        if len(rabi_ghz) != n:
            raise ConfigError("drive.rabi_ghz length mismatch")
        return DriveConfig(tuple(ghz_to_angular(x) for x in rabi_ghz),
                           phases, "cw")
    if "rabi_ghz" in section:
        raise ConfigError("drive.rabi_ghz is only valid in cw mode; "
                          "use drive.weights for pulses")
    weights = section.get("weights", default_weights)
    if weights is None:
        weights = [1.0] * n
    if len(weights) != n:
        raise ConfigError("drive.weights length mismatch")
    p = dict(default_pulse or {})
    p.update(section.get("pulse", {}))
    pulse = PulseSpec(sigma_t=p.get("sigma_ns", 0.03),
                      area=np.pi * p.get("area_over_pi", 1.0),
                      repetition_period=p.get("period_ns", 13.6))
    drive = DriveConfig(tuple(weights), phases, "pulsed", pulse)
    drive.validate_against(system)
    return drive


_DEFAULT_DRIVES = {
    # weak resonant CW drive of emitter 1 (units: Omega/2pi GHz)
    "g2-cw": ("cw", "weak_left"),
    "lifetime": ("pulsed", [1.0, 0.0]),
    "detuning-sweep": ("pulsed", [1.0, 0.0]),
    "phase-sweep": ("pulsed", "weak_collective"),
    "g2-pulsed": ("pulsed", [1.0, 1.0]),
    "g2-map": ("pulsed", [1.0, 1.0]),
}


def resolve_config(data):
    """Validate a raw dict and construct the physics objects."""
    errors = validate_config(data)
    if errors:
        raise ConfigError("config failed schema validation", details=errors)
    experiment = data["experiment"]
    system = _build_system(data.get("system"))

    drive = None
    if experiment in _DEFAULT_DRIVES:
        mode, default = _DEFAULT_DRIVES[experiment]
        kw = {}
        if default == "weak_left":
            gamma1_ghz = system.emitters[0].gamma_total / (2 * np.pi)
            kw["default_rabi_ghz"] = [gamma1_ghz / 16.0] + \
                [0.0] * (system.n - 1)
        elif default == "weak_collective":
            kw["default_weights"] = [1.0] * system.n
            kw["default_pulse"] = {"sigma_ns": 0.005, "area_over_pi": 0.05,
                                   "period_ns": 13.6}
        elif isinstance(default, list):
            kw["default_weights"] = (default + [0.0] * system.n)[:system.n]
        drive = _build_drive(data.get("drive"), system, mode, **kw)

    det = data.get("detector", {})
    detector = DetectorModel(
        irf_sigma=det.get("irf_sigma_ns", presets.IRF_SIGMA_NS),
        bin_width=det.get("bin_ns", 0.01))

    noise_sec = data.get("noise", {})
    scheme = noise_sec.get("scheme", "none")
    seed = data.get("seed", 0)
    noise = None
    if scheme == "gauss_hermite":
        noise = NoiseAveragingPlan("gauss_hermite",
                                   noise_sec.get("nodes", 11))
    elif scheme == "monte_carlo":
        noise = NoiseAveragingPlan("monte_carlo",
                                   noise_sec.get("samples", 2000), seed=seed)

    scal = dict(data.get("scalability", {}))
    return ResolvedConfig(
        experiment=experiment,
        seed=seed,
        output=data.get("output", "results"),
        system=system,
        drive=drive,
        detector=detector,
        noise=noise,
        grid=dict(data.get("grid", {})),
        scalability=scal,
        raw=data,
    )
