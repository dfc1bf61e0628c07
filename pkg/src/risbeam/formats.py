"""File formats: code JSON, report JSON, CSV tables, run manifests.

Serialization rules that make replays byte-identical:
  * JSON is written with sorted keys, two-space indent, a trailing
    newline, and allow_nan=False (non-finite values must be floored by
    the caller first).
  * CSV uses a header row, '.' decimal separator, LF line endings, and
    10 significant digits for floats.
  * Grid minima below 1e-15 linear serialize as the -150 dB floor plus
    a flag instead of -inf.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # python 3.10
    import tomli as tomllib

from ._version import __version__
from .ga import GaConfig, GaRun
from .metrics import DB_FLOOR, DB_FLOOR_LINEAR, MetricsReport
from .model import ArrayGeometry, ElementPattern, InvalidInputError, PhaseCode
from .sesim import SeBounds, SeReport, SimScenario

ENV_OUT_DIR = "RISBEAM_OUT_DIR"


def default_out_dir() -> str:
    return os.environ.get(ENV_OUT_DIR, ".")


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can emit them."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_json(path, obj) -> None:
    text = json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def fmt_sig(value) -> str:
    """One CSV cell: floats at 10 significant digits, everything else as str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.10g" % float(value)
    return str(value)


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt_sig(v) for v in row) + "\n")


def floored_db(linear: float) -> tuple[float, bool]:
    """(dB value, floored?) with the serialization floor applied."""
    if linear < DB_FLOOR_LINEAR:
        return DB_FLOOR, True
    return 10.0 * math.log10(linear), False


# ---------------------------------------------------------------- code files

CODE_FIELDS = ("m", "theta_h_design", "spacing_ratio", "phases_rad", "family", "params")


def code_to_dict(
    code: PhaseCode, geom: ArrayGeometry, family: str, params: dict | None = None
) -> dict:
    return {
        "m": code.m,
        "theta_h_design": float(geom.theta_h),
        "spacing_ratio": float(geom.spacing_ratio),
        "phases_rad": [float(p) for p in code.phases],
        "family": family,
        "params": params or {},
    }


def code_from_dict(doc: dict, origin: str = "<code>") -> tuple[PhaseCode, ArrayGeometry, str, dict]:
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{origin}: expected a JSON object")
    for field in CODE_FIELDS:
        if field not in doc:
            raise InvalidInputError(f"{origin}: missing required field {field!r}")
    m = doc["m"]
    phases = doc["phases_rad"]
    if not isinstance(m, int):
        raise InvalidInputError(f"{origin}: field 'm' must be an integer")
    if not isinstance(phases, list) or len(phases) != m:
        raise InvalidInputError(
            f"{origin}: field 'phases_rad' must be a list of exactly m={m} numbers"
        )
    try:
        code = PhaseCode(np.asarray(phases, dtype=np.float64))
        geom = ArrayGeometry(m, float(doc["spacing_ratio"]), float(doc["theta_h_design"]))
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{origin}: {exc}") from exc
    params = doc["params"]
    if not isinstance(params, dict):
        raise InvalidInputError(f"{origin}: field 'params' must be an object")
    return code, geom, str(doc["family"]), params


def read_code_file(path) -> tuple[PhaseCode, ArrayGeometry, str, dict]:
    return code_from_dict(read_json(path), origin=str(path))


# ------------------------------------------------------------------ reports

def geometry_to_dict(geom: ArrayGeometry) -> dict:
    return {
        "m": geom.m,
        "spacing_ratio": float(geom.spacing_ratio),
        "theta_h": float(geom.theta_h),
    }


def metrics_to_dict(report: MetricsReport) -> dict:
    db, floored = floored_db(report.a_min_linear)
    return {
        "a_min_db": db,
        "a_min_floored": floored,
        "a_min_linear": report.a_min_linear,
        "a_avg_linear": report.a_avg_linear,
        "a_avg_numeric": report.a_avg_numeric,
        "u_half": report.u_half,
        "grid_d": report.grid_d,
        "geometry": geometry_to_dict(report.geometry),
    }


def scenario_to_dict(s: SimScenario) -> dict:
    d = asdict(s)
    d["pattern"] = asdict(s.pattern)
    return d


def se_report_to_dict(report: SeReport) -> dict:
    return {
        "s_min": report.s_min,
        "s_mean": report.s_mean,
        "std_error": report.std_error,
        "ci95": [report.ci95[0], report.ci95[1]],
        "ecdf": [
            [float(v), float(p)]
            for v, p in zip(report.ecdf_values, report.ecdf_probs)
        ],
        "sample_count": report.sample_count,
        "scenario": scenario_to_dict(report.scenario),
        "code_phases_rad": [float(p) for p in report.code.phases],
        "geometry": geometry_to_dict(report.geometry),
    }


def se_bounds_to_dict(bounds: SeBounds) -> dict:
    return {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "epsilon_note": bounds.epsilon_note,
    }


def ga_config_to_dict(config: GaConfig) -> dict:
    return {
        "population_size": config.population_size,
        "generations": config.generations,
        "grid_d": config.grid_d,
        "crossover_weight_dist": config.crossover_weight_dist,
        "mutation_scale": config.mutation_scale,
        "mutation_prob": config.mutation_prob,
        "elitism_count": config.elitism_count,
        "seed": config.seed,
    }


def ga_run_to_dict(run: GaRun) -> dict:
    best_db, floored = floored_db(run.best_fitness)
    return {
        "best_phases_rad": [float(p) for p in run.best_code.phases],
        "best_fitness_linear": run.best_fitness,
        "best_fitness_db": best_db,
        "best_fitness_floored": floored,
        "trace": [[g, f] for g, f in run.trace],
        "uniform_fallback_generations": list(run.uniform_fallback_generations),
        "config": ga_config_to_dict(run.config),
    }


# ----------------------------------------------------------------- scenario

_SCENARIO_SCALARS = {
    "tx_power_dbm": float,
    "noise_power_dbm": float,
    "r_h_m": float,
    "r_min_m": float,
    "r_max_m": float,
    "theta_min": float,
    "theta_max": float,
    "ue_count": int,
    "path_loss_intercept_db": float,
    "path_loss_exponent_coeff": float,
    "seed": int,
}

_PATTERN_SCALARS = {
    "peak_gain_dbi": float,
    "theta0": float,
    "delta_theta": float,
    "floor_db": float,
}


def scenario_from_dict(doc: dict, origin: str = "<scenario>") -> SimScenario:
    kwargs = {}
    for key, value in doc.items():
        if key == "pattern":
            if not isinstance(value, dict):
                raise InvalidInputError(f"{origin}: 'pattern' must be a table")
            pat_kwargs = {}
            for pk, pv in value.items():
                if pk not in _PATTERN_SCALARS:
                    raise InvalidInputError(f"{origin}: unknown pattern field {pk!r}")
                pat_kwargs[pk] = _PATTERN_SCALARS[pk](pv)
            kwargs["pattern"] = ElementPattern(**pat_kwargs)
        elif key in _SCENARIO_SCALARS:
            kwargs[key] = _SCENARIO_SCALARS[key](value)
        else:
            known = ", ".join(sorted(_SCENARIO_SCALARS) + ["pattern"])
            raise InvalidInputError(f"{origin}: unknown scenario field {key!r}; known: {known}")
    return SimScenario(**kwargs)


def read_scenario_toml(path) -> SimScenario:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc
    return scenario_from_dict(doc, origin=str(path))


# ----------------------------------------------------------------- manifest

MANIFEST_FIELDS = ("command", "config", "tool_version", "timestamp", "outputs", "backend")


def write_manifest(out_dir, command: str, config: dict, outputs: list[str], backend: str) -> Path:
    """Record one run: full config echo plus the produced file names.

    Output entries are basenames relative to the manifest's directory.
    """
    path = Path(out_dir) / f"manifest_{command.replace(' ', '-')}.json"
    doc = {
        "command": command,
        "config": config,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "outputs": list(outputs),
        "backend": backend,
    }
    write_json(path, doc)
    return path


def read_manifest(path) -> dict:
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{path}: expected a JSON object")
    for field in MANIFEST_FIELDS:
        if field not in doc:
            raise InvalidInputError(f"{path}: missing manifest field {field!r}")
    return doc
