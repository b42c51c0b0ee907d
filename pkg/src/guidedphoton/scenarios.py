"""Declarative scenarios: JSON configuration, dispatch, and deterministic output.

A config is a flat JSON object. ``kind`` selects the scenario; every other key
must belong to that kind's schema (see ``SCHEMAS``). Randomised scenarios draw
from numpy's PCG64 generator seeded with ``seed``.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from . import minkowski as mk
from . import modes, propagate, spinor
from .errors import ConfigError, GuidedPhotonError

OUTPUT_DIR_ENV = "GUIDEDPHOTON_OUTPUT_DIR"

COMMON = {"kind": None, "name": None, "seed": 0}
GUIDE = {"b1": 1.0, "b2": 0.5, "plasma_frequency": 0.0}
PACKET = {
    "omega_c": None,
    "N": 4096,
    "L": None,
    "k0": 0.0,
    "sigma": None,
    "T": 30.0,
    "sample_dt": 0.1,
    "center": None,
}

# value None marks a required key (or one derived when absent, see _derive)
SCHEMAS: dict[str, dict[str, Any]] = {
    "mode_table": {**COMMON, "b1": None, "b2": None, "plasma_frequency": 0.0, "n_max": 3, "s_max": 2},
    "dispersion_scan": {**COMMON, **GUIDE, "n": 1, "s": 0, "k3_min": 0.1, "k3_max": 20.0, "points": 50},
    "packet_run": {**COMMON, **PACKET, "branch": "plus", "velocity_tolerance": 0.01},
    "zbw_run": {**COMMON, **PACKET, "k0": 0.0, "T": 20.0, "sample_dt": 0.02, "branch": "both", "frequency_tolerance": 0.02},
    "tunneling_scan": {
        **COMMON,
        "omega": None,
        "lead_cutoff": None,
        "barrier_cutoff": None,
        "length_min": 0.5,
        "length_max": 8.0,
        "points": 32,
        "tail_from": 4.0,
        "slope_tolerance": 0.02,
    },
    "identity_suite": {**COMMON, "samples": 100, "tolerance": 1e-12},
}

DERIVED = {"L", "sigma", "center", "name"}


@dataclass
class ScenarioConfig:
    kind: str
    params: dict[str, Any]

    @property
    def seed(self) -> int:
        return int(self.params["seed"])

    @property
    def name(self) -> str:
        return self.params["name"]

    def __getitem__(self, key):
        return self.params[key]

    def echo(self) -> dict[str, Any]:
        return {"kind": self.kind, **{k: v for k, v in sorted(self.params.items()) if k != "kind"}}


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    columns: dict[str, list[float]] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    wall_time: float = 0.0

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"column lengths differ: {lengths}")

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def check(self, name: str, passed: bool, detail: str):
        self.verdicts.append(Verdict(name, bool(passed), detail))

    def metadata(self) -> dict[str, Any]:
        # wall time is reported on stderr only: files must be byte-identical
        return {
            "config": self.config.echo(),
            "versions": {"guidedphoton": __version__, "numpy": np.__version__},
            "passed": self.passed,
        }


# ---------------------------------------------------------------- parsing


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}", path=key)
        seen[key] = value
    return seen


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def parse_config(text: str, seed: int | None = None) -> ScenarioConfig:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level must be a JSON object")
    kind = raw.get("kind")
    if kind not in SCHEMAS:
        raise ConfigError(f"unknown or missing kind {kind!r}; expected one of {sorted(SCHEMAS)}", path="kind")
    schema = SCHEMAS[kind]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown key(s) for {kind}: {unknown}", path=unknown[0])
    params = {key: raw.get(key, default) for key, default in schema.items()}
    if seed is not None:
        params["seed"] = seed
    missing = [k for k, v in params.items() if v is None and k not in DERIVED]
    if missing:
        raise ConfigError(f"missing required parameter(s): {missing}", path=missing[0])
    _validate(kind, params)
    _derive(kind, params)
    return ScenarioConfig(kind, params)


def _validate(kind, params):
    for key, value in params.items():
        if key in ("kind", "name", "branch") or value is None:
            continue
        if not _is_number(value):
            raise ConfigError(f"expected a number, got {value!r}", path=key)
        if not math.isfinite(value):
            raise ConfigError("must be finite", path=key)
    for key in ("seed", "n_max", "s_max", "n", "s", "points", "N", "samples"):
        if key in params and not isinstance(params[key], int):
            raise ConfigError(f"must be an integer, got {params[key]!r}", path=key)
    if "N" in params:
        n = params["N"]
        if n < 64 or n & (n - 1):
            raise ConfigError(f"must be a power of two >= 64, got {n}", path="N")
    if "branch" in params and params["branch"] not in ("plus", "minus", "both"):
        raise ConfigError(f"must be plus, minus or both, got {params['branch']!r}", path="branch")
    if params.get("name") is not None and not isinstance(params["name"], str):
        raise ConfigError("must be a string", path="name")
    for key in ("points", "samples", "n_max"):
        if key in params and params[key] < 1:
            raise ConfigError("must be >= 1", path=key)


def _derive(kind, params):
    if params.get("name") is None:
        params["name"] = kind
    if "omega_c" in params:
        wc = params["omega_c"]
        if params["L"] is None:
            params["L"] = 200.0 / wc
        if params["sigma"] is None:
            params["sigma"] = 10.0 / wc


# ---------------------------------------------------------------- dispatch


def _mode_table(cfg: ScenarioConfig, result: ScenarioResult):
    guide = modes.WaveguideSpec(cfg["b1"], cfg["b2"], cfg["plasma_frequency"])
    rows = modes.mode_table(guide, cfg["n_max"], cfg["s_max"])
    for key in ("n", "s", "cutoff", "mass", "compton"):
        result.columns[key] = [float(r[key]) for r in rows]
    lowest = min(r["cutoff"] for r in rows)
    result.check(
        "lowest cutoff is (1,0)",
        math.isclose(lowest, math.pi / guide.b1, rel_tol=1e-15),
        f"min cutoff {lowest!r} vs pi/b1 {math.pi / guide.b1!r}",
    )


def _dispersion_scan(cfg, result):
    guide = modes.WaveguideSpec(cfg["b1"], cfg["b2"], cfg["plasma_frequency"])
    mass = modes.effective_mass(guide, modes.ModeIndex(cfg["n"], cfg["s"]))
    k3 = np.linspace(cfg["k3_min"], cfg["k3_max"], cfg["points"])
    cols = {"k3": [], "omega": [], "v_g": [], "v_p": [], "vg_vp": [], "energy_from_velocity": []}
    worst_product = worst_energy = 0.0
    for k in k3:
        omega = modes.dispersion_omega(mass, float(k))
        vg = modes.group_velocity(omega, mass)
        vp = modes.phase_velocity(omega, mass) if k > 0 else math.inf
        energy = modes.energy_from_velocity(mass, vg)
        for key, val in zip(cols, (k, omega, vg, vp, vg * vp, energy)):
            cols[key].append(float(val))
        if k > 0:
            worst_product = max(worst_product, abs(vg * vp - 1.0))
        worst_energy = max(worst_energy, abs(energy - omega) / omega)
    result.columns.update(cols)
    result.check("v_g * v_p = 1 within 1e-14", worst_product <= 1e-14, f"max deviation {worst_product:.3e}")
    result.check("E(v_g) = omega within 1e-12", worst_energy <= 1e-12, f"max relative deviation {worst_energy:.3e}")


def _packet(cfg):
    grid = propagate.Grid1D(cfg["L"], cfg["N"])
    center = cfg["center"] if cfg["center"] is not None else grid.length / 4 if cfg["branch"] == "plus" else grid.length / 2
    packet = propagate.init_gaussian_packet(grid, cfg["k0"], cfg["sigma"], cfg["omega_c"], cfg["branch"], center)
    return propagate.record_trajectory(packet, cfg["omega_c"], cfg["T"], cfg["sample_dt"])


def _trajectory_columns(traj, result):
    result.columns["t"] = traj.t.tolist()
    result.columns["centroid"] = traj.centroid.tolist()
    result.columns["norm"] = traj.norm.tolist()
    result.columns["width"] = traj.width.tolist()


def _packet_run(cfg, result):
    traj = _packet(cfg)
    _trajectory_columns(traj, result)
    wc, k0 = cfg["omega_c"], cfg["k0"]
    expected = k0 / math.hypot(k0, wc)
    if cfg["branch"] == "minus":
        expected = -expected
    fitted = propagate.fit_group_velocity(traj)
    tol = cfg["velocity_tolerance"]
    if cfg["branch"] == "both" or expected == 0:
        ok = abs(fitted) <= 1e-3
        detail = f"fitted {fitted:.6g}, expected 0 within 1e-3"
    else:
        ok = abs(fitted - expected) <= tol * abs(expected)
        detail = f"fitted {fitted:.6g}, expected {expected:.6g} within {tol:.0%}"
    result.check("packet velocity matches group velocity", ok, detail)
    drift = float(np.max(np.abs(traj.norm - traj.norm[0])))
    result.check("norm conserved within 1e-12", drift <= 1e-12, f"max drift {drift:.3e}")


def _zbw_run(cfg, result):
    traj = _packet(cfg)
    _trajectory_columns(traj, result)
    expected = 2 * math.hypot(cfg["k0"], cfg["omega_c"])
    tol = cfg["frequency_tolerance"]
    try:
        measured = propagate.zitterbewegung_spectrum(traj)
        ok = abs(measured - expected) <= tol * expected
        detail = f"dominant centroid frequency {measured:.6g}, expected {expected:.6g} within {tol:.0%}"
    except propagate.DetectionError as exc:
        ok, detail = False, str(exc)
    result.check("centroid beat at 2E", ok, detail)
    try:
        spread_freq = propagate.zitterbewegung_spectrum(traj, "variance")
        ok = abs(spread_freq - expected) <= tol * expected
        detail = f"dominant variance frequency {spread_freq:.6g}, expected {expected:.6g}"
    except propagate.DetectionError as exc:
        ok, detail = False, str(exc)
    result.check("variance beat at 2E", ok, detail)


def _tunneling_scan(cfg, result):
    omega, lead, barrier = cfg["omega"], cfg["lead_cutoff"], cfg["barrier_cutoff"]
    kappa = modes.evanescent_kappa(omega, barrier)
    scaled = np.linspace(cfg["length_min"], cfg["length_max"], cfg["points"])
    cols = {"kappa_length": [], "length": [], "T": [], "R": [], "log_T": [], "T_plus_R": []}
    for s in scaled:
        length = float(s) / kappa
        tr = propagate.helmholtz_mode(omega, propagate.BarrierProfile.single_barrier(lead, barrier, length))
        for key, val in zip(cols, (s, length, tr.T, tr.R, tr.log_T, tr.T + tr.R)):
            cols[key].append(float(val))
    result.columns.update(cols)
    flux = max(abs(v - 1.0) for v in cols["T_plus_R"])
    result.check("T + R = 1 within 1e-10", flux <= 1e-10, f"max deviation {flux:.3e}")
    T = np.array(cols["T"])
    result.check("T decreases with barrier length", bool(np.all(np.diff(T) < 0)), "strictly monotone")
    tail = np.array(cols["kappa_length"]) >= cfg["tail_from"]
    if tail.sum() >= 2:
        slope = np.polyfit(np.array(cols["length"])[tail], np.array(cols["log_T"])[tail], 1)[0]
        tol = cfg["slope_tolerance"]
        ok = abs(slope + 2 * kappa) <= tol * 2 * kappa
        detail = f"tail slope {slope:.6g}, expected {-2 * kappa:.6g} within {tol:.0%}"
    else:
        ok, detail = False, "fewer than two tail points"
    result.check("log T slope = -2 kappa", ok, detail)


def identity_checks(rng: np.random.Generator, samples: int, tol: float) -> list[tuple[str, float, float]]:
    """Matrix identities behind the Dirac-like photon equation as
    ``(name, residual, tolerance)`` triples."""
    b0 = spinor.beta(0)
    S = [spinor.spin(j) for j in range(1, 4)]
    checks = [
        ("beta0^2 = I", float(np.max(np.abs(b0 @ b0 - spinor.I6)))),
        (
            "{beta0, beta_j} = 0",
            max(float(np.max(np.abs(spinor.anticommutator(b0, spinor.beta(j))))) for j in range(1, 4)),
        ),
        ("S.S = 2I", float(np.max(np.abs(sum(s @ s for s in S) - 2 * spinor.I6)))),
        ("[beta_m, S_j] = i eps beta_l", spinor.angular_momentum_closure_residual()),
    ]
    out = [(name, res, 0.0) for name, res in checks]
    worst_square = 0.0
    worst_split = 0.0
    for _ in range(samples):
        k = rng.uniform(-10, 10, size=4)
        worst_square = max(worst_square, spinor.square_identity_residual(k) / (1 + np.dot(k, k) ** 2))
        wc = rng.uniform(0.1, 10)
        k3 = rng.uniform(0, 10)
        x = rng.uniform(-10, 10, size=4)
        d = mk.decompose_guided(wc, k3)
        scale = np.dot(np.asarray(d.k), np.asarray(d.k)) ** 0.5 * np.dot(x, x) ** 0.5
        worst_split = max(worst_split, mk.phase_split_check(d, x) / max(scale, 1.0))
    out.append(("square identity (relative)", worst_square, tol))
    out.append(("phase split (relative)", worst_split, tol))
    return out


def _identity_suite(cfg, result):
    rng = np.random.default_rng(cfg.seed)
    checks = identity_checks(rng, cfg["samples"], cfg["tolerance"])
    result.columns["check"] = [float(i) for i in range(len(checks))]
    result.columns["residual"] = [c[1] for c in checks]
    result.columns["tolerance"] = [c[2] for c in checks]
    for name, residual, tol in checks:
        result.check(name, residual <= tol, f"residual {residual:.3e} <= {tol:g}")


RUNNERS: dict[str, Callable[[ScenarioConfig, ScenarioResult], None]] = {
    "mode_table": _mode_table,
    "dispersion_scan": _dispersion_scan,
    "packet_run": _packet_run,
    "zbw_run": _zbw_run,
    "tunneling_scan": _tunneling_scan,
    "identity_suite": _identity_suite,
}


class ScenarioError(GuidedPhotonError):
    """A library error annotated with the scenario that triggered it."""

    def __init__(self, config: ScenarioConfig, cause: Exception):
        self.cause = cause
        super().__init__(f"scenario {config.name!r} ({config.kind}): {type(cause).__name__}: {cause}")


def run(config: ScenarioConfig) -> ScenarioResult:
    start = time.perf_counter()
    result = ScenarioResult(config)
    try:
        RUNNERS[config.kind](config, result)
    except GuidedPhotonError as exc:
        raise ScenarioError(config, exc) from exc
    result.wall_time = time.perf_counter() - start
    return result


# ---------------------------------------------------------------- emission


def format_number(value: float) -> str:
    return format(float(value), ".17g")


def to_csv(result: ScenarioResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = list(result.columns)
    writer.writerow(names)
    for row in zip(*(result.columns[n] for n in names)):
        writer.writerow([format_number(v) for v in row])
    return buf.getvalue()


def _json_number(value: float):
    value = float(value)
    if math.isfinite(value):
        return value
    return "inf" if value > 0 else "-inf" if value < 0 else "nan"


def to_json(result: ScenarioResult) -> str:
    doc = {
        "metadata": result.metadata(),
        "columns": {k: [_json_number(v) for v in vals] for k, vals in result.columns.items()},
        "verdicts": [{"name": v.name, "passed": v.passed, "detail": v.detail} for v in result.verdicts],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_columns(text: str) -> dict[str, list[float]]:
    """Columns back from :func:`to_json` output."""
    doc = json.loads(text)
    return {k: [float(v) for v in vals] for k, vals in doc["columns"].items()}


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(result: ScenarioResult, out_dir, fmt: str = "csv") -> list[Path]:
    out_dir = Path(out_dir)
    stem = result.config.name
    written = []
    if fmt == "csv":
        written.append(out_dir / f"{stem}.csv")
        _atomic_write(written[-1], to_csv(result))
        written.append(out_dir / f"{stem}.meta.json")
        meta = {
            "metadata": result.metadata(),
            "verdicts": [{"name": v.name, "passed": v.passed, "detail": v.detail} for v in result.verdicts],
        }
        _atomic_write(written[-1], json.dumps(meta, indent=2) + "\n")
    elif fmt == "json":
        written.append(out_dir / f"{stem}.json")
        _atomic_write(written[-1], to_json(result))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return written
