"""Run configuration: JSON file -> validated RunConfig.

Unknown keys are rejected so typos fail loudly; every numeric field is
checked against the module preconditions before any computation starts.
"""

import json
from dataclasses import dataclass, field

import numpy as np

DEFAULTS = {
    "grid": {"n": 32, "L": 2.0 * np.pi},
    "params": {"nu": 1.0, "omega": 1.0, "smallness_c": "auto"},
    "time": {"T": 1.0, "M": 64},
    "data": {"generator": "random_solenoidal", "slope": -11.0 / 6.0,
             "band": [0, 1], "amplitude": 1.0},
    "norms": {"p": 2, "s": 0.5, "sigma": None},
    "seed": 0,
    "figures": True,
    "suites": None,
    "output": "out",
}

_GENERATOR_KEYS = {
    "random_solenoidal": {"generator", "slope", "band", "amplitude"},
    "oscillating_vortex": {"generator", "m", "width", "center", "amplitude"},
    "modulated_scalar": {"generator", "m", "width", "center", "amplitude"},
}

SUITE_NAMES = ("partition", "semigroup", "oscillation", "bilinear",
               "picard", "energy", "weights")


@dataclass
class RunConfig:
    n: int = 32
    L: float = 2.0 * np.pi
    nu: float = 1.0
    omega: float = 1.0
    smallness_c: float | None = None  # None: calibrate from the bilinear probe
    T: float = 1.0
    M: int = 64
    data: dict = field(default_factory=lambda: dict(DEFAULTS["data"]))
    p: float = 2
    s: float = 0.5
    sigma: float | None = None
    seed: int = 0
    figures: bool = True
    suites: list | None = None
    output: str = "out"

    @property
    def sigma_eff(self) -> float:
        return 3.0 / self.p - 1.0 if self.sigma is None else self.sigma


def _require_keys(section: dict, allowed: set, where: str):
    for key in section:
        if key not in allowed:
            raise ValueError(f"unknown key {where}.{key}" if where else f"unknown key {key}")


def _is_power_of_two(n) -> bool:
    return isinstance(n, int) and n >= 8 and (n & (n - 1)) == 0


def validate_config(raw: dict) -> RunConfig:
    """Merge a raw dict over the defaults and validate every field."""
    _require_keys(raw, set(DEFAULTS), "")
    cfg = RunConfig()

    grid = {**DEFAULTS["grid"], **raw.get("grid", {})}
    _require_keys(grid, {"n", "L"}, "grid")
    if not _is_power_of_two(grid["n"]):
        raise ValueError("grid.n must be a power of two >= 8")
    if not grid["L"] > 0:
        raise ValueError("grid.L must be positive")
    cfg.n, cfg.L = grid["n"], float(grid["L"])

    params = {**DEFAULTS["params"], **raw.get("params", {})}
    _require_keys(params, {"nu", "omega", "smallness_c"}, "params")
    if not params["nu"] > 0:
        raise ValueError("params.nu must be positive")
    if params["omega"] < 0:
        raise ValueError("params.omega must be >= 0")
    cfg.nu, cfg.omega = float(params["nu"]), float(params["omega"])
    sc = params["smallness_c"]
    if sc == "auto" or sc is None:
        cfg.smallness_c = None
    elif isinstance(sc, (int, float)) and sc > 0:
        cfg.smallness_c = float(sc)
    else:
        raise ValueError("params.smallness_c must be positive or 'auto'")

    time_sec = {**DEFAULTS["time"], **raw.get("time", {})}
    _require_keys(time_sec, {"T", "M"}, "time")
    if not time_sec["T"] > 0:
        raise ValueError("time.T must be positive")
    if not (isinstance(time_sec["M"], int) and time_sec["M"] >= 4):
        raise ValueError("time.M must be an integer >= 4")
    cfg.T, cfg.M = float(time_sec["T"]), time_sec["M"]

    data = raw.get("data", dict(DEFAULTS["data"]))
    if "snapshot" in data:
        _require_keys(data, {"snapshot"}, "data")
    else:
        gen = data.get("generator")
        if gen not in _GENERATOR_KEYS:
            raise ValueError(f"data.generator must be one of {sorted(_GENERATOR_KEYS)} "
                             f"or a snapshot path, got {gen!r}")
        _require_keys(data, _GENERATOR_KEYS[gen], "data")
        if gen == "random_solenoidal":
            data = {**DEFAULTS["data"], **data}
        else:
            m = data.get("m", 4)
            if not (isinstance(m, int) and 1 <= m <= cfg.n // 4):
                raise ValueError(f"data.m must be an integer in [1, n/4], got {m}")
    cfg.data = data

    norms = {**DEFAULTS["norms"], **raw.get("norms", {})}
    _require_keys(norms, {"p", "s", "sigma"}, "norms")
    if norms["p"] != np.inf and not norms["p"] >= 1:
        raise ValueError("norms.p must satisfy p >= 1")
    cfg.p = norms["p"]
    cfg.s = float(norms["s"])
    cfg.sigma = None if norms["sigma"] is None else float(norms["sigma"])

    seed = raw.get("seed", DEFAULTS["seed"])
    if not isinstance(seed, int):
        raise ValueError("seed must be an integer")
    cfg.seed = seed

    figures = raw.get("figures", DEFAULTS["figures"])
    if not isinstance(figures, bool):
        raise ValueError("figures must be a boolean")
    cfg.figures = figures

    suites = raw.get("suites", None)
    if suites is not None:
        if not isinstance(suites, list) or not all(s in SUITE_NAMES for s in suites):
            raise ValueError(f"suites must be a list drawn from {SUITE_NAMES}")
    cfg.suites = suites

    output = raw.get("output", DEFAULTS["output"])
    if not isinstance(output, str) or not output:
        raise ValueError("output must be a nonempty path string")
    cfg.output = output
    return cfg


def load_config(path) -> RunConfig:
    """Read and validate a JSON configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config parse error at line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ValueError("config root must be a JSON object")
    return validate_config(raw)
