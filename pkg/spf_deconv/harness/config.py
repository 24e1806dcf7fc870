"""Experiment configuration.

A config is a single JSON document whose keys are the field names of
:class:`ExperimentConfig`. Loading goes through three gates: orjson parsing,
a JSON Schema compiled with fastjsonschema (types and required keys), and
the pydantic model (cross-field rules). Every failure surfaces as
:class:`~spf_deconv.errors.ConfigError`.

Example:
    ```python
    cfg = load_config("grid.json")
    for m, s in cfg.cells():
        print(m, s, cfg.n_for(m))
    ```

Environment defaults (read after ``load_environment()`` pulls in ``.env``):

- ``SPF_DECONV_THREADS``: worker threads for grid runs (default 1).
- ``SPF_DECONV_LOG_LEVEL``: CLI log level (default WARNING).
"""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import fastjsonschema
import orjson
from dotenv import find_dotenv, load_dotenv
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    model_validator,
)

from spf_deconv.errors import ConfigError
from spf_deconv.model.signals import FlatnessLevel
from spf_deconv.solver.spf import default_flatness_level

THREADS_ENV = "SPF_DECONV_THREADS"
LOG_LEVEL_ENV = "SPF_DECONV_LOG_LEVEL"

NOISELESS_THRESHOLD_DB = 60.0
# Noisy cut-off sits this far below the measurement SNR (40 → 30, 20 → 10).
NOISY_THRESHOLD_MARGIN_DB = 10.0

CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["m_values"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "m_values": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "s_values": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "s_over_m": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        },
        "noise_snr_db": {"anyOf": [{"type": "number"}, {"const": "inf"}]},
        "subsample": {"enum": ["full", "uniform", "random"]},
        "subsample_factor": {"type": "integer", "minimum": 1},
        "dict_field": {"enum": ["real", "complex"]},
        "mu_policy": {"anyOf": [{"enum": ["log", "none"]}, {"type": "number", "minimum": 1}]},
        "trials_per_cell": {"type": "integer", "minimum": 1},
        "base_seed": {"type": "integer", "minimum": 0},
        "rsdr_success_threshold_db": {"type": "number"},
        "max_outer_iters": {"type": "integer", "minimum": 1},
    },
}

_validate_document = fastjsonschema.compile(CONFIG_SCHEMA)


class ExperimentConfig(BaseModel):
    """Phase-transition experiment description.

    Attributes:
        n: Signal length; required for ``subsample="random"``, otherwise
            derived per cell (n = m for full, n = factor·m for uniform).
        m_values: Measurement counts, one grid column each.
        s_values: Sparsity levels (s1 = s2 = s), or
        s_over_m: ratios s/m, giving s = max(1, round(ratio·m)).
        noise_snr_db: Measurement SNR in dB, or ``"inf"`` for noiseless.
        subsample: ``"full"``, ``"uniform"`` or ``"random"``.
        subsample_factor: Step of uniform subsampling.
        dict_field: ``"real"`` or ``"complex"`` dictionaries and signals.
        mu_policy: ``"log"`` (μ = ⌈5 ln n⌉), ``"none"`` (inactive) or a number.
        trials_per_cell: Trials per (m, s) cell.
        base_seed: Root of every per-trial seed.
        rsdr_success_threshold_db: Success cut-off; defaults to 60 dB when
            noiseless and SNR − 10 dB otherwise.
        max_outer_iters: Cap on solver iterations.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: Optional[PositiveInt] = None
    m_values: List[PositiveInt] = Field(min_length=1)
    s_values: Optional[List[PositiveInt]] = None
    s_over_m: Optional[List[float]] = None
    noise_snr_db: Union[float, Literal["inf"]] = "inf"
    subsample: Literal["full", "uniform", "random"] = "full"
    subsample_factor: PositiveInt = 2
    dict_field: Literal["real", "complex"] = "real"
    mu_policy: Union[Literal["log", "none"], float] = "log"
    trials_per_cell: PositiveInt = 20
    base_seed: NonNegativeInt = 0
    rsdr_success_threshold_db: Optional[float] = None
    max_outer_iters: PositiveInt = 50

    @model_validator(mode="after")
    def _check(self) -> ExperimentConfig:
        if (self.s_values is None) == (self.s_over_m is None):
            raise ValueError("exactly one of s_values and s_over_m must be given")
        if self.s_over_m is not None and any(not 0.0 < r <= 1.0 for r in self.s_over_m):
            raise ValueError("s_over_m ratios must lie in (0, 1]")
        if isinstance(self.mu_policy, float) and self.mu_policy < 1.0:
            raise ValueError("numeric mu_policy must be >= 1")
        if self.subsample == "random":
            if self.n is None:
                raise ValueError("random subsampling needs n")
            if max(self.m_values) > self.n:
                raise ValueError(f"m values exceed n={self.n}")
        for m, s in self.cells():
            if s > self.n_for(m):
                raise ValueError(f"sparsity s={s} exceeds n={self.n_for(m)} for m={m}")
        return self

    @property
    def snr_db(self) -> float:
        return math.inf if self.noise_snr_db == "inf" else float(self.noise_snr_db)

    @property
    def threshold_db(self) -> float:
        if self.rsdr_success_threshold_db is not None:
            return self.rsdr_success_threshold_db
        if math.isinf(self.snr_db):
            return NOISELESS_THRESHOLD_DB
        return self.snr_db - NOISY_THRESHOLD_MARGIN_DB

    @property
    def subsample_label(self) -> str:
        if self.subsample == "uniform":
            return f"uniform({self.subsample_factor})"
        return self.subsample

    def n_for(self, m: int) -> int:
        if self.subsample == "full":
            return m
        if self.subsample == "uniform":
            return m * self.subsample_factor
        assert self.n is not None
        return self.n

    def s_for(self, m: int) -> List[int]:
        if self.s_values is not None:
            return list(self.s_values)
        assert self.s_over_m is not None
        return [max(1, round(r * m)) for r in self.s_over_m]

    def cells(self) -> List[Tuple[int, int]]:
        """(m, s) cells in grid order: m outer, s inner."""
        return [(m, s) for m in self.m_values for s in self.s_for(m)]

    def mu_level(self, n: int) -> FlatnessLevel:
        if self.mu_policy == "none":
            return FlatnessLevel.inactive()
        if self.mu_policy == "log":
            return FlatnessLevel(default_flatness_level(n))
        return FlatnessLevel(min(float(self.mu_policy), float(n)))


def parse_config(document: Union[bytes, str, dict]) -> ExperimentConfig:
    """Validate a config document (raw JSON or an already parsed mapping).

    Raises:
        ConfigError: On malformed JSON, schema violations or model rules.
    """
    try:
        data = orjson.loads(document) if isinstance(document, (bytes, str)) else document
    except orjson.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        _validate_document(data)
    except fastjsonschema.JsonSchemaException as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid config: {exc}") from exc


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate a config file."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(raw)


def load_environment() -> None:
    """Load ``.env`` from the working directory without overriding the environment."""
    load_dotenv(find_dotenv(usecwd=True), override=False)


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if threads < 1:
        raise ConfigError(f"{THREADS_ENV} must be positive, got {threads}")
    return threads


def default_log_level() -> str:
    return os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
