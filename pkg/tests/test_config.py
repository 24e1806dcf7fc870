"""Tests for experiment configuration loading."""

import math

import orjson
import pytest
from pydantic import ValidationError

from spf_deconv.errors import ConfigError
from spf_deconv.harness.config import (
    LOG_LEVEL_ENV,
    THREADS_ENV,
    ExperimentConfig,
    default_log_level,
    default_threads,
    load_config,
    load_environment,
    parse_config,
)


@pytest.fixture
def config_file(tmp_path):
    """Fixture for a config file on disk."""
    path = tmp_path / "grid.json"
    path.write_bytes(orjson.dumps({"m_values": [128, 256], "s_over_m": [1 / 64, 2 / 64]}))
    return path


def test_load_config(config_file):
    """Test loading a config file and its derived cells."""
    cfg = load_config(config_file)
    assert cfg.cells() == [(128, 2), (128, 4), (256, 4), (256, 8)]
    assert cfg.n_for(256) == 256
    assert cfg.trials_per_cell == 20
    assert cfg.dict_field == "real"
    assert math.isinf(cfg.snr_db)


def test_missing_file_is_config_error(tmp_path):
    """Test that unreadable files surface as ConfigError."""
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.json")


@pytest.mark.parametrize("snr, threshold", [("inf", 60.0), (40, 30.0), (20, 10.0)])
def test_success_thresholds(snr, threshold):
    """Test the default RSDR cut-offs 60/30/10 dB."""
    cfg = parse_config({"m_values": [64], "s_values": [1], "noise_snr_db": snr})
    assert cfg.threshold_db == threshold


def test_explicit_threshold_overrides_default():
    """Test rsdr_success_threshold_db."""
    cfg = parse_config(b'{"m_values": [64], "s_values": [1], "rsdr_success_threshold_db": 45}')
    assert cfg.threshold_db == 45.0


@pytest.mark.parametrize("document", [
    b"{not json",
    b'{"s_values": [1]}',
    b'{"m_values": [64], "s_values": [1], "colour": "red"}',
    b'{"m_values": [0], "s_values": [1]}',
    b'{"m_values": [64], "s_values": [1], "subsample": "diagonal"}',
    b'{"m_values": [64], "s_values": [1], "s_over_m": [0.1]}',
    b'{"m_values": [64]}',
    b'{"m_values": [64], "s_values": [1], "subsample": "random"}',
    b'{"n": 32, "m_values": [64], "s_values": [1], "subsample": "random"}',
    b'{"m_values": [4], "s_values": [5]}',
])
def test_invalid_documents(document):
    """Test that every malformed config raises ConfigError."""
    with pytest.raises(ConfigError):
        parse_config(document)


def test_subsampling_modes():
    """Test n derivation and labels."""
    uniform = parse_config({"m_values": [64], "s_values": [2], "subsample": "uniform"})
    assert uniform.n_for(64) == 128
    assert uniform.subsample_label == "uniform(2)"
    rand = parse_config({"n": 256, "m_values": [64, 128], "s_values": [2], "subsample": "random"})
    assert rand.n_for(64) == 256
    assert rand.subsample_label == "random"


def test_mu_policies():
    """Test log, none and numeric flatness policies."""
    base = {"m_values": [256], "s_values": [2]}
    assert parse_config(base).mu_level(256).mu == 28.0
    assert not parse_config({**base, "mu_policy": "none"}).mu_level(256).is_active
    assert parse_config({**base, "mu_policy": 12}).mu_level(256).mu == 12.0
    assert parse_config({**base, "mu_policy": 500}).mu_level(256).mu == 256.0


def test_config_is_frozen():
    """Test immutability of the model."""
    cfg = ExperimentConfig(m_values=[64], s_values=[1])
    with pytest.raises(ValidationError):
        cfg.base_seed = 3


def test_environment_defaults(monkeypatch):
    """Test thread and log-level environment variables."""
    monkeypatch.delenv(THREADS_ENV, raising=False)
    monkeypatch.delenv(LOG_LEVEL_ENV, raising=False)
    assert default_threads() == 1
    assert default_log_level() == "WARNING"
    monkeypatch.setenv(THREADS_ENV, "4")
    monkeypatch.setenv(LOG_LEVEL_ENV, "debug")
    assert default_threads() == 4
    assert default_log_level() == "DEBUG"
    monkeypatch.setenv(THREADS_ENV, "many")
    with pytest.raises(ConfigError):
        default_threads()
    monkeypatch.setenv(THREADS_ENV, "0")
    with pytest.raises(ConfigError):
        default_threads()


def test_dotenv_file_is_loaded(tmp_path, monkeypatch):
    """Test that .env in the working directory fills unset variables."""
    monkeypatch.setenv(THREADS_ENV, "1")
    monkeypatch.delenv(THREADS_ENV)
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text(f"{THREADS_ENV}=3\n")
    load_environment()
    assert default_threads() == 3
