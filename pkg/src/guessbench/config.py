"""Experiment config files: loading, validation and checksums."""

import hashlib
import json
from importlib import resources

from loguru import logger

from guessbench.engine.experiment import ExperimentConfig
from guessbench.errors import ConfigError

BUNDLED_PACKAGE = "guessbench.configs"


def config_checksum(raw):
    """SHA-256 hex digest of a config file's bytes."""
    return hashlib.sha256(raw).hexdigest()


def parse_experiment_config(raw):
    """Parse and validate config bytes, returning the config and its checksum."""
    try:
        document = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError("", f"config is not valid JSON: {e}") from e
    return ExperimentConfig.from_config(document), config_checksum(raw)


def load_experiment_config(path):
    """Load an experiment config from ``path``.

    ``path`` may also name a bundled preset such as ``fair_horizon50.json``.
    """
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except FileNotFoundError:
        raw = _bundled_config(path)
    config, checksum = parse_experiment_config(raw)
    logger.debug(f"Loaded config {path} (sha256 {checksum[:12]})")
    return config, checksum


def bundled_config_names():
    return sorted(
        entry.name
        for entry in resources.files(BUNDLED_PACKAGE).iterdir()
        if entry.name.endswith(".json")
    )


def _bundled_config(name):
    if name not in bundled_config_names():
        raise FileNotFoundError(f"no config file {name!r}")
    return resources.files(BUNDLED_PACKAGE).joinpath(name).read_bytes()


def save_experiment_config(config, filepath):
    """Write ``config`` to a UTF-8 JSON file in its explicit form."""
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(config.to_config(), f, indent=2)
