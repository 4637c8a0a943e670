"""Service configuration: thresholds, tag policy, storage paths, listen address.

Accepts either a JSON object or a flat ``key = value`` file (TOML-style
subset: JSON scalars and arrays on the right-hand side, ``#`` comments).
Unknown keys are rejected by name so typos fail loudly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from fractions import Fraction

from .consensus import ConsensusConfig
from .model import TagPolicy

CONFIG_ENV_VAR = "PHOTOSTEWARD_CONFIG"


class ConfigError(Exception):
    pass


@dataclass
class ServiceConfig:
    log_path: str = "events.jsonl"
    snapshot_path: str = ""
    snapshot_every: int = 0
    host: str = "127.0.0.1"
    port: int = 8765
    id_consensus_min: int = 5
    match_min: int = 5
    dispute_min: int = 2
    supermajority: str = "2/3"
    required_tags: list[str] = field(default_factory=lambda: ["photo_source", "coat_color"])
    face_rec_fixture: str = ""
    webapp_dir: str = ""

    def consensus_config(self) -> ConsensusConfig:
        try:
            ratio = Fraction(self.supermajority)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad value for key 'supermajority': {self.supermajority!r}") from exc
        try:
            return ConsensusConfig(
                id_consensus_min=self.id_consensus_min,
                match_min=self.match_min,
                dispute_min=self.dispute_min,
                supermajority=ratio,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def tag_policy(self) -> TagPolicy:
        return TagPolicy(frozenset(self.required_tags))


_FIELD_TYPES = {f.name: f.type for f in fields(ServiceConfig)}


def _parse_flat(text: str, path: str) -> dict:
    values: dict = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
        key, _, raw_value = line.partition("=")
        raw_value = raw_value.strip()
        try:
            value = json.loads(raw_value)
        except json.JSONDecodeError:
            value = raw_value  # bare token, e.g. 2/3
        values[key.strip()] = value
    return values


def load_config(path: str | None) -> ServiceConfig:
    """Load config from ``path``; a missing path yields the defaults."""
    if not path:
        return ServiceConfig()
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from exc
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: top-level value must be an object")
    else:
        values = _parse_flat(text, path)

    config = ServiceConfig()
    for key, value in values.items():
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key: {key!r}")
        if isinstance(value, (int, float)) and not isinstance(value, bool) and key == "supermajority":
            value = str(value)
        setattr(config, key, value)
    _validate(config)
    return config


def _validate(config: ServiceConfig) -> None:
    for key in ("id_consensus_min", "match_min", "dispute_min", "snapshot_every", "port"):
        if not isinstance(getattr(config, key), int):
            raise ConfigError(f"bad value for key {key!r}: expected an integer")
    for key in ("log_path", "snapshot_path", "host", "face_rec_fixture", "webapp_dir"):
        if not isinstance(getattr(config, key), str):
            raise ConfigError(f"bad value for key {key!r}: expected a string")
    tags = config.required_tags
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise ConfigError("bad value for key 'required_tags': expected a list of strings")
    config.consensus_config()


def config_from_env() -> ServiceConfig:
    return load_config(os.environ.get(CONFIG_ENV_VAR))
