import json
import os

import pytest

from photosteward.engine import EngineConfig, badge_map, recompute
from photosteward.events import Event, parse_event_lines

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_fixture_events(name: str, limit: int | None = None) -> list[Event]:
    with open(fixture_path(name), encoding="utf-8") as handle:
        events = parse_event_lines(handle.read())
    if limit is not None:
        events = events[:limit]
    return [event.with_seq(i + 1) for i, event in enumerate(events)]


def load_manifest(name: str) -> dict:
    with open(fixture_path(name), encoding="utf-8") as handle:
        return json.load(handle)


def replay(name: str, limit: int | None = None, config: EngineConfig | None = None):
    events = load_fixture_events(name, limit)
    return recompute(events, config or EngineConfig())


def badge_bytes(assignments) -> bytes:
    return json.dumps(badge_map(assignments), sort_keys=True, separators=(",", ":")).encode()


@pytest.fixture
def engine_config() -> EngineConfig:
    return EngineConfig()
