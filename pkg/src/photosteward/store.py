"""Append-only JSON-lines event log plus an optional snapshot cache.

The log file is the source of truth: every append is flushed and fsynced
before being acknowledged, and startup state is always rebuilt by replay.
Snapshots are a convenience cache for operators and are never read back as
state.
"""

from __future__ import annotations

import json
import os

from .events import Event, parse_event_line


class StorageError(Exception):
    pass


class EventLog:
    def __init__(self, path: str):
        self.path = path

    def load(self) -> list[Event]:
        if not os.path.exists(self.path):
            return []
        with open(self.path, encoding="utf-8") as handle:
            text = handle.read()
        out = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if line.strip():
                out.append(parse_event_line(line, line_no))
        return out

    def append(self, event_batch: list[Event]) -> None:
        """Durably append a batch; flush and fsync before returning."""
        if not event_batch:
            return
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        try:
            with open(self.path, "a", encoding="utf-8") as handle:
                for event in event_batch:
                    handle.write(event.to_json_line() + "\n")
                handle.flush()
                os.fsync(handle.fileno())
        except OSError as exc:
            raise StorageError(f"failed to append to {self.path}: {exc}") from exc


def write_snapshot(path: str, seq: int, badge_map: dict) -> None:
    payload = {"seq": seq, "badges": badge_map}
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
    os.replace(tmp, path)
