"""Append-only event records and their JSON-lines wire format.

One event per line: ``{"kind": ..., "actor": ..., "at": ..., "payload": {...}}``.
The store adds a ``seq`` field when a line is appended; seed files carry no
seq. ``BadgeChanged`` events are engine-derived and are skipped when a log is
imported (they are regenerated by recomputation).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


PHOTO_ADDED = "PhotoAdded"
TAGS_ADDED = "TagsAdded"
PRE_IDENTIFICATION_PROPOSED = "PreIdentificationProposed"
PHOTOS_LINKED = "PhotosLinked"
FACE_REC_SUPPORT_SET = "FaceRecSupportSet"
COMPARISON_VOTE_CAST = "ComparisonVoteCast"
IDENTIFICATION_VOTE_CAST = "IdentificationVoteCast"
SOURCE_ADDED = "SourceAdded"
SOURCE_REMOVED = "SourceRemoved"
BADGE_CHANGED = "BadgeChanged"

EVENT_KINDS = frozenset(
    {
        PHOTO_ADDED,
        TAGS_ADDED,
        PRE_IDENTIFICATION_PROPOSED,
        PHOTOS_LINKED,
        FACE_REC_SUPPORT_SET,
        COMPARISON_VOTE_CAST,
        IDENTIFICATION_VOTE_CAST,
        SOURCE_ADDED,
        SOURCE_REMOVED,
        BADGE_CHANGED,
    }
)

DERIVED_KINDS = frozenset({BADGE_CHANGED})


class MalformedEvent(Exception):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class ValidationFailed(Exception):
    """An event that parses but contradicts the current state."""


@dataclass(frozen=True)
class Event:
    kind: str
    actor: str
    payload: dict[str, Any] = field(default_factory=dict)
    at: str | None = None
    seq: int = 0

    @property
    def derived(self) -> bool:
        return self.kind in DERIVED_KINDS

    def with_seq(self, seq: int) -> "Event":
        return Event(kind=self.kind, actor=self.actor, payload=self.payload, at=self.at, seq=seq)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "actor": self.actor, "payload": self.payload}
        if self.at is not None:
            out["at"] = self.at
        if self.seq:
            out["seq"] = self.seq
        return out

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def event_from_dict(raw: Any, line_no: int = 0) -> Event:
    if not isinstance(raw, dict):
        raise MalformedEvent(line_no, "event is not a JSON object")
    kind = raw.get("kind")
    if not isinstance(kind, str) or kind not in EVENT_KINDS:
        raise MalformedEvent(line_no, f"unknown event kind {kind!r}")
    actor = raw.get("actor")
    if not isinstance(actor, str) or not actor:
        raise MalformedEvent(line_no, "missing or empty actor")
    payload = raw.get("payload", {})
    if not isinstance(payload, dict):
        raise MalformedEvent(line_no, "payload is not an object")
    at = raw.get("at")
    if at is not None and not isinstance(at, str):
        raise MalformedEvent(line_no, "at must be a string timestamp")
    seq = raw.get("seq", 0)
    if not isinstance(seq, int) or seq < 0:
        raise MalformedEvent(line_no, "seq must be a non-negative integer")
    return Event(kind=kind, actor=actor, payload=payload, at=at, seq=seq)


def parse_event_line(line: str, line_no: int) -> Event:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedEvent(line_no, f"invalid JSON ({exc.msg})") from exc
    return event_from_dict(raw, line_no)


def parse_event_lines(text: str) -> list[Event]:
    """Parse a JSON-lines document; blank lines are allowed and skipped."""
    events = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        events.append(parse_event_line(line, line_no))
    return events
