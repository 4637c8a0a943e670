import json

import pytest

from conftest import fixture_path, load_manifest
from photosteward.config import ServiceConfig
from photosteward.events import (
    BADGE_CHANGED,
    MalformedEvent,
    parse_event_line,
    parse_event_lines,
)
from photosteward.service import IngestError, PlatformService
from photosteward.store import EventLog


def make_service(tmp_path, **overrides) -> PlatformService:
    config = ServiceConfig(log_path=str(tmp_path / "events.jsonl"), **overrides)
    return PlatformService(config)


def test_parse_rejects_bad_json():
    with pytest.raises(MalformedEvent) as err:
        parse_event_line("{not json", 7)
    assert "line 7" in str(err.value)


def test_parse_rejects_unknown_kind():
    line = json.dumps({"kind": "Nope", "actor": "u", "payload": {}})
    with pytest.raises(MalformedEvent):
        parse_event_line(line, 1)


def test_parse_rejects_missing_actor():
    line = json.dumps({"kind": "PhotoAdded", "payload": {}})
    with pytest.raises(MalformedEvent):
        parse_event_line(line, 1)


def test_event_log_round_trip(tmp_path):
    log = EventLog(str(tmp_path / "log.jsonl"))
    assert log.load() == []
    event = parse_event_line(
        json.dumps({"kind": "PhotoAdded", "actor": "u", "payload": {"photo_id": "p"}}), 1
    ).with_seq(1)
    log.append([event])
    loaded = log.load()
    assert len(loaded) == 1
    assert loaded[0].kind == "PhotoAdded" and loaded[0].seq == 1


def test_restart_reproduces_state(tmp_path):
    service = make_service(tmp_path)
    service.append_event(
        "PhotoAdded",
        "u",
        {"photo_id": "p1", "tags": {"photo_source": "s", "coat_color": "dark"}},
    )
    service.append_event(
        "PreIdentificationProposed",
        "u",
        {
            "photo_id": "p1",
            "identity": {"identity_id": "x", "full_name": "X"},
            "source": {"source_type": "Period Inscription with Valediction", "details": "sig"},
        },
    )
    before = service.snapshot.badge_map
    reborn = make_service(tmp_path)
    assert reborn.snapshot.badge_map == before
    assert reborn.snapshot.state.feed == service.snapshot.state.feed


def test_failed_append_leaves_log_untouched(tmp_path):
    service = make_service(tmp_path)
    service.append_event("PhotoAdded", "u", {"photo_id": "p1", "tags": {}})
    size_before = len(service.log.load())
    with pytest.raises(Exception):
        service.append_event("ComparisonVoteCast", "u", {"link_id": "lnk:a:b", "verdict": "Replica"})
    assert len(service.log.load()) == size_before


def test_badge_flipping_event_followed_by_badge_changed(tmp_path):
    service = make_service(tmp_path)
    service.append_event(
        "PhotoAdded",
        "u",
        {"photo_id": "p1", "tags": {"photo_source": "s", "coat_color": "dark"}},
    )
    service.append_event(
        "PreIdentificationProposed",
        "u",
        {
            "photo_id": "p1",
            "identity": {"identity_id": "x", "full_name": "X"},
            "source": {"source_type": "Period Inscription with Valediction", "details": "sig"},
        },
    )
    kinds = [event.kind for event in service.log.load()]
    trigger = kinds.index("PreIdentificationProposed")
    assert BADGE_CHANGED in kinds[trigger + 1 :]


def test_ingest_scenario_counts_match_manifest(tmp_path):
    for name in ("scenario_a", "scenario_b", "scenario_c", "report_fixture"):
        service = make_service(tmp_path / name)
        summary = service.ingest_seed(fixture_path(f"{name}.jsonl"))
        manifest = load_manifest(f"{name}.manifest.json")
        assert summary["events_loaded"] == manifest["events"]
        assert summary["photos"] == manifest["photos"]
        assert summary["identifications"] == manifest["identifications"]


def test_ingest_empty_file_is_noop(tmp_path):
    seed = tmp_path / "empty.jsonl"
    seed.write_text("")
    service = make_service(tmp_path)
    summary = service.ingest_seed(str(seed))
    assert summary == {"events_loaded": 0, "photos": 0, "identifications": 0}
    assert service.log.load() == []


def test_ingest_is_all_or_nothing(tmp_path):
    seed = tmp_path / "bad.jsonl"
    lines = [
        json.dumps({"kind": "PhotoAdded", "actor": "u", "payload": {"photo_id": "p1", "tags": {}}}),
        json.dumps({"kind": "PhotoAdded", "actor": "u", "payload": {"photo_id": "p2", "tags": {}}}),
        json.dumps({"kind": "TagsAdded", "actor": "u", "payload": {"photo_id": "ghost", "tags": {}}}),
    ]
    seed.write_text("\n".join(lines) + "\n")
    service = make_service(tmp_path)
    with pytest.raises(IngestError) as err:
        service.ingest_seed(str(seed))
    assert err.value.line_no == 3
    assert service.log.load() == []
    assert service.snapshot.state.photos == {}


def test_ingest_skips_derived_events(tmp_path):
    seed = tmp_path / "derived.jsonl"
    lines = [
        json.dumps({"kind": "PhotoAdded", "actor": "u", "payload": {"photo_id": "p1", "tags": {}}}),
        json.dumps(
            {
                "kind": "BadgeChanged",
                "actor": "system",
                "payload": {"photo_id": "p1", "field": "stage", "from": "x", "to": "y"},
            }
        ),
    ]
    seed.write_text("\n".join(lines) + "\n")
    service = make_service(tmp_path)
    summary = service.ingest_seed(str(seed))
    assert summary["events_loaded"] == 1


def test_periodic_snapshot_written(tmp_path):
    snapshot_path = tmp_path / "snap.json"
    service = make_service(tmp_path, snapshot_path=str(snapshot_path), snapshot_every=1)
    service.append_event("PhotoAdded", "u", {"photo_id": "p1", "tags": {}})
    data = json.loads(snapshot_path.read_text())
    assert data["badges"]["p1"]["stage"] == "Needs Tags"


def test_feed_contains_every_plain_event_once(tmp_path):
    service = make_service(tmp_path)
    service.ingest_seed(fixture_path("scenario_a.jsonl"))
    state = service.snapshot.state
    plain = [
        event
        for event in parse_event_lines(open(fixture_path("scenario_a.jsonl")).read())
        if not event.derived
    ]
    # count feed entries that stem from non-derived events
    derived_seqs = {
        event.seq for event in service.log.load() if event.derived
    }
    for photo_id in state.photos:
        seqs = [entry.seq for entry in state.feed[photo_id] if entry.seq not in derived_seqs]
        assert len(seqs) == len(set(seqs))
    total = sum(
        1
        for photo_id in state.photos
        for entry in state.feed[photo_id]
        if entry.seq not in derived_seqs
    )
    # PhotosLinked and ComparisonVoteCast touch two photos each
    two_photo_kinds = {"PhotosLinked", "ComparisonVoteCast", "FaceRecSupportSet"}
    expected = sum(2 if event.kind in two_photo_kinds else 1 for event in plain)
    assert total == expected
