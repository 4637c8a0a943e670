"""Regenerate the scenario fixture logs, manifests, and face-rec table.

Three cumulative replay logs cover the walkthrough scenarios (a disputed
facial-match identity, a verified identity resolving an ID conflict, and a
photo awaiting consensus), plus a small synthetic log for the TSV report
golden tests. Deterministic: rerunning rewrites identical files.
"""

from __future__ import annotations

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from photosteward.engine import EngineConfig, recompute  # noqa: E402
from photosteward.events import Event  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")

JOHN_SMITH = {
    "identity_id": "john-smith",
    "full_name": "John Smith",
    "unit": "15th New York Infantry",
    "biography": "Captain, 15th New York Infantry.",
    "biography_source": "Fold3",
}
BILL_JOHNSON = {
    "identity_id": "bill-johnson",
    "full_name": "Bill Johnson",
    "unit": "10th Ohio Infantry",
    "biography": "Captain, 10th Ohio Infantry.",
    "biography_source": "",
}


def e(kind: str, actor: str, **payload) -> dict:
    return {"kind": kind, "actor": actor, "payload": payload}


def scenario_a() -> list[dict]:
    """Photo 2 linked to Photo 1 (John Smith), then disputed by the community."""
    return [
        e(
            "PhotoAdded",
            "steward",
            photo_id="photo-1",
            photo_source="MOLLUS collection",
            image_ref="img/photo-1",
            tags={"photo_source": "MOLLUS collection", "coat_color": "dark"},
        ),
        e(
            "PreIdentificationProposed",
            "steward",
            photo_id="photo-1",
            identity=JOHN_SMITH,
            source={
                "source_type": "US Army Heritage and Education Center (MOLLUS)",
                "details": "MOLLUS-MASS collection, US AHEC",
            },
        ),
        e(
            "PhotoAdded",
            "bob",
            photo_id="photo-2",
            photo_source="Bob's collection",
            image_ref="img/photo-2",
            tags={"photo_source": "Bob's collection"},
        ),
        e(
            "TagsAdded",
            "bob",
            photo_id="photo-2",
            tags={"coat_color": "dark", "shoulder_straps": "two bars"},
        ),
        e("PhotosLinked", "bob", query="photo-2", target="photo-1", verdict="Facial Match"),
        e(
            "IdentificationVoteCast",
            "bob",
            identification_id="idn:photo-2:john-smith",
            verdict="Yes - Slightly Confident",
        ),
        # checkpoint: after_bob_vote
        e("ComparisonVoteCast", "alice", link_id="lnk:photo-1:photo-2", verdict="Facial Match"),
        e(
            "IdentificationVoteCast",
            "alice",
            identification_id="idn:photo-2:john-smith",
            verdict="No - Slightly Confident",
            note="Backmark from an Ohio studio; John Smith served in a New York regiment.",
        ),
        e("ComparisonVoteCast", "carol", link_id="lnk:photo-1:photo-2", verdict="Facial Match"),
        e(
            "IdentificationVoteCast",
            "carol",
            identification_id="idn:photo-2:john-smith",
            verdict="No - Slightly Confident",
        ),
        e("ComparisonVoteCast", "dave", link_id="lnk:photo-1:photo-2", verdict="Facial Match"),
        e(
            "IdentificationVoteCast",
            "dave",
            identification_id="idn:photo-2:john-smith",
            verdict="No - Highly Confident",
            note="Agree the faces match, but the studio location rules him out.",
        ),
    ]


def scenario_b() -> list[dict]:
    """Bill Johnson verified three ways; the conflict on Photo 2 resolves."""
    out = [
        e(
            "PhotoAdded",
            "collector-sam",
            photo_id="photo-3",
            photo_source="Sam's collection",
            image_ref="img/photo-3",
            tags={"photo_source": "Sam's collection", "coat_color": "dark"},
        ),
        e(
            "PreIdentificationProposed",
            "collector-sam",
            photo_id="photo-3",
            identity=BILL_JOHNSON,
            source={
                "source_type": "Period Inscription without Valediction",
                "details": "Inked name on the verso",
            },
        ),
        e(
            "PhotoAdded",
            "archive-jo",
            photo_id="photo-4",
            photo_source="Library of Congress",
            image_ref="img/photo-4",
            tags={"photo_source": "Library of Congress", "coat_color": "dark"},
        ),
        e(
            "PreIdentificationProposed",
            "archive-jo",
            photo_id="photo-4",
            identity=BILL_JOHNSON,
            source={
                "source_type": "Library of Congress",
                "details": "https://www.loc.gov/item/example-bj-04/",
            },
        ),
    ]
    for voter in ["erin", "frank", "grace", "henry", "ivy"]:
        out.append(
            e(
                "IdentificationVoteCast",
                voter,
                identification_id="idn:photo-4:bill-johnson",
                verdict="Yes - Highly Confident",
            )
        )
    out += [
        e("PhotosLinked", "alice", query="photo-2", target="photo-3", verdict="Facial Match"),
        e("PhotosLinked", "alice", query="photo-2", target="photo-4", verdict="Facial Match"),
        e(
            "IdentificationVoteCast",
            "alice",
            identification_id="idn:photo-2:bill-johnson",
            verdict="Yes - Highly Confident",
            note="Copy identified as Bill Johnson on a collector's blog: http://example.com/bj",
        ),
    ]
    for voter in ["erin", "frank", "grace", "henry"]:
        out.append(
            e("ComparisonVoteCast", voter, link_id="lnk:photo-2:photo-3", verdict="Facial Match")
        )
    for voter in ["erin", "frank", "grace", "henry"]:
        out.append(
            e("ComparisonVoteCast", voter, link_id="lnk:photo-2:photo-4", verdict="Facial Match")
        )
    for voter in ["erin", "frank", "grace", "henry", "ivy", "carol"]:
        out.append(
            e(
                "IdentificationVoteCast",
                voter,
                identification_id="idn:photo-2:bill-johnson",
                verdict="Yes - Highly Confident",
            )
        )
    return out


def scenario_c() -> list[dict]:
    """Photo 5: strong match to Photo 3, undecided on Photo 4, not enough votes."""
    out = [
        e(
            "PhotoAdded",
            "jack",
            photo_id="photo-5",
            photo_source="Jack's attic find",
            image_ref="img/photo-5",
            tags={"photo_source": "Jack's attic find", "coat_color": "dark"},
        ),
        e(
            "PreIdentificationProposed",
            "jack",
            photo_id="photo-5",
            identity=BILL_JOHNSON,
            source={"source_type": "Dealer or collector", "details": ""},
        ),
        e("PhotosLinked", "erin", query="photo-5", target="photo-3", verdict="Facial Match"),
    ]
    for voter in ["frank", "grace", "henry", "ivy"]:
        out.append(
            e("ComparisonVoteCast", voter, link_id="lnk:photo-3:photo-5", verdict="Facial Match")
        )
    out += [
        e(
            "FaceRecSupportSet",
            "system:facerec",
            link_id="lnk:photo-3:photo-5",
            value="Supported",
        ),
        e("PhotosLinked", "frank", query="photo-5", target="photo-4", verdict="Facial Match"),
        e("ComparisonVoteCast", "grace", link_id="lnk:photo-4:photo-5", verdict="Facial Match"),
        e("ComparisonVoteCast", "henry", link_id="lnk:photo-4:photo-5", verdict="Not Sure"),
        e("ComparisonVoteCast", "ivy", link_id="lnk:photo-4:photo-5", verdict="Not Sure"),
        e("ComparisonVoteCast", "jane", link_id="lnk:photo-4:photo-5", verdict="Not Sure"),
        e(
            "FaceRecSupportSet",
            "system:facerec",
            link_id="lnk:photo-4:photo-5",
            value="Supported",
        ),
        e(
            "IdentificationVoteCast",
            "jane",
            identification_id="idn:photo-5:bill-johnson",
            verdict="Yes - Slightly Confident",
            note="Convinced by the Photo 3 match; Photo 4 is less clear.",
        ),
    ]
    return out


def report_fixture() -> list[dict]:
    def photo(actor, pid, tags):
        return e(
            "PhotoAdded", actor, photo_id=pid, photo_source=tags.get("photo_source", ""),
            image_ref=f"img/{pid}", tags=tags,
        )

    def pre_id(actor, pid, identity_id, source_type, details):
        return e(
            "PreIdentificationProposed",
            actor,
            photo_id=pid,
            identity={"identity_id": identity_id, "full_name": identity_id.replace("-", " ").title()},
            source={"source_type": source_type, "details": details},
        )

    complete = {"photo_source": "collection", "coat_color": "dark"}
    return [
        photo("u1", "rp-1", complete),
        pre_id("u1", "rp-1", "abe-adams", "Period Inscription with Valediction", "Yours truly, Abe Adams"),
        photo("u2", "rp-2", complete),
        pre_id("u2", "rp-2", "ben-brooks", "Period Inscription on Union Case", ""),
        photo("u3", "rp-3", complete),
        pre_id("u3", "rp-3", "cal-cooper", "Period Inscription without Valediction", "http://museum.example/rp3"),
        photo("u4", "rp-4", complete),
        pre_id("u4", "rp-4", "dan-drew", "Library of Congress", "https://loc.example/dan-drew"),
        photo("u5", "rp-5", {"photo_source": "estate sale"}),
        pre_id("u5", "rp-5", "eli-evans", "Find A Grave", "memorial 12345"),
        photo("u6", "rp-6", complete),
        photo("u7", "rp-7", complete),
        e("PhotosLinked", "u7", query="rp-7", target="rp-1", verdict="Replica"),
        photo("u8", "rp-8", complete),
        pre_id("u8", "rp-8", "fred-field", "", ""),
    ]


def write_fixture(name: str, raw_events: list[dict], checkpoints: dict[str, int]) -> None:
    os.makedirs(FIXTURES, exist_ok=True)
    path = os.path.join(FIXTURES, f"{name}.jsonl")
    with open(path, "w", encoding="utf-8") as handle:
        for raw in raw_events:
            handle.write(json.dumps(raw, sort_keys=True, separators=(",", ":")) + "\n")

    event_list = [
        Event(kind=raw["kind"], actor=raw["actor"], payload=raw["payload"], seq=i + 1)
        for i, raw in enumerate(raw_events)
    ]
    state, _ = recompute(event_list, EngineConfig())
    manifest = {
        "events": len(raw_events),
        "photos": len(state.photos),
        "identifications": len(state.identifications),
        "checkpoints": checkpoints,
    }
    with open(os.path.join(FIXTURES, f"{name}.manifest.json"), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(f"{name}: {manifest['events']} events, {manifest['photos']} photos, "
          f"{manifest['identifications']} identifications")


def main() -> None:
    a = scenario_a()
    b = a + scenario_b()
    c = b + scenario_c()
    write_fixture("scenario_a", a, {"after_bob_vote": 6})
    write_fixture("scenario_b", b, {"after_bob_vote": 6, "scenario_a_end": len(a)})
    write_fixture("scenario_c", c, {"scenario_b_end": len(b)})
    write_fixture("report_fixture", report_fixture(), {})
    facerec = {
        "img/photo-3|img/photo-5": "Supported",
        "img/photo-4|img/photo-5": "Supported",
    }
    with open(os.path.join(FIXTURES, "facerec_fixture.json"), "w", encoding="utf-8") as handle:
        json.dump(facerec, handle, indent=2, sort_keys=True)
        handle.write("\n")
    print("facerec_fixture.json written")


if __name__ == "__main__":
    main()
