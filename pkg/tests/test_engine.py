import pytest

from photosteward.engine import (
    EngineConfig,
    NoIdentifications,
    badge_map,
    diff_badge_maps,
    propagate,
    recompute,
    winning_identity,
)
from photosteward.events import Event
from photosteward.graph import GraphState
from photosteward.model import OverlayBadge, QualityBadge, VerificationRule

CONFIG = EngineConfig()

COMPLETE_TAGS = {"photo_source": "somewhere", "coat_color": "dark"}


class Builder:
    def __init__(self):
        self.state = GraphState()
        self.seq = 0

    def apply(self, kind, actor, **payload):
        self.seq += 1
        self.state.apply(Event(kind=kind, actor=actor, payload=payload, seq=self.seq))

    def photo(self, photo_id, tags=None, actor="uploader"):
        self.apply(
            "PhotoAdded",
            actor,
            photo_id=photo_id,
            image_ref=f"img/{photo_id}",
            tags=COMPLETE_TAGS if tags is None else tags,
        )

    def pre_id(self, photo_id, identity_id, source_type, details="", actor="identifier"):
        self.apply(
            "PreIdentificationProposed",
            actor,
            photo_id=photo_id,
            identity={"identity_id": identity_id, "full_name": identity_id.title()},
            source={"source_type": source_type, "details": details},
        )

    def link(self, query, target, verdict, actor):
        self.apply("PhotosLinked", actor, query=query, target=target, verdict=verdict)

    def comp_vote(self, link_id, voter, verdict):
        self.apply("ComparisonVoteCast", voter, link_id=link_id, verdict=verdict)

    def id_vote(self, ident_id, voter, verdict, note=""):
        self.apply(
            "IdentificationVoteCast",
            voter,
            identification_id=ident_id,
            verdict=verdict,
            note=note,
        )

    def badges(self):
        return propagate(self.state, CONFIG)


@pytest.fixture
def b():
    return Builder()


def ident_badge(assignments, photo_id, ident_id):
    return assignments[photo_id].per_identification[ident_id]


# -- photo stage ------------------------------------------------------------


def test_untagged_unidentified_photo_needs_tags(b):
    b.photo("p1", tags={})
    assert b.badges()["p1"].stage is QualityBadge.NEEDS_TAGS


def test_tagged_unidentified_photo_needs_id(b):
    b.photo("p1")
    assert b.badges()["p1"].stage is QualityBadge.NEEDS_ID


def test_tagged_identified_photo_needs_verification(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Find A Grave", "memorial")
    badges = b.badges()
    assert badges["p1"].stage is QualityBadge.NEEDS_VERIFICATION


def test_stage_flips_exactly_when_tags_complete(b):
    b.photo("p1", tags={"photo_source": "x"})
    assert b.badges()["p1"].stage is QualityBadge.NEEDS_TAGS
    b.apply("TagsAdded", "u", photo_id="p1", tags={"coat_color": "dark"})
    assert b.badges()["p1"].stage is QualityBadge.NEEDS_ID


def test_identification_on_untagged_photo_cannot_verify(b):
    b.photo("p1", tags={})
    b.pre_id("p1", "x", "Period Inscription with Valediction", "signed")
    badges = b.badges()
    assert badges["p1"].stage is QualityBadge.NEEDS_TAGS
    assert ident_badge(badges, "p1", "idn:p1:x").stage is QualityBadge.NEEDS_VERIFICATION


# -- the four verification rules ---------------------------------------------


def test_rule_a_primary_source_no_votes(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "inked name")
    badge = ident_badge(b.badges(), "p1", "idn:p1:x")
    assert badge.stage is QualityBadge.VERIFIED_ID
    assert badge.verified_via is VerificationRule.PRIMARY_NO_DISPUTE


def test_rule_a_blocked_by_dispute(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "inked name")
    b.id_vote("idn:p1:x", "n1", "No - Highly Confident")
    b.id_vote("idn:p1:x", "n2", "No - Slightly Confident")
    badge = ident_badge(b.badges(), "p1", "idn:p1:x")
    assert badge.stage is QualityBadge.NEEDS_VERIFICATION
    assert OverlayBadge.COMMUNITY_DISPUTE in badge.overlays


def test_rule_b_scholarly_needs_consensus(b):
    b.photo("p1")
    b.pre_id("p1", "x", "US Army Heritage and Education Center (MOLLUS)", "MOLLUS")
    assert ident_badge(b.badges(), "p1", "idn:p1:x").stage is QualityBadge.NEEDS_VERIFICATION
    for i in range(5):
        b.id_vote("idn:p1:x", f"v{i}", "Yes - Highly Confident")
    badge = ident_badge(b.badges(), "p1", "idn:p1:x")
    assert badge.stage is QualityBadge.VERIFIED_ID
    assert badge.verified_via is VerificationRule.SCHOLARLY_CONSENSUS
    assert OverlayBadge.COMMUNITY_CONSENSUS in badge.overlays


def test_rule_c_replica_inherits_without_votes(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription on Album Page", "album")
    b.photo("p2")
    b.link("p2", "p1", "Replica", "bob")
    badge = ident_badge(b.badges(), "p2", "idn:p2:x")
    assert badge.stage is QualityBadge.VERIFIED_ID
    assert badge.verified_via is VerificationRule.REPLICA_OF_VERIFIED


def test_rule_c_blocked_by_match_dispute(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription on Album Page", "album")
    b.photo("p2")
    b.link("p2", "p1", "Replica", "bob")
    b.comp_vote("lnk:p1:p2", "d1", "Different People")
    b.comp_vote("lnk:p1:p2", "d2", "Different People")
    # 2 nonmatch of 3 decided: dispute, and relation still Replica by majority?
    # replica=1, nonmatch=2 -> relation stays Replica only among match votes;
    # the dispute alone must block inheritance.
    badge = ident_badge(b.badges(), "p2", "idn:p2:x")
    assert badge.stage is QualityBadge.NEEDS_VERIFICATION


def test_rule_c_creator_verdict_overridden_by_majority(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription on Album Page", "album")
    b.photo("p2")
    b.link("p2", "p1", "Replica", "bob")
    # three users say facial match: relation flips, replica inheritance ends
    for voter in ("u1", "u2", "u3"):
        b.comp_vote("lnk:p1:p2", voter, "Facial Match")
    badge = ident_badge(b.badges(), "p2", "idn:p2:x")
    assert badge.stage is QualityBadge.NEEDS_VERIFICATION


def test_rule_d_facial_match_full_requirements(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "name")
    b.photo("p2")
    b.link("p2", "p1", "Facial Match", "bob")
    # agreed match: 5 distinct match votes
    for voter in ("u1", "u2", "u3", "u4"):
        b.comp_vote("lnk:p1:p2", voter, "Facial Match")
    assert ident_badge(b.badges(), "p2", "idn:p2:x").stage is QualityBadge.NEEDS_VERIFICATION
    # consensus with no dispute completes rule (d)
    for i in range(7):
        b.id_vote("idn:p2:x", f"y{i}", "Yes - Highly Confident")
    badge = ident_badge(b.badges(), "p2", "idn:p2:x")
    assert badge.stage is QualityBadge.VERIFIED_ID
    assert badge.verified_via is VerificationRule.FACIAL_MATCH_OF_VERIFIED


def test_rule_d_requires_agreed_match(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "name")
    b.photo("p2")
    b.link("p2", "p1", "Facial Match", "bob")
    for i in range(7):
        b.id_vote("idn:p2:x", f"y{i}", "Yes - Highly Confident")
    # only the creator's match vote exists: not agreed
    assert ident_badge(b.badges(), "p2", "idn:p2:x").stage is QualityBadge.NEEDS_VERIFICATION


# -- propagation --------------------------------------------------------------


def test_replica_chain_propagates(b):
    b.photo("p0")
    b.pre_id("p0", "x", "Period Inscription with Valediction", "signed")
    previous = "p0"
    for i in range(1, 6):
        photo = f"p{i}"
        b.photo(photo)
        b.link(photo, previous, "Replica", f"linker-{i}")
        previous = photo
    badges = b.badges()
    for i in range(6):
        badge = ident_badge(badges, f"p{i}", f"idn:p{i}:x")
        assert badge.stage is QualityBadge.VERIFIED_ID


def test_replica_cycle_without_ground_stays_unverified(b):
    for photo in ("c1", "c2", "c3"):
        b.photo(photo)
    b.pre_id("c1", "x", "Find A Grave", "fg")
    b.link("c2", "c1", "Replica", "u1")
    b.link("c3", "c2", "Replica", "u2")
    b.link("c1", "c3", "Replica", "u3")
    badges = b.badges()
    for photo in ("c1", "c2", "c3"):
        assert ident_badge(badges, photo, f"idn:{photo}:x").stage is QualityBadge.NEEDS_VERIFICATION


def test_propagation_is_monotone_across_fixpoint(b):
    # two replicas hanging off one grounded photo; all end verified together
    b.photo("g")
    b.pre_id("g", "x", "Period Inscription on Union Case", "case")
    b.photo("m")
    b.link("m", "g", "Replica", "u1")
    b.photo("n")
    b.link("n", "m", "Replica", "u2")
    badges = b.badges()
    assert ident_badge(badges, "n", "idn:n:x").stage is QualityBadge.VERIFIED_ID


# -- winning identity ----------------------------------------------------------


def test_winning_order_verified_first(b):
    b.photo("p1")
    b.pre_id("p1", "loser", "Find A Grave", "fg")
    b.pre_id("p1", "winner", "Period Inscription without Valediction", "name")
    assignments = b.badges()
    order = list(assignments["p1"].per_identification)
    assert order == ["idn:p1:winner", "idn:p1:loser"]


def test_winning_order_dispute_breaks_tie(b):
    b.photo("p1")
    b.pre_id("p1", "first", "Find A Grave", "fg")
    b.pre_id("p1", "second", "Find A Grave", "fg")
    b.id_vote("idn:p1:first", "n1", "No - Highly Confident")
    b.id_vote("idn:p1:first", "n2", "No - Highly Confident")
    order = list(b.badges()["p1"].per_identification)
    assert order == ["idn:p1:second", "idn:p1:first"]


def test_winning_order_net_score_then_earlier_proposal(b):
    b.photo("p1")
    b.pre_id("p1", "early", "Find A Grave", "fg")
    b.pre_id("p1", "late", "Find A Grave", "fg")
    assert list(b.badges()["p1"].per_identification) == ["idn:p1:early", "idn:p1:late"]
    b.id_vote("idn:p1:late", "v1", "Yes - Slightly Confident")
    assert list(b.badges()["p1"].per_identification) == ["idn:p1:late", "idn:p1:early"]


def test_winning_identity_requires_identifications(b):
    b.photo("p1")
    with pytest.raises(NoIdentifications):
        winning_identity(b.state, "p1", {}, {})


# -- recompute ------------------------------------------------------------------


def test_recompute_is_deterministic(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "name")
    events = [
        Event(kind="PhotoAdded", actor="u", payload={"photo_id": "q", "tags": COMPLETE_TAGS}, seq=1),
    ]
    _, first = recompute(events, CONFIG)
    _, second = recompute(events, CONFIG)
    assert badge_map(first) == badge_map(second)


def test_removing_only_primary_source_reverts_badge(b):
    b.photo("p1")
    b.pre_id("p1", "x", "Period Inscription without Valediction", "name")
    assert ident_badge(b.badges(), "p1", "idn:p1:x").stage is QualityBadge.VERIFIED_ID
    b.apply(
        "SourceRemoved",
        "u",
        identification_id="idn:p1:x",
        source={"source_type": "Period Inscription without Valediction", "details": "name"},
    )
    assert ident_badge(b.badges(), "p1", "idn:p1:x").stage is QualityBadge.NEEDS_VERIFICATION


def test_badge_diff_emits_stage_and_overlay_changes(b):
    b.photo("p1")
    before = badge_map(b.badges())
    b.pre_id("p1", "x", "Period Inscription without Valediction", "name")
    after = badge_map(b.badges())
    changes = diff_badge_maps(before, after)
    stage_changes = [c for c in changes if c["field"] == "stage"]
    assert {"photo_id": "p1", "field": "stage", "from": "Needs ID", "to": "Verified ID"} in stage_changes
    ident_changes = [c for c in stage_changes if c.get("identification_id")]
    assert ident_changes and ident_changes[0]["to"] == "Verified ID"


def test_badge_diff_initial_photo_stage_not_reported_when_needs_tags(b):
    b.photo("p1", tags={})
    changes = diff_badge_maps({}, badge_map(b.badges()))
    assert changes == []
