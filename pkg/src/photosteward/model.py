"""Core domain types: photos, identities, identifications, links, votes, badges.

All types are immutable value objects; timestamps are logical event sequence
numbers so that replay never depends on wall clocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .taxonomy import SourceType


class QualityBadge(Enum):
    NEEDS_TAGS = "Needs Tags"
    NEEDS_ID = "Needs ID"
    NEEDS_VERIFICATION = "Needs Verification"
    VERIFIED_ID = "Verified ID"

    @property
    def stage_rank(self) -> int:
        return _STAGE_RANK[self]


_STAGE_RANK = {
    QualityBadge.NEEDS_TAGS: 0,
    QualityBadge.NEEDS_ID: 1,
    QualityBadge.NEEDS_VERIFICATION: 2,
    QualityBadge.VERIFIED_ID: 3,
}


class OverlayBadge(Enum):
    COMMUNITY_CONSENSUS = "Community Consensus"
    COMMUNITY_DISPUTE = "Community Dispute"


class VerificationRule(Enum):
    """Which verification condition upgraded an identification."""

    PRIMARY_NO_DISPUTE = "PrimaryNoDispute"
    SCHOLARLY_CONSENSUS = "ScholarlyConsensus"
    REPLICA_OF_VERIFIED = "ReplicaOfVerified"
    FACIAL_MATCH_OF_VERIFIED = "FacialMatchOfVerified"


class ComparisonVerdict(Enum):
    REPLICA = "Replica"
    FACIAL_MATCH = "Facial Match"
    NOT_SURE = "Not Sure"
    DIFFERENT_PEOPLE = "Different People"

    @property
    def is_match(self) -> bool:
        return self in (ComparisonVerdict.REPLICA, ComparisonVerdict.FACIAL_MATCH)


class IdVoteVerdict(Enum):
    YES_HIGHLY = "Yes - Highly Confident"
    YES_SLIGHTLY = "Yes - Slightly Confident"
    NOT_SURE = "Not Sure"
    NO_SLIGHTLY = "No - Slightly Confident"
    NO_HIGHLY = "No - Highly Confident"

    @property
    def polarity(self) -> int:
        return _POLARITY[self]

    @property
    def weight(self) -> int:
        return _WEIGHT[self]


_POLARITY = {
    IdVoteVerdict.YES_HIGHLY: 1,
    IdVoteVerdict.YES_SLIGHTLY: 1,
    IdVoteVerdict.NOT_SURE: 0,
    IdVoteVerdict.NO_SLIGHTLY: -1,
    IdVoteVerdict.NO_HIGHLY: -1,
}

_WEIGHT = {
    IdVoteVerdict.YES_HIGHLY: 2,
    IdVoteVerdict.YES_SLIGHTLY: 1,
    IdVoteVerdict.NOT_SURE: 0,
    IdVoteVerdict.NO_SLIGHTLY: 1,
    IdVoteVerdict.NO_HIGHLY: 2,
}


class FaceRecSupport(Enum):
    SUPPORTED = "Supported"
    NOT_SUPPORTED = "Not Supported"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Photo:
    photo_id: str
    uploader: str
    photo_source: str
    image_ref: str
    tags: dict[str, str]
    uploaded_seq: int
    uploaded_at: str | None = None


@dataclass(frozen=True)
class Identity:
    identity_id: str
    full_name: str
    unit: str = ""
    biography: str = ""
    biography_source: str = ""


@dataclass(frozen=True)
class IdSourceClaim:
    source_type: SourceType
    details: str = ""

    @property
    def has_details(self) -> bool:
        return bool(self.details.strip())

    @property
    def has_url(self) -> bool:
        return "http" in self.details


@dataclass(frozen=True)
class PreIdentified:
    source: IdSourceClaim


@dataclass(frozen=True)
class PostIdentified:
    via_link: str


@dataclass(frozen=True)
class Identification:
    identification_id: str
    photo_id: str
    identity_id: str
    proposer: str
    proposed_seq: int
    origin: PreIdentified | PostIdentified
    # Global creation counter; breaks winning-order ties when one event
    # creates several identifications (same proposed_seq).
    ordinal: int

    @property
    def pre_identified(self) -> bool:
        return isinstance(self.origin, PreIdentified)


@dataclass(frozen=True)
class PhotoLink:
    link_id: str
    photo_a: str
    photo_b: str
    created_by: str
    created_seq: int
    face_rec_support: FaceRecSupport = FaceRecSupport.UNKNOWN

    def other(self, photo_id: str) -> str:
        return self.photo_b if photo_id == self.photo_a else self.photo_a


@dataclass(frozen=True)
class DirectSource:
    """A source claim attached directly to an identification."""

    identification_id: str
    claim: IdSourceClaim
    contributed_by: str
    added_seq: int


@dataclass(frozen=True)
class LinkedSource:
    """A direct source on a linked photo, mirrored onto this identification.

    Derived on demand from direct sources plus links; never stored.
    """

    identification_id: str
    claim: IdSourceClaim
    contributed_by: str
    via_photo: str
    via_link: str
    matched_by: str


@dataclass(frozen=True)
class ComparisonVote:
    link_id: str
    voter: str
    verdict: ComparisonVerdict
    voted_seq: int


@dataclass(frozen=True)
class IdentificationVote:
    identification_id: str
    voter: str
    verdict: IdVoteVerdict
    note: str = ""
    voted_seq: int = 0


@dataclass(frozen=True)
class TagPolicy:
    """Tag keys a photo must carry (with non-empty values) to leave Needs Tags."""

    required_keys: frozenset[str] = frozenset({"photo_source", "coat_color"})

    @staticmethod
    def of(*keys: str) -> "TagPolicy":
        return TagPolicy(frozenset(keys))


def minimum_tags_satisfied(photo: Photo, policy: TagPolicy) -> bool:
    """True iff every required key has a non-empty value on the photo."""
    return all(photo.tags.get(key, "").strip() for key in policy.required_keys)


@dataclass(frozen=True)
class Notification:
    recipient: str
    cause_seq: int
    message: str
    read: bool = False


@dataclass(frozen=True)
class ActivityFeedEntry:
    photo_id: str
    seq: int
    line: str
    actor: str


@dataclass(frozen=True)
class BadgeAssignment:
    """Per-photo badge state: the photo-scope stage plus per-identification detail."""

    photo_id: str
    stage: QualityBadge
    per_identification: dict[str, "IdentificationBadge"] = field(default_factory=dict)


@dataclass(frozen=True)
class IdentificationBadge:
    stage: QualityBadge
    overlays: frozenset[OverlayBadge]
    verified_via: VerificationRule | None

    def __post_init__(self):
        assert (self.verified_via is not None) == (self.stage == QualityBadge.VERIFIED_ID)
