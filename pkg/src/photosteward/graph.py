"""Event-folded state: photos, identities, identifications, links, sources.

``GraphState.apply`` validates an event against current state before any
mutation, so a raised ``ValidationFailed`` leaves the fold unchanged. Linked
sources (a neighbour photo's direct source mirrored across a link) are always
derived on demand from direct sources plus links; they are never stored, so
removing a direct source removes its mirrors implicitly.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace

from . import events as ev
from .consensus import (
    ConsensusConfig,
    ConsensusState,
    MatchConsensus,
    comparison_consensus,
    comparison_histogram,
    id_vote_histogram,
    identification_consensus,
)
from .model import (
    ActivityFeedEntry,
    ComparisonVerdict,
    ComparisonVote,
    DirectSource,
    FaceRecSupport,
    Identification,
    IdentificationVote,
    Identity,
    IdSourceClaim,
    IdVoteVerdict,
    LinkedSource,
    Notification,
    Photo,
    PhotoLink,
    PostIdentified,
    PreIdentified,
)
from .taxonomy import SourceCategory, categories_in_trust_order, classify_source, SourceType


class UnknownPhoto(ev.ValidationFailed):
    pass


class DuplicatePhotoId(ev.ValidationFailed):
    pass


class UnknownLink(ev.ValidationFailed):
    pass


class SelfLink(ev.ValidationFailed):
    pass


class UnknownIdentification(ev.ValidationFailed):
    pass


class DuplicateIdentification(ev.ValidationFailed):
    pass


class UnknownSource(ev.ValidationFailed):
    pass


def identification_id_for(photo_id: str, identity_id: str) -> str:
    return f"idn:{photo_id}:{identity_id}"


def link_id_for(photo_a: str, photo_b: str) -> str:
    a, b = sorted((photo_a, photo_b))
    return f"lnk:{a}:{b}"


def _require(payload: dict, key: str) -> object:
    value = payload.get(key)
    if value is None:
        raise ev.ValidationFailed(f"payload missing required field {key!r}")
    return value


def _claim_from_payload(raw: object) -> IdSourceClaim:
    if raw is None:
        return IdSourceClaim(SourceType.UNSPECIFIED, "")
    if not isinstance(raw, dict):
        raise ev.ValidationFailed("source must be an object")
    label = raw.get("source_type", "")
    try:
        source_type = SourceType(label)
    except ValueError:
        raise ev.ValidationFailed(f"unknown source type {label!r}") from None
    details = raw.get("details", "")
    if not isinstance(details, str):
        raise ev.ValidationFailed("source details must be a string")
    return IdSourceClaim(source_type, details)


def _comparison_verdict(label: object) -> ComparisonVerdict:
    try:
        return ComparisonVerdict(label)
    except ValueError:
        raise ev.ValidationFailed(f"unknown comparison verdict {label!r}") from None


def _id_vote_verdict(label: object) -> IdVoteVerdict:
    try:
        return IdVoteVerdict(label)
    except ValueError:
        raise ev.ValidationFailed(f"unknown identification verdict {label!r}") from None


@dataclass(frozen=True)
class ProvenanceEntry:
    source_photo: str
    claim: IdSourceClaim
    identified_by: str
    linked: bool
    matched_by: str | None = None
    via_link: str | None = None
    comparison: MatchConsensus | None = None
    comparison_counts: dict[str, int] | None = None
    face_rec_support: FaceRecSupport | None = None


@dataclass(frozen=True)
class ProvenanceView:
    identification_id: str
    sections: list[tuple[SourceCategory, list[ProvenanceEntry]]]


@dataclass
class GraphState:
    photos: dict[str, Photo] = field(default_factory=dict)
    identities: dict[str, Identity] = field(default_factory=dict)
    identifications: dict[str, Identification] = field(default_factory=dict)
    ident_by_pair: dict[tuple[str, str], str] = field(default_factory=dict)
    idents_of_photo: dict[str, list[str]] = field(default_factory=dict)
    links: dict[str, PhotoLink] = field(default_factory=dict)
    link_by_pair: dict[tuple[str, str], str] = field(default_factory=dict)
    links_of_photo: dict[str, list[str]] = field(default_factory=dict)
    direct_sources: dict[str, list[DirectSource]] = field(default_factory=dict)
    comparison_votes: dict[str, dict[str, ComparisonVote]] = field(default_factory=dict)
    id_votes: dict[str, dict[str, IdentificationVote]] = field(default_factory=dict)
    feed: dict[str, list[ActivityFeedEntry]] = field(default_factory=dict)
    notifications: dict[str, list[Notification]] = field(default_factory=dict)
    next_ordinal: int = 0
    last_seq: int = 0

    def clone(self) -> "GraphState":
        return copy.deepcopy(self)

    # -- apply ---------------------------------------------------------------

    def apply(self, event: ev.Event) -> None:
        handler = _HANDLERS.get(event.kind)
        if handler is None:
            raise ev.ValidationFailed(f"unhandled event kind {event.kind!r}")
        handler(self, event)
        self.last_seq = max(self.last_seq, event.seq)

    def _feed(self, photo_ids, event: ev.Event, line: str) -> None:
        for photo_id in dict.fromkeys(photo_ids):
            self.feed.setdefault(photo_id, []).append(
                ActivityFeedEntry(photo_id=photo_id, seq=event.seq, line=line, actor=event.actor)
            )

    def _notify(self, recipient: str, event: ev.Event, message: str) -> None:
        self.notifications.setdefault(recipient, []).append(
            Notification(recipient=recipient, cause_seq=event.seq, message=message)
        )

    def _apply_photo_added(self, event: ev.Event) -> None:
        photo_id = str(_require(event.payload, "photo_id"))
        if photo_id in self.photos:
            raise DuplicatePhotoId(f"photo {photo_id!r} already exists")
        tags = event.payload.get("tags", {})
        if not isinstance(tags, dict):
            raise ev.ValidationFailed("tags must be an object")
        self.photos[photo_id] = Photo(
            photo_id=photo_id,
            uploader=event.actor,
            photo_source=str(event.payload.get("photo_source", "")),
            image_ref=str(event.payload.get("image_ref", "")),
            tags={str(k): str(v) for k, v in tags.items()},
            uploaded_seq=event.seq,
            uploaded_at=event.at,
        )
        self.idents_of_photo.setdefault(photo_id, [])
        self.links_of_photo.setdefault(photo_id, [])
        self._feed([photo_id], event, f"{event.actor} added photo {photo_id}")

    def _apply_tags_added(self, event: ev.Event) -> None:
        photo_id = str(_require(event.payload, "photo_id"))
        photo = self.photos.get(photo_id)
        if photo is None:
            raise UnknownPhoto(f"unknown photo {photo_id!r}")
        tags = _require(event.payload, "tags")
        if not isinstance(tags, dict):
            raise ev.ValidationFailed("tags must be an object")
        merged = dict(photo.tags)
        merged.update({str(k): str(v) for k, v in tags.items()})
        self.photos[photo_id] = replace(photo, tags=merged)
        shown = ", ".join(f"{k}={v}" for k, v in sorted(tags.items()))
        self._feed([photo_id], event, f"{event.actor} tagged photo {photo_id}: {shown}")

    def _upsert_identity(self, raw: object) -> Identity:
        if not isinstance(raw, dict):
            raise ev.ValidationFailed("identity must be an object")
        identity_id = str(raw.get("identity_id", ""))
        if not identity_id:
            raise ev.ValidationFailed("identity payload missing identity_id")
        existing = self.identities.get(identity_id)
        if existing is not None:
            return existing
        identity = Identity(
            identity_id=identity_id,
            full_name=str(raw.get("full_name", identity_id)),
            unit=str(raw.get("unit", "")),
            biography=str(raw.get("biography", "")),
            biography_source=str(raw.get("biography_source", "")),
        )
        self.identities[identity_id] = identity
        return identity

    def _create_identification(
        self,
        photo_id: str,
        identity_id: str,
        proposer: str,
        seq: int,
        origin: PreIdentified | PostIdentified,
    ) -> Identification:
        ident_id = identification_id_for(photo_id, identity_id)
        ident = Identification(
            identification_id=ident_id,
            photo_id=photo_id,
            identity_id=identity_id,
            proposer=proposer,
            proposed_seq=seq,
            origin=origin,
            ordinal=self.next_ordinal,
        )
        self.next_ordinal += 1
        self.identifications[ident_id] = ident
        self.ident_by_pair[(photo_id, identity_id)] = ident_id
        self.idents_of_photo.setdefault(photo_id, []).append(ident_id)
        self.direct_sources.setdefault(ident_id, [])
        self.id_votes.setdefault(ident_id, {})
        return ident

    def _apply_pre_identification(self, event: ev.Event) -> None:
        photo_id = str(_require(event.payload, "photo_id"))
        photo = self.photos.get(photo_id)
        if photo is None:
            raise UnknownPhoto(f"unknown photo {photo_id!r}")
        raw_identity = _require(event.payload, "identity")
        if not isinstance(raw_identity, dict) or not raw_identity.get("identity_id"):
            raise ev.ValidationFailed("identity payload missing identity_id")
        identity_id = str(raw_identity["identity_id"])
        if (photo_id, identity_id) in self.ident_by_pair:
            raise DuplicateIdentification(
                f"photo {photo_id!r} already has an identification for {identity_id!r}"
            )
        claim = _claim_from_payload(event.payload.get("source"))
        identity = self._upsert_identity(raw_identity)
        ident = self._create_identification(
            photo_id, identity_id, event.actor, event.seq, PreIdentified(claim)
        )
        self.direct_sources[ident.identification_id].append(
            DirectSource(ident.identification_id, claim, event.actor, event.seq)
        )
        label = claim.source_type.value or "unspecified source"
        self._feed(
            [photo_id],
            event,
            f"{event.actor} identified photo {photo_id} as {identity.full_name} ({label})",
        )
        if photo.uploader != event.actor:
            self._notify(
                photo.uploader,
                event,
                f"New identity {identity.full_name} proposed on your photo {photo_id}",
            )

    def _record_comparison_vote(self, link_id: str, voter: str, verdict: ComparisonVerdict, seq: int) -> None:
        self.comparison_votes.setdefault(link_id, {})[voter] = ComparisonVote(
            link_id=link_id, voter=voter, verdict=verdict, voted_seq=seq
        )

    def _apply_photos_linked(self, event: ev.Event) -> None:
        query = str(_require(event.payload, "query"))
        target = str(_require(event.payload, "target"))
        verdict = _comparison_verdict(_require(event.payload, "verdict"))
        if query == target:
            raise SelfLink(f"cannot link photo {query!r} to itself")
        for photo_id in (query, target):
            if photo_id not in self.photos:
                raise UnknownPhoto(f"unknown photo {photo_id!r}")
        if not verdict.is_match:
            raise ev.ValidationFailed(
                f"links are created only with match verdicts, got {verdict.value!r}"
            )
        link_id = link_id_for(query, target)
        pair = tuple(sorted((query, target)))
        link = self.links.get(link_id)
        if link is None:
            link = PhotoLink(
                link_id=link_id,
                photo_a=pair[0],
                photo_b=pair[1],
                created_by=event.actor,
                created_seq=event.seq,
            )
            self.links[link_id] = link
            self.link_by_pair[pair] = link_id
            self.links_of_photo.setdefault(query, []).append(link_id)
            self.links_of_photo.setdefault(target, []).append(link_id)
        self._record_comparison_vote(link_id, event.actor, verdict, event.seq)
        # The target's identities flow to the query photo; mirrored sources
        # are derived later from the link itself.
        created = []
        for ident_id in list(self.idents_of_photo.get(target, [])):
            identity_id = self.identifications[ident_id].identity_id
            if (query, identity_id) in self.ident_by_pair:
                continue
            created.append(
                self._create_identification(
                    query, identity_id, event.actor, event.seq, PostIdentified(link_id)
                )
            )
        line = f"{event.actor} linked photo {query} to photo {target} as {verdict.value}"
        if created:
            names = ", ".join(self.identities[i.identity_id].full_name for i in created)
            line += f", identifying photo {query} as {names}"
        self._feed([query, target], event, line)
        query_photo = self.photos[query]
        for ident in created:
            name = self.identities[ident.identity_id].full_name
            if query_photo.uploader != event.actor:
                self._notify(
                    query_photo.uploader,
                    event,
                    f"New identity {name} proposed on your photo {query}",
                )

    def _apply_face_rec_support(self, event: ev.Event) -> None:
        link_id = str(_require(event.payload, "link_id"))
        link = self.links.get(link_id)
        if link is None:
            raise UnknownLink(f"unknown link {link_id!r}")
        raw = _require(event.payload, "value")
        try:
            value = FaceRecSupport(raw)
        except ValueError:
            raise ev.ValidationFailed(f"unknown face recognition value {raw!r}") from None
        self.links[link_id] = replace(link, face_rec_support=value)
        self._feed(
            [link.photo_a, link.photo_b],
            event,
            f"facial recognition support set to {value.value} for link {link_id}",
        )

    def _apply_comparison_vote(self, event: ev.Event) -> None:
        link_id = str(_require(event.payload, "link_id"))
        link = self.links.get(link_id)
        if link is None:
            raise UnknownLink(f"unknown link {link_id!r}")
        verdict = _comparison_verdict(_require(event.payload, "verdict"))
        self._record_comparison_vote(link_id, event.actor, verdict, event.seq)
        self._feed(
            [link.photo_a, link.photo_b],
            event,
            f"{event.actor} voted {verdict.value} on link {link_id}",
        )

    def _apply_identification_vote(self, event: ev.Event) -> None:
        ident_id = str(_require(event.payload, "identification_id"))
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        verdict = _id_vote_verdict(_require(event.payload, "verdict"))
        note = event.payload.get("note", "")
        if not isinstance(note, str):
            raise ev.ValidationFailed("note must be a string")
        self.id_votes.setdefault(ident_id, {})[event.actor] = IdentificationVote(
            identification_id=ident_id,
            voter=event.actor,
            verdict=verdict,
            note=note,
            voted_seq=event.seq,
        )
        name = self.identities[ident.identity_id].full_name
        suffix = " with a note" if note else ""
        self._feed(
            [ident.photo_id],
            event,
            f"{event.actor} voted '{verdict.value}' on {name}{suffix}",
        )

    def _apply_source_added(self, event: ev.Event) -> None:
        ident_id = str(_require(event.payload, "identification_id"))
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        claim = _claim_from_payload(_require(event.payload, "source"))
        self.direct_sources.setdefault(ident_id, []).append(
            DirectSource(ident_id, claim, event.actor, event.seq)
        )
        name = self.identities[ident.identity_id].full_name
        label = claim.source_type.value or "unspecified source"
        self._feed([ident.photo_id], event, f"{event.actor} added source {label} to {name}")

    def _apply_source_removed(self, event: ev.Event) -> None:
        ident_id = str(_require(event.payload, "identification_id"))
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        claim = _claim_from_payload(_require(event.payload, "source"))
        sources = self.direct_sources.get(ident_id, [])
        index = next(
            (i for i, src in enumerate(sources) if src.claim == claim),
            None,
        )
        if index is None:
            raise UnknownSource(
                f"identification {ident_id!r} has no direct source {claim.source_type.value!r}"
            )
        del sources[index]
        name = self.identities[ident.identity_id].full_name
        label = claim.source_type.value or "unspecified source"
        self._feed([ident.photo_id], event, f"{event.actor} removed source {label} from {name}")

    def _apply_badge_changed(self, event: ev.Event) -> None:
        # Engine-derived; contributes feed entries and dispute notifications
        # but never mutates the graph.
        photo_id = str(_require(event.payload, "photo_id"))
        photo = self.photos.get(photo_id)
        if photo is None:
            raise UnknownPhoto(f"unknown photo {photo_id!r}")
        field_name = event.payload.get("field", "stage")
        ident_id = event.payload.get("identification_id")
        subject = f"photo {photo_id}"
        if ident_id:
            ident = self.identifications.get(str(ident_id))
            if ident is not None:
                subject = self.identities[ident.identity_id].full_name
        if field_name == "overlays":
            new = event.payload.get("to", [])
            shown = ", ".join(new) if new else "none"
            self._feed([photo_id], event, f"overlay badges for {subject} now: {shown}")
            gained = set(new) - set(event.payload.get("from", []))
            if "Community Dispute" in gained:
                self._notify(
                    photo.uploader,
                    event,
                    f"The community disputes the identity {subject} on your photo {photo_id}",
                )
        else:
            self._feed(
                [photo_id],
                event,
                f"badge changed from {event.payload.get('from')} to "
                f"{event.payload.get('to')} for {subject}",
            )

    # -- derived reads -------------------------------------------------------

    def effective_comparison_votes(self, link_id: str) -> dict[str, ComparisonVote]:
        return self.comparison_votes.get(link_id, {})

    def effective_id_votes(self, ident_id: str) -> dict[str, IdentificationVote]:
        return self.id_votes.get(ident_id, {})

    def match_consensus(self, link_id: str, cfg: ConsensusConfig) -> MatchConsensus:
        return comparison_consensus(self.effective_comparison_votes(link_id), cfg)

    def id_consensus(self, ident_id: str, cfg: ConsensusConfig) -> ConsensusState:
        return identification_consensus(self.effective_id_votes(ident_id), cfg)

    def linked_sources(self, ident_id: str) -> list[LinkedSource]:
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        mirrored: list[LinkedSource] = []
        for link_id in self.links_of_photo.get(ident.photo_id, []):
            link = self.links[link_id]
            neighbour = link.other(ident.photo_id)
            neighbour_ident_id = self.ident_by_pair.get((neighbour, ident.identity_id))
            if neighbour_ident_id is None:
                continue
            for source in self.direct_sources.get(neighbour_ident_id, []):
                mirrored.append(
                    LinkedSource(
                        identification_id=ident_id,
                        claim=source.claim,
                        contributed_by=source.contributed_by,
                        via_photo=neighbour,
                        via_link=link_id,
                        matched_by=link.created_by,
                    )
                )
        return mirrored

    def provenance_view(self, ident_id: str, cfg: ConsensusConfig) -> ProvenanceView:
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        by_category: dict[SourceCategory, list[ProvenanceEntry]] = {
            category: [] for category in categories_in_trust_order()
        }
        for source in self.direct_sources.get(ident_id, []):
            by_category[classify_source(source.claim.source_type)].append(
                ProvenanceEntry(
                    source_photo=ident.photo_id,
                    claim=source.claim,
                    identified_by=source.contributed_by,
                    linked=False,
                )
            )
        for mirror in self.linked_sources(ident_id):
            link = self.links[mirror.via_link]
            votes = self.effective_comparison_votes(mirror.via_link)
            by_category[classify_source(mirror.claim.source_type)].append(
                ProvenanceEntry(
                    source_photo=mirror.via_photo,
                    claim=mirror.claim,
                    identified_by=mirror.contributed_by,
                    linked=True,
                    matched_by=mirror.matched_by,
                    via_link=mirror.via_link,
                    comparison=comparison_consensus(votes, cfg),
                    comparison_counts=comparison_histogram(votes),
                    face_rec_support=link.face_rec_support,
                )
            )
        sections = [(category, by_category[category]) for category in categories_in_trust_order()]
        return ProvenanceView(identification_id=ident_id, sections=sections)

    def vote_summary(self, ident_id: str, cfg: ConsensusConfig) -> dict:
        ident = self.identifications.get(ident_id)
        if ident is None:
            raise UnknownIdentification(f"unknown identification {ident_id!r}")
        votes = self.effective_id_votes(ident_id)
        ordered = sorted(votes.values(), key=lambda v: v.voted_seq)
        state = identification_consensus(votes, cfg)
        return {
            "identification_id": ident_id,
            "histogram": id_vote_histogram(votes),
            "votes": [
                {"voter": v.voter, "verdict": v.verdict.value, "note": v.note} for v in ordered
            ],
            "positive_voters": state.positive_voters,
            "negative_voters": state.negative_voters,
            "unsure_voters": state.unsure_voters,
            "net_score": state.net_score,
            "consensus": state.consensus,
            "dispute": state.dispute,
        }


_HANDLERS = {
    ev.PHOTO_ADDED: GraphState._apply_photo_added,
    ev.TAGS_ADDED: GraphState._apply_tags_added,
    ev.PRE_IDENTIFICATION_PROPOSED: GraphState._apply_pre_identification,
    ev.PHOTOS_LINKED: GraphState._apply_photos_linked,
    ev.FACE_REC_SUPPORT_SET: GraphState._apply_face_rec_support,
    ev.COMPARISON_VOTE_CAST: GraphState._apply_comparison_vote,
    ev.IDENTIFICATION_VOTE_CAST: GraphState._apply_identification_vote,
    ev.SOURCE_ADDED: GraphState._apply_source_added,
    ev.SOURCE_REMOVED: GraphState._apply_source_removed,
    ev.BADGE_CHANGED: GraphState._apply_badge_changed,
}


def fold_events(event_list: list[ev.Event]) -> GraphState:
    state = GraphState()
    for event in event_list:
        state.apply(event)
    return state
