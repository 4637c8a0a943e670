"""Four-stage quality assessment: badge stages, verification rules, fixpoint.

An identification is upgraded to Verified ID when any of four conditions
holds: a direct primary source with no dispute, a direct scholarly source
with consensus, a replica link to an already-verified identification of the
same identity with no match dispute, or an agreed facial-match link to an
already-verified identification together with consensus and no dispute. The
link-based rules make verification a least fixpoint over the photo graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import events as ev
from .consensus import ConsensusConfig, ConsensusState, MatchConsensus
from .graph import GraphState, fold_events
from .model import (
    BadgeAssignment,
    ComparisonVerdict,
    IdentificationBadge,
    OverlayBadge,
    QualityBadge,
    TagPolicy,
    VerificationRule,
    minimum_tags_satisfied,
)
from .taxonomy import SourceCategory, classify_source


class NoIdentifications(ValueError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    tag_policy: TagPolicy = TagPolicy()
    consensus: ConsensusConfig = ConsensusConfig()


def photo_stage(state: GraphState, photo_id: str, assignments: dict[str, IdentificationBadge],
                order: list[str], policy: TagPolicy) -> QualityBadge:
    photo = state.photos[photo_id]
    if not minimum_tags_satisfied(photo, policy):
        return QualityBadge.NEEDS_TAGS
    if not order:
        return QualityBadge.NEEDS_ID
    return assignments[order[0]].stage


def _direct_categories(state: GraphState, ident_id: str) -> set[SourceCategory]:
    return {
        classify_source(source.claim.source_type)
        for source in state.direct_sources.get(ident_id, [])
    }


def _link_candidates(state: GraphState, ident_id: str) -> list[tuple[str, str]]:
    """(link_id, neighbour identification id) pairs sharing this identity."""
    ident = state.identifications[ident_id]
    out = []
    for link_id in state.links_of_photo.get(ident.photo_id, []):
        neighbour = state.links[link_id].other(ident.photo_id)
        neighbour_ident = state.ident_by_pair.get((neighbour, ident.identity_id))
        if neighbour_ident is not None:
            out.append((link_id, neighbour_ident))
    return out


def assess_identification(
    state: GraphState,
    ident_id: str,
    verified: dict[str, VerificationRule],
    id_state: ConsensusState,
    match_states: dict[str, MatchConsensus],
) -> VerificationRule | None:
    """First verification rule satisfied given the current verified set, if any."""
    categories = _direct_categories(state, ident_id)
    if SourceCategory.PRIMARY in categories and not id_state.dispute:
        return VerificationRule.PRIMARY_NO_DISPUTE
    if SourceCategory.SECONDARY_SCHOLARLY in categories and id_state.consensus:
        return VerificationRule.SCHOLARLY_CONSENSUS
    candidates = _link_candidates(state, ident_id)
    for link_id, neighbour_ident in candidates:
        match = match_states[link_id]
        if (
            match.relation is ComparisonVerdict.REPLICA
            and not match.match_dispute
            and neighbour_ident in verified
        ):
            return VerificationRule.REPLICA_OF_VERIFIED
    if id_state.consensus and not id_state.dispute:
        for link_id, neighbour_ident in candidates:
            match = match_states[link_id]
            if (
                match.relation is ComparisonVerdict.FACIAL_MATCH
                and match.agreed_match
                and neighbour_ident in verified
            ):
                return VerificationRule.FACIAL_MATCH_OF_VERIFIED
    return None


def propagate(state: GraphState, config: EngineConfig) -> dict[str, BadgeAssignment]:
    """Least-fixpoint badge assignment over a consistent snapshot."""
    cfg = config.consensus
    id_states = {
        ident_id: state.id_consensus(ident_id, cfg) for ident_id in state.identifications
    }
    match_states = {link_id: state.match_consensus(link_id, cfg) for link_id in state.links}
    eligible = [
        ident_id
        for ident_id, ident in sorted(
            state.identifications.items(), key=lambda kv: kv[1].ordinal
        )
        if minimum_tags_satisfied(state.photos[ident.photo_id], config.tag_policy)
    ]

    verified: dict[str, VerificationRule] = {}
    changed = True
    while changed:
        changed = False
        for ident_id in eligible:
            if ident_id in verified:
                continue
            rule = assess_identification(
                state, ident_id, verified, id_states[ident_id], match_states
            )
            if rule is not None:
                verified[ident_id] = rule
                changed = True

    badges: dict[str, IdentificationBadge] = {}
    for ident_id in state.identifications:
        id_state = id_states[ident_id]
        overlays = set()
        if id_state.consensus:
            overlays.add(OverlayBadge.COMMUNITY_CONSENSUS)
        if id_state.dispute:
            overlays.add(OverlayBadge.COMMUNITY_DISPUTE)
        rule = verified.get(ident_id)
        badges[ident_id] = IdentificationBadge(
            stage=QualityBadge.VERIFIED_ID if rule else QualityBadge.NEEDS_VERIFICATION,
            overlays=frozenset(overlays),
            verified_via=rule,
        )

    assignments: dict[str, BadgeAssignment] = {}
    for photo_id in state.photos:
        order = winning_order(state, photo_id, badges, id_states)
        stage = photo_stage(state, photo_id, badges, order, config.tag_policy)
        assignments[photo_id] = BadgeAssignment(
            photo_id=photo_id,
            stage=stage,
            per_identification={ident_id: badges[ident_id] for ident_id in order},
        )
    return assignments


def winning_order(
    state: GraphState,
    photo_id: str,
    badges: dict[str, IdentificationBadge],
    id_states: dict[str, ConsensusState],
) -> list[str]:
    """Identifications of a photo, winner first.

    Verified before unverified, undisputed before disputed, higher net vote
    score first, earliest proposal last; the creation ordinal breaks the one
    remaining tie (several identifications born from a single link event).
    """
    ident_ids = state.idents_of_photo.get(photo_id, [])

    def key(ident_id: str):
        ident = state.identifications[ident_id]
        badge = badges[ident_id]
        return (
            badge.stage is not QualityBadge.VERIFIED_ID,
            OverlayBadge.COMMUNITY_DISPUTE in badge.overlays,
            -id_states[ident_id].net_score,
            ident.proposed_seq,
            ident.ordinal,
        )

    return sorted(ident_ids, key=key)


def winning_identity(
    state: GraphState,
    photo_id: str,
    badges: dict[str, IdentificationBadge],
    id_states: dict[str, ConsensusState],
) -> list[str]:
    order = winning_order(state, photo_id, badges, id_states)
    if not order:
        raise NoIdentifications(f"photo {photo_id!r} has no identifications")
    return order


def recompute(event_list: list[ev.Event], config: EngineConfig) -> tuple[GraphState, dict[str, BadgeAssignment]]:
    """Fold a log and assess it. Output depends only on log contents."""
    state = fold_events(event_list)
    return state, propagate(state, config)


def badge_map(assignments: dict[str, BadgeAssignment]) -> dict:
    """Canonical JSON-able badge map used for diffs and determinism checks."""
    out: dict = {}
    for photo_id in sorted(assignments):
        assignment = assignments[photo_id]
        out[photo_id] = {
            "stage": assignment.stage.value,
            "identifications": {
                ident_id: {
                    "stage": badge.stage.value,
                    "overlays": sorted(overlay.value for overlay in badge.overlays),
                    "verified_via": badge.verified_via.value if badge.verified_via else None,
                }
                for ident_id, badge in sorted(assignment.per_identification.items())
            },
        }
    return out


_NEW_PHOTO_STAGE = QualityBadge.NEEDS_TAGS.value
_NEW_IDENT_STAGE = QualityBadge.NEEDS_VERIFICATION.value


def diff_badge_maps(old: dict, new: dict) -> list[dict]:
    """BadgeChanged payloads for every stage or overlay transition.

    New photos enter at Needs Tags and new identifications at Needs
    Verification, so their first assessment only emits an event when it moves
    them past the automatic initial badge.
    """
    changes: list[dict] = []
    for photo_id in sorted(new):
        old_photo = old.get(photo_id, {"stage": _NEW_PHOTO_STAGE, "identifications": {}})
        if new[photo_id]["stage"] != old_photo["stage"]:
            changes.append(
                {
                    "photo_id": photo_id,
                    "field": "stage",
                    "from": old_photo["stage"],
                    "to": new[photo_id]["stage"],
                }
            )
        for ident_id in sorted(new[photo_id]["identifications"]):
            new_badge = new[photo_id]["identifications"][ident_id]
            old_badge = old_photo["identifications"].get(
                ident_id,
                {"stage": _NEW_IDENT_STAGE, "overlays": [], "verified_via": None},
            )
            if new_badge["stage"] != old_badge["stage"]:
                changes.append(
                    {
                        "photo_id": photo_id,
                        "identification_id": ident_id,
                        "field": "stage",
                        "from": old_badge["stage"],
                        "to": new_badge["stage"],
                    }
                )
            if new_badge["overlays"] != old_badge["overlays"]:
                changes.append(
                    {
                        "photo_id": photo_id,
                        "identification_id": ident_id,
                        "field": "overlays",
                        "from": old_badge["overlays"],
                        "to": new_badge["overlays"],
                    }
                )
    return changes
