"""Folds of community votes into consensus and dispute states.

Both folds operate on *effective* votes (each voter's latest) and are pure:
the outcome depends only on the effective vote multiset, never on arrival
order. Supermajority arithmetic uses exact fractions so threshold boundaries
(e.g. exactly two thirds) behave predictably.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .model import ComparisonVerdict, ComparisonVote, IdentificationVote, IdVoteVerdict


@dataclass(frozen=True)
class ConsensusConfig:
    id_consensus_min: int = 5
    match_min: int = 5
    dispute_min: int = 2
    supermajority: Fraction = Fraction(2, 3)

    def __post_init__(self):
        if not (0 < self.supermajority <= 1):
            raise ValueError("supermajority must be in (0, 1]")
        if min(self.id_consensus_min, self.match_min, self.dispute_min) < 1:
            raise ValueError("vote minimums must be >= 1")

    @staticmethod
    def with_ratio(supermajority: float | str | Fraction, **kwargs) -> "ConsensusConfig":
        return ConsensusConfig(supermajority=Fraction(supermajority), **kwargs)


@dataclass(frozen=True)
class ConsensusState:
    positive_voters: int
    negative_voters: int
    unsure_voters: int
    net_score: int
    consensus: bool
    dispute: bool


@dataclass(frozen=True)
class MatchConsensus:
    match_voters: int
    nonmatch_voters: int
    unsure_voters: int
    relation: ComparisonVerdict | None  # REPLICA, FACIAL_MATCH, or None when undecided
    agreed_match: bool
    match_dispute: bool


def effective_votes(votes: Iterable) -> dict[str, object]:
    """Collapse a vote sequence to each voter's latest (by voted_seq)."""
    latest: dict[str, object] = {}
    for vote in sorted(votes, key=lambda v: v.voted_seq):
        latest[vote.voter] = vote
    return latest


def identification_consensus(
    votes: Mapping[str, IdentificationVote], cfg: ConsensusConfig
) -> ConsensusState:
    positive = sum(1 for v in votes.values() if v.verdict.polarity > 0)
    negative = sum(1 for v in votes.values() if v.verdict.polarity < 0)
    unsure = len(votes) - positive - negative
    net = sum(v.verdict.polarity * v.verdict.weight for v in votes.values())
    decided = positive + negative
    consensus = positive >= cfg.id_consensus_min and positive >= cfg.supermajority * decided
    dispute = negative >= cfg.dispute_min and negative > (1 - cfg.supermajority) * decided
    return ConsensusState(positive, negative, unsure, net, consensus, dispute)


def comparison_consensus(
    votes: Mapping[str, ComparisonVote], cfg: ConsensusConfig
) -> MatchConsensus:
    replica = sum(1 for v in votes.values() if v.verdict is ComparisonVerdict.REPLICA)
    facial = sum(1 for v in votes.values() if v.verdict is ComparisonVerdict.FACIAL_MATCH)
    nonmatch = sum(1 for v in votes.values() if v.verdict is ComparisonVerdict.DIFFERENT_PEOPLE)
    match = replica + facial
    unsure = len(votes) - match - nonmatch
    decided = match + nonmatch
    agreed = match >= cfg.match_min and match >= cfg.supermajority * decided
    disputed = nonmatch >= cfg.dispute_min and nonmatch > (1 - cfg.supermajority) * decided
    if replica > facial:
        relation = ComparisonVerdict.REPLICA
    elif facial > replica:
        relation = ComparisonVerdict.FACIAL_MATCH
    else:
        relation = None
    return MatchConsensus(match, nonmatch, unsure, relation, agreed, disputed)


def id_vote_histogram(votes: Mapping[str, IdentificationVote]) -> dict[str, int]:
    counts = {verdict.value: 0 for verdict in IdVoteVerdict}
    for vote in votes.values():
        counts[vote.verdict.value] += 1
    return counts


def comparison_histogram(votes: Mapping[str, ComparisonVote]) -> dict[str, int]:
    counts = {verdict.value: 0 for verdict in ComparisonVerdict}
    for vote in votes.values():
        counts[vote.verdict.value] += 1
    return counts
