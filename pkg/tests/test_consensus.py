import random

from hypothesis import given, settings
from hypothesis import strategies as st

from photosteward.consensus import (
    ConsensusConfig,
    comparison_consensus,
    effective_votes,
    id_vote_histogram,
    identification_consensus,
)
from photosteward.model import ComparisonVerdict, ComparisonVote, IdentificationVote, IdVoteVerdict

CFG = ConsensusConfig()

VOTERS = [f"user-{i}" for i in range(8)]


def id_vote(voter, verdict, seq):
    return IdentificationVote(
        identification_id="idn", voter=voter, verdict=verdict, voted_seq=seq
    )


def cmp_vote(voter, verdict, seq):
    return ComparisonVote(link_id="lnk", voter=voter, verdict=verdict, voted_seq=seq)


def fold_id(sequence):
    return identification_consensus(effective_votes(sequence), CFG)


def fold_cmp(sequence):
    return comparison_consensus(effective_votes(sequence), CFG)


# -- worked examples -------------------------------------------------------


def test_seven_yes_votes_reach_consensus():
    votes = [id_vote(v, IdVoteVerdict.YES_HIGHLY, i) for i, v in enumerate(VOTERS[:7])]
    state = fold_id(votes)
    assert state.consensus and not state.dispute
    assert state.net_score == 14
    assert state.positive_voters == 7


def test_four_yes_below_minimum():
    votes = [id_vote(v, IdVoteVerdict.YES_SLIGHTLY, i) for i, v in enumerate(VOTERS[:4])]
    assert not fold_id(votes).consensus


def test_two_yes_four_no_is_dispute():
    votes = [id_vote(v, IdVoteVerdict.YES_SLIGHTLY, i) for i, v in enumerate(VOTERS[:2])]
    votes += [id_vote(v, IdVoteVerdict.NO_SLIGHTLY, 10 + i) for i, v in enumerate(VOTERS[2:6])]
    state = fold_id(votes)
    assert state.dispute and not state.consensus


def test_no_votes_is_neither():
    state = fold_id([])
    assert state == fold_id([])
    assert not state.consensus and not state.dispute
    assert (state.positive_voters, state.negative_voters, state.unsure_voters) == (0, 0, 0)


def test_five_facial_match_agrees():
    votes = [cmp_vote(v, ComparisonVerdict.FACIAL_MATCH, i) for i, v in enumerate(VOTERS[:5])]
    state = fold_cmp(votes)
    assert state.agreed_match
    assert state.relation is ComparisonVerdict.FACIAL_MATCH


def test_two_match_three_not_sure_is_undecided():
    votes = [cmp_vote(v, ComparisonVerdict.FACIAL_MATCH, i) for i, v in enumerate(VOTERS[:2])]
    votes += [cmp_vote(v, ComparisonVerdict.NOT_SURE, 10 + i) for i, v in enumerate(VOTERS[2:5])]
    state = fold_cmp(votes)
    assert not state.agreed_match
    assert state.relation is ComparisonVerdict.FACIAL_MATCH
    assert (state.match_voters, state.unsure_voters) == (2, 3)


def test_replica_facial_tie_agrees_but_relation_undecided():
    votes = [cmp_vote(v, ComparisonVerdict.REPLICA, i) for i, v in enumerate(VOTERS[:3])]
    votes += [cmp_vote(v, ComparisonVerdict.FACIAL_MATCH, 10 + i) for i, v in enumerate(VOTERS[3:6])]
    state = fold_cmp(votes)
    assert state.agreed_match
    assert state.relation is None


def test_latest_vote_replaces_earlier():
    votes = [
        cmp_vote("u", ComparisonVerdict.REPLICA, 1),
        cmp_vote("u", ComparisonVerdict.DIFFERENT_PEOPLE, 2),
    ]
    state = fold_cmp(votes)
    assert (state.match_voters, state.nonmatch_voters) == (0, 1)


def test_histogram_counts_distinct_voters():
    votes = [
        id_vote("a", IdVoteVerdict.YES_HIGHLY, 1),
        id_vote("a", IdVoteVerdict.NO_HIGHLY, 2),
        id_vote("b", IdVoteVerdict.YES_HIGHLY, 3),
    ]
    histogram = id_vote_histogram(effective_votes(votes))
    assert histogram["Yes - Highly Confident"] == 1
    assert histogram["No - Highly Confident"] == 1
    assert sum(histogram.values()) == 2


# -- property tests ---------------------------------------------------------

id_verdicts = st.sampled_from(list(IdVoteVerdict))
vote_sequences = st.lists(
    st.tuples(st.sampled_from(VOTERS), id_verdicts), min_size=0, max_size=30
)


def _as_votes(sequence):
    return [id_vote(voter, verdict, seq) for seq, (voter, verdict) in enumerate(sequence)]


@settings(max_examples=300, deadline=None)
@given(vote_sequences)
def test_latest_wins(sequence):
    votes = _as_votes(sequence)
    last_only = list(effective_votes(votes).values())
    assert fold_id(votes) == fold_id(last_only)


@settings(max_examples=300, deadline=None)
@given(vote_sequences, st.randoms(use_true_random=False))
def test_order_independence_of_effective_set(sequence, rng):
    votes = list(effective_votes(_as_votes(sequence)).values())
    shuffled = votes[:]
    rng.shuffle(shuffled)
    # Re-sequencing keeps the same effective set in a different arrival order.
    resequenced = [id_vote(v.voter, v.verdict, i) for i, v in enumerate(shuffled)]
    assert fold_id(votes) == fold_id(resequenced)


@settings(max_examples=300, deadline=None)
@given(vote_sequences, st.integers(min_value=1, max_value=5))
def test_not_sure_votes_never_change_booleans(sequence, extra):
    votes = _as_votes(sequence)
    before = fold_id(votes)
    fresh = [
        id_vote(f"bystander-{i}", IdVoteVerdict.NOT_SURE, 1000 + i) for i in range(extra)
    ]
    after = fold_id(votes + fresh)
    assert (before.consensus, before.dispute) == (after.consensus, after.dispute)
    assert after.unsure_voters == before.unsure_voters + extra


@settings(max_examples=300, deadline=None)
@given(vote_sequences, st.integers(min_value=1, max_value=6))
def test_adding_yes_votes_never_breaks_consensus(sequence, extra):
    votes = _as_votes(sequence)
    before = fold_id(votes)
    fresh = [
        id_vote(f"supporter-{i}", IdVoteVerdict.YES_HIGHLY, 1000 + i) for i in range(extra)
    ]
    after = fold_id(votes + fresh)
    if before.consensus:
        assert after.consensus


@settings(max_examples=200, deadline=None)
@given(
    vote_sequences,
    st.integers(min_value=1, max_value=9),
    st.integers(min_value=1, max_value=4),
)
def test_consensus_requires_minimum_positives(sequence, id_min, dispute_min):
    cfg = ConsensusConfig(id_consensus_min=id_min, dispute_min=dispute_min)
    state = identification_consensus(effective_votes(_as_votes(sequence)), cfg)
    if state.positive_voters < id_min:
        assert not state.consensus


def test_exact_two_thirds_boundary():
    # 4 of 6 decided voters is exactly the supermajority: consensus holds.
    votes = [id_vote(f"y{i}", IdVoteVerdict.YES_HIGHLY, i) for i in range(4)]
    votes += [id_vote(f"n{i}", IdVoteVerdict.NO_HIGHLY, 10 + i) for i in range(2)]
    state = fold_id(votes + [id_vote("y4", IdVoteVerdict.YES_SLIGHTLY, 20)])
    assert state.positive_voters == 5 and state.negative_voters == 2
    # 5/7 >= 2/3; dispute needs > 1/3: 2/7 is not.
    assert state.consensus and not state.dispute


def test_exactly_one_third_negative_is_not_dispute():
    votes = [id_vote(f"y{i}", IdVoteVerdict.YES_HIGHLY, i) for i in range(4)]
    votes += [id_vote(f"n{i}", IdVoteVerdict.NO_HIGHLY, 10 + i) for i in range(2)]
    state = fold_id(votes)
    assert state.negative_voters == 2 and state.positive_voters == 4
    assert not state.dispute  # 2 of 6 decided is exactly one third, not more


def test_random_seeded_spotcheck_matches_manual_fold():
    rng = random.Random(7)
    for _ in range(50):
        sequence = [
            (rng.choice(VOTERS), rng.choice(list(IdVoteVerdict)))
            for _ in range(rng.randrange(0, 25))
        ]
        votes = _as_votes(sequence)
        state = fold_id(votes)
        latest = {}
        for voter, verdict in sequence:
            latest[voter] = verdict
        positives = sum(1 for v in latest.values() if v.polarity > 0)
        assert state.positive_voters == positives
