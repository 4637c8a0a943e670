from oracle_utils import engine_verified, oracle_verified, random_case

from photosteward.engine import EngineConfig

CONFIG = EngineConfig()


def test_propagation_matches_bruteforce_oracle_on_random_graphs():
    for seed in range(200):
        state = random_case(seed)
        expected = oracle_verified(state, CONFIG.consensus, CONFIG.tag_policy)
        actual = engine_verified(state, CONFIG)
        assert actual == expected, f"seed {seed}: engine {actual} != oracle {expected}"


def test_oracle_agrees_on_handmade_chain():
    # quick cross-check that the oracle itself grounds a replica chain
    from photosteward.events import Event
    from photosteward.graph import GraphState

    state = GraphState()
    seq = 0

    def apply(kind, actor, **payload):
        nonlocal seq
        seq += 1
        state.apply(Event(kind=kind, actor=actor, payload=payload, seq=seq))

    tags = {"photo_source": "s", "coat_color": "dark"}
    apply("PhotoAdded", "u", photo_id="a", tags=tags)
    apply(
        "PreIdentificationProposed",
        "u",
        photo_id="a",
        identity={"identity_id": "x", "full_name": "X"},
        source={"source_type": "Period Inscription with Valediction", "details": "sig"},
    )
    apply("PhotoAdded", "u", photo_id="b", tags=tags)
    apply("PhotosLinked", "u", query="b", target="a", verdict="Replica")
    verified = oracle_verified(state, CONFIG.consensus, CONFIG.tag_policy)
    assert verified == {"idn:a:x", "idn:b:x"}
    assert engine_verified(state, CONFIG) == verified
