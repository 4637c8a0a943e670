from photosteward.model import Photo, TagPolicy, minimum_tags_satisfied
from photosteward.taxonomy import (
    SourceCategory,
    SourceType,
    categories_in_trust_order,
    classify_source,
    source_type_from_label,
    trust_rank,
)


def test_classification_is_total():
    for source_type in SourceType:
        assert classify_source(source_type) in SourceCategory


def test_partition_sizes_match_table():
    sizes = {category: 0 for category in SourceCategory}
    for source_type in SourceType:
        if source_type is SourceType.UNSPECIFIED:
            continue
        sizes[classify_source(source_type)] += 1
    assert sizes[SourceCategory.PRIMARY] == 4
    assert sizes[SourceCategory.SECONDARY_SCHOLARLY] == 7
    assert sizes[SourceCategory.SECONDARY_NON_SCHOLARLY] == 12


def test_known_rows():
    assert classify_source(SourceType.PERIOD_INSCRIPTION_WITH_VALEDICTION) is SourceCategory.PRIMARY
    assert classify_source(SourceType.FIND_A_GRAVE) is SourceCategory.SECONDARY_NON_SCHOLARLY
    assert classify_source(SourceType.LIBRARY_OF_CONGRESS) is SourceCategory.SECONDARY_SCHOLARLY
    assert classify_source(SourceType.US_AHEC_MOLLUS) is SourceCategory.SECONDARY_SCHOLARLY
    assert classify_source(SourceType.DEALER_OR_COLLECTOR) is SourceCategory.SECONDARY_NON_SCHOLARLY


def test_unspecified_falls_in_word_of_mouth_bracket():
    assert classify_source(SourceType.UNSPECIFIED) is SourceCategory.SECONDARY_NON_SCHOLARLY
    assert SourceType.UNSPECIFIED.value == ""


def test_trust_rank_total_order():
    assert trust_rank(SourceCategory.PRIMARY) == 0
    assert trust_rank(SourceCategory.SECONDARY_SCHOLARLY) == 1
    assert trust_rank(SourceCategory.SECONDARY_NON_SCHOLARLY) == 2
    assert categories_in_trust_order() == [
        SourceCategory.PRIMARY,
        SourceCategory.SECONDARY_SCHOLARLY,
        SourceCategory.SECONDARY_NON_SCHOLARLY,
    ]
    ranked = sorted(
        (trust_rank(classify_source(s)), s is not SourceType.PERIOD_INSCRIPTION_WITH_VALEDICTION)
        for s in SourceType
    )
    assert ranked[0][0] == 0


def test_primary_types_rank_ahead_of_all_others():
    primaries = [s for s in SourceType if classify_source(s) is SourceCategory.PRIMARY]
    others = [s for s in SourceType if classify_source(s) is not SourceCategory.PRIMARY]
    for p in primaries:
        for o in others:
            assert trust_rank(classify_source(p)) < trust_rank(classify_source(o))


def test_labels_round_trip():
    for source_type in SourceType:
        assert source_type_from_label(source_type.value) is source_type
    assert source_type_from_label("Find A Grave") is SourceType.FIND_A_GRAVE
    assert source_type_from_label("Dealer or collector") is SourceType.DEALER_OR_COLLECTOR


def _photo(tags: dict) -> Photo:
    return Photo(
        photo_id="p", uploader="u", photo_source="", image_ref="", tags=tags, uploaded_seq=1
    )


def test_minimum_tags_satisfied():
    policy = TagPolicy.of("photo_source", "coat_color")
    assert minimum_tags_satisfied(_photo({"photo_source": "x", "coat_color": "dark"}), policy)
    assert not minimum_tags_satisfied(_photo({}), policy)
    assert not minimum_tags_satisfied(_photo({"photo_source": "x"}), policy)
    assert not minimum_tags_satisfied(_photo({"photo_source": "x", "coat_color": " "}), policy)
    assert minimum_tags_satisfied(_photo({}), TagPolicy.of())


def test_minimum_tags_monotone_under_tag_addition():
    policy = TagPolicy.of("photo_source", "coat_color")
    base = {"photo_source": "x", "coat_color": "dark"}
    assert minimum_tags_satisfied(_photo(base), policy)
    assert minimum_tags_satisfied(_photo({**base, "extra": "tag"}), policy)
