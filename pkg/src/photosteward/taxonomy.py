"""Identification-source taxonomy and trust ranking.

Twenty-three named source types plus an ``UNSPECIFIED`` sentinel, grouped
into three trust tiers. The enum values are the canonical wire labels used
in JSON payloads and TSV reports; the sentinel serializes as "".
"""

from __future__ import annotations

from enum import Enum


class SourceType(Enum):
    PERIOD_INSCRIPTION_WITH_VALEDICTION = "Period Inscription with Valediction"
    PERIOD_INSCRIPTION_WITHOUT_VALEDICTION = "Period Inscription without Valediction"
    PERIOD_INSCRIPTION_ON_UNION_CASE = "Period Inscription on Union Case"
    PERIOD_INSCRIPTION_ON_ALBUM_PAGE = "Period Inscription on Album Page"
    PERIOD_PUBLICATION = "Period publication"
    MODERN_PUBLICATION = "Modern publication"
    PERIOD_DOCUMENTS = "Period documents"
    LIBRARY_OF_CONGRESS = "Library of Congress"
    NATIONAL_ARCHIVES = "National Archives"
    US_AHEC_MOLLUS = "US Army Heritage and Education Center (MOLLUS)"
    OTHER_LIBRARY_MUSEUM_ARCHIVE = "Other library, museum or archive"
    MODERN_INSCRIPTION = "Modern Inscriptions"
    ANCESTRY_COM = "Ancestry.com"
    FOLD3 = "Fold3"
    FIND_A_GRAVE = "Find A Grave"
    ACWRD_HDS = "American Civil War Research Database (HDS)"
    OTHER_GENEALOGY_WEBSITE = "Other genealogy website"
    AUCTION_HOUSE_WEBSITE = "Auction house website"
    EBAY_LISTING = "eBay listing"
    DEALER_OR_COLLECTOR = "Dealer or collector"
    FAMILY_OR_DESCENDANT = "Family or descendant"
    MISC_WEBSITES_SOCIAL_MEDIA = "Misc. Websites / social media"
    OTHER = "Other"
    UNSPECIFIED = ""


class SourceCategory(Enum):
    PRIMARY = "Primary"
    SECONDARY_SCHOLARLY = "Secondary (Scholarly)"
    SECONDARY_NON_SCHOLARLY = "Secondary (Non-Scholarly)"


_PRIMARY = frozenset(
    {
        SourceType.PERIOD_INSCRIPTION_WITH_VALEDICTION,
        SourceType.PERIOD_INSCRIPTION_WITHOUT_VALEDICTION,
        SourceType.PERIOD_INSCRIPTION_ON_UNION_CASE,
        SourceType.PERIOD_INSCRIPTION_ON_ALBUM_PAGE,
    }
)

_SECONDARY_SCHOLARLY = frozenset(
    {
        SourceType.PERIOD_PUBLICATION,
        SourceType.MODERN_PUBLICATION,
        SourceType.PERIOD_DOCUMENTS,
        SourceType.LIBRARY_OF_CONGRESS,
        SourceType.NATIONAL_ARCHIVES,
        SourceType.US_AHEC_MOLLUS,
        SourceType.OTHER_LIBRARY_MUSEUM_ARCHIVE,
    }
)

# Everything else, including the UNSPECIFIED sentinel: a missing source type
# is treated like a word-of-mouth identification.
_SECONDARY_NON_SCHOLARLY = frozenset(SourceType) - _PRIMARY - _SECONDARY_SCHOLARLY

_TRUST_RANK = {
    SourceCategory.PRIMARY: 0,
    SourceCategory.SECONDARY_SCHOLARLY: 1,
    SourceCategory.SECONDARY_NON_SCHOLARLY: 2,
}

# Fine-grained sub-groupings shown in the source picker. Display metadata
# only; no rule consumes them.
SUBGROUPS = {
    SourceType.PERIOD_INSCRIPTION_WITH_VALEDICTION: "Inscription",
    SourceType.PERIOD_INSCRIPTION_WITHOUT_VALEDICTION: "Inscription",
    SourceType.PERIOD_INSCRIPTION_ON_UNION_CASE: "Inscription",
    SourceType.PERIOD_INSCRIPTION_ON_ALBUM_PAGE: "Inscription",
    SourceType.PERIOD_PUBLICATION: "Books",
    SourceType.MODERN_PUBLICATION: "Books",
    SourceType.PERIOD_DOCUMENTS: "Groupings",
    SourceType.LIBRARY_OF_CONGRESS: "Scholarly Website",
    SourceType.NATIONAL_ARCHIVES: "Scholarly Website",
    SourceType.US_AHEC_MOLLUS: "Scholarly Website",
    SourceType.OTHER_LIBRARY_MUSEUM_ARCHIVE: "Scholarly Website",
    SourceType.MODERN_INSCRIPTION: "Inscription",
    SourceType.ANCESTRY_COM: "Genealogy Website",
    SourceType.FOLD3: "Genealogy Website",
    SourceType.FIND_A_GRAVE: "Genealogy Website",
    SourceType.ACWRD_HDS: "Genealogy Website",
    SourceType.OTHER_GENEALOGY_WEBSITE: "Genealogy Website",
    SourceType.AUCTION_HOUSE_WEBSITE: "Auction",
    SourceType.EBAY_LISTING: "Auction",
    SourceType.DEALER_OR_COLLECTOR: "Word-of-Mouth",
    SourceType.FAMILY_OR_DESCENDANT: "Word-of-Mouth",
    SourceType.MISC_WEBSITES_SOCIAL_MEDIA: "",
    SourceType.OTHER: "",
    SourceType.UNSPECIFIED: "",
}


def classify_source(source_type: SourceType) -> SourceCategory:
    """Map a source type to its trust tier. Total over all 24 values."""
    if source_type in _PRIMARY:
        return SourceCategory.PRIMARY
    if source_type in _SECONDARY_SCHOLARLY:
        return SourceCategory.SECONDARY_SCHOLARLY
    return SourceCategory.SECONDARY_NON_SCHOLARLY


def trust_rank(category: SourceCategory) -> int:
    """0 for primary (most trustworthy) through 2 for non-scholarly."""
    return _TRUST_RANK[category]


def categories_in_trust_order() -> list[SourceCategory]:
    return sorted(SourceCategory, key=trust_rank)


def source_types_in_table_order() -> list[SourceType]:
    """Declaration order: the canonical report row order."""
    return list(SourceType)


def source_type_from_label(label: str) -> SourceType:
    """Inverse of the wire label; raises ValueError on unknown labels."""
    return SourceType(label)
