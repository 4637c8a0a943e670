"""Deterministic TSV reports over badge and source distributions.

Row order is fixed (badge rows by stage rank, source rows in taxonomy table
order) so report output diffs cleanly against golden files.
"""

from __future__ import annotations

from .graph import GraphState
from .model import BadgeAssignment, QualityBadge
from .taxonomy import source_types_in_table_order


def badge_report(state: GraphState, assignments: dict[str, BadgeAssignment]) -> str:
    """Identification counts per badge, split by pre/post-identified origin.

    An identification on a photo still missing required tags counts under
    Needs Tags; otherwise it counts under its own stage. Unidentified photos
    contribute nothing, so the Needs ID row stays at zero.
    """
    counts = {
        badge: {"pre": 0, "post": 0} for badge in QualityBadge
    }
    for ident in state.identifications.values():
        assignment = assignments[ident.photo_id]
        if assignment.stage is QualityBadge.NEEDS_TAGS:
            badge = QualityBadge.NEEDS_TAGS
        else:
            badge = assignment.per_identification[ident.identification_id].stage
        counts[badge]["pre" if ident.pre_identified else "post"] += 1

    lines = ["badge\tpre_identified\tpost_identified\ttotal"]
    for badge in sorted(QualityBadge, key=lambda b: b.stage_rank):
        pre, post = counts[badge]["pre"], counts[badge]["post"]
        lines.append(f"{badge.value}\t{pre}\t{post}\t{pre + post}")
    return "\n".join(lines) + "\n"


def source_report(state: GraphState) -> str:
    """Identification counts per source type, with detail and URL presence."""
    rows = []
    totals = [0, 0, 0, 0, 0]
    for source_type in source_types_in_table_order():
        ids = pre = post = with_details = with_url = 0
        for ident_id, sources in state.direct_sources.items():
            typed = [s for s in sources if s.claim.source_type is source_type]
            if not typed:
                continue
            ids += 1
            if state.identifications[ident_id].pre_identified:
                pre += 1
            else:
                post += 1
            if any(s.claim.has_details for s in typed):
                with_details += 1
            if any(s.claim.has_url for s in typed):
                with_url += 1
        rows.append((source_type.value, ids, pre, post, with_details, with_url))
        for i, value in enumerate((ids, pre, post, with_details, with_url)):
            totals[i] += value

    lines = ["source_type\tids\tpre_identified\tpost_identified\twith_details\twith_url"]
    for label, *numbers in rows:
        lines.append("\t".join([label] + [str(n) for n in numbers]))
    lines.append("\t".join(["Total"] + [str(n) for n in totals]))
    return "\n".join(lines) + "\n"
