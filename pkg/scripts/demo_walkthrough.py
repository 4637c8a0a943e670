"""Replay the richest fixture and narrate the resulting badge state.

Usage: python scripts/demo_walkthrough.py [fixtures/scenario_c.jsonl]
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from photosteward.engine import EngineConfig, recompute  # noqa: E402
from photosteward.events import parse_event_lines  # noqa: E402
from photosteward.reports import badge_report  # noqa: E402

DEFAULT = os.path.join(os.path.dirname(__file__), "..", "fixtures", "scenario_c.jsonl")


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else DEFAULT
    with open(path, encoding="utf-8") as handle:
        events = [e.with_seq(i + 1) for i, e in enumerate(parse_event_lines(handle.read()))]
    config = EngineConfig()
    state, assignments = recompute(events, config)

    print(f"replayed {len(events)} events -> {len(state.photos)} photos, "
          f"{len(state.identifications)} identifications\n")
    for photo_id in sorted(state.photos):
        assignment = assignments[photo_id]
        print(f"{photo_id}: {assignment.stage.value}")
        for ident_id, badge in assignment.per_identification.items():
            name = state.identities[state.identifications[ident_id].identity_id].full_name
            extras = []
            if badge.verified_via:
                extras.append(f"via {badge.verified_via.value}")
            extras += sorted(o.value for o in badge.overlays)
            suffix = f"  [{', '.join(extras)}]" if extras else ""
            print(f"  {name}: {badge.stage.value}{suffix}")
    print()
    print(badge_report(state, assignments))


if __name__ == "__main__":
    main()
