"""Export real API bodies for the frontend DOM tests.

Replays the scenario fixtures through the service layer and freezes the JSON
the HTTP API would serve, so the web UI tests exercise the exact wire shape.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from photosteward.config import ServiceConfig  # noqa: E402
from photosteward.service import PlatformService  # noqa: E402

ROOT = os.path.join(os.path.dirname(__file__), "..")
OUT_DIR = os.path.join(ROOT, "frontend", "tests", "fixtures")


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        service = PlatformService(ServiceConfig(log_path=os.path.join(tmp, "events.jsonl")))
        service.ingest_seed(os.path.join(ROOT, "fixtures", "scenario_b.jsonl"))
        photo = service.photo_body("photo-2")
        feed = service.feed_body("photo-2")
        listing = [service.photo_body(pid) for pid in service.photo_ids()]

    def dump(name: str, data) -> None:
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2, sort_keys=True)
            handle.write("\n")
        print(f"wrote {path}")

    dump("photo2_scenario_b.json", photo)
    dump("photo2_feed_scenario_b.json", feed)
    dump("photos_scenario_b.json", listing)


if __name__ == "__main__":
    main()
