"""Operator CLI: import fixture logs, emit reports, verify determinism, serve.

Config is read from the PHOTOSTEWARD_CONFIG environment variable for
``import`` and ``report``; ``serve`` takes an explicit ``--config`` flag.
Exit codes: 0 success, 1 bad input or environment, 2 determinism divergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import events as ev
from .config import ConfigError, config_from_env, load_config
from .engine import EngineConfig, badge_map, recompute
from .reports import badge_report, source_report
from .service import IngestError, PlatformService


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="photosteward")
    sub = parser.add_subparsers(dest="command", required=True)

    p_import = sub.add_parser("import", help="ingest a JSON-lines event log")
    p_import.add_argument("--log", required=True, metavar="PATH")

    p_report = sub.add_parser("report", help="print a TSV distribution report")
    p_report.add_argument("--by", required=True, choices=["badge", "source-type"])

    p_verify = sub.add_parser("verify", help="replay a log twice and compare badge maps")
    p_verify.add_argument("--log", required=True, metavar="PATH")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", required=True, metavar="PATH")

    args = parser.parse_args(argv)
    try:
        if args.command == "import":
            return cmd_import(args.log)
        if args.command == "report":
            return cmd_report(args.by)
        if args.command == "verify":
            return cmd_verify(args.log)
        return cmd_serve(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cmd_import(log_path: str) -> int:
    service = PlatformService(config_from_env())
    try:
        summary = service.ingest_seed(log_path)
    except (IngestError, ev.MalformedEvent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"events: {summary['events_loaded']}, photos: {summary['photos']}, "
        f"identifications: {summary['identifications']}"
    )
    return 0


def cmd_report(by: str) -> int:
    service = PlatformService(config_from_env())
    snap = service.snapshot
    if by == "badge":
        sys.stdout.write(badge_report(snap.state, snap.assignments))
    else:
        sys.stdout.write(source_report(snap.state))
    return 0


def _replay_badge_bytes(path: str) -> bytes:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    event_list = []
    seq = 1
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        event = ev.parse_event_line(line, line_no)
        if event.derived:
            continue
        event_list.append(event.with_seq(seq))
        seq += 1
    _, assignments = recompute(event_list, EngineConfig())
    return json.dumps(badge_map(assignments), sort_keys=True, separators=(",", ":")).encode()


def cmd_verify(log_path: str) -> int:
    try:
        first = _replay_badge_bytes(log_path)
        second = _replay_badge_bytes(log_path)
    except (ev.MalformedEvent, ev.ValidationFailed, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if first != second:
        first_map = json.loads(first)
        second_map = json.loads(second)
        for photo_id in sorted(set(first_map) | set(second_map)):
            if first_map.get(photo_id) != second_map.get(photo_id):
                print(f"divergence at photo {photo_id}", file=sys.stderr)
                break
        return 2
    photos = len(json.loads(first))
    print(f"deterministic: badge map stable across replays ({photos} photos)")
    return 0


def cmd_serve(config_path: str) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    service = PlatformService(config)
    app = create_app(service)
    print(f"serving on http://{config.host}:{config.port}")
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: could not serve on {config.host}:{config.port} ({exc})", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
