"""Deployment shell: serialized event appends, JSON views, HTTP API.

A single lock serializes every write (append + recompute + badge diff);
readers always see the last published immutable snapshot. Write responses
carry the updated photo body so a client can reflect the new badge state
without a follow-up read.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass

from . import events as ev
from .config import ServiceConfig
from .consensus import ConsensusConfig
from .engine import EngineConfig, badge_map, diff_badge_maps, propagate
from .graph import GraphState, ProvenanceView, fold_events, link_id_for
from .model import BadgeAssignment, FaceRecSupport, Identification, PreIdentified
from .store import EventLog, write_snapshot
from .taxonomy import SUBGROUPS, trust_rank

log = logging.getLogger(__name__)

SYSTEM_ACTOR = "system"
FACE_REC_ACTOR = "system:facerec"


class IngestError(Exception):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}" if line_no else reason)
        self.line_no = line_no
        self.reason = reason


class FaceRecProvider:
    """Pluggable facial-recognition support signal. The default knows nothing."""

    def assess(self, image_ref_a: str, image_ref_b: str) -> FaceRecSupport:
        return FaceRecSupport.UNKNOWN


class FixtureFaceRec(FaceRecProvider):
    """Lookup-table provider for tests: keys are 'refA|refB' with sorted refs."""

    def __init__(self, table: dict[str, str]):
        self.table = table

    @staticmethod
    def load(path: str) -> "FixtureFaceRec":
        with open(path, encoding="utf-8") as handle:
            return FixtureFaceRec(json.load(handle))

    def assess(self, image_ref_a: str, image_ref_b: str) -> FaceRecSupport:
        key = "|".join(sorted((image_ref_a, image_ref_b)))
        return FaceRecSupport(self.table.get(key, FaceRecSupport.UNKNOWN.value))


@dataclass(frozen=True)
class Snapshot:
    state: GraphState
    assignments: dict[str, BadgeAssignment]
    badge_map: dict


class PlatformService:
    def __init__(self, config: ServiceConfig | None = None, face_rec: FaceRecProvider | None = None):
        self.config = config or ServiceConfig()
        self.engine_config = EngineConfig(
            tag_policy=self.config.tag_policy(),
            consensus=self.config.consensus_config(),
        )
        if face_rec is None and self.config.face_rec_fixture:
            face_rec = FixtureFaceRec.load(self.config.face_rec_fixture)
        self.face_rec = face_rec or FaceRecProvider()
        self.log = EventLog(self.config.log_path)
        self._lock = threading.Lock()
        self._events: list[ev.Event] = self.log.load()
        state = fold_events(self._events)
        assignments = propagate(state, self.engine_config)
        self._snapshot = Snapshot(state, assignments, badge_map(assignments))

    # -- snapshot access ------------------------------------------------------

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    @property
    def consensus_config(self) -> ConsensusConfig:
        return self.engine_config.consensus

    def _next_seq(self) -> int:
        return (self._events[-1].seq if self._events else 0) + 1

    # -- writes ---------------------------------------------------------------

    def append_event(self, kind: str, actor: str, payload: dict, at: str | None = None) -> int:
        """Validate, durably append, recompute, and publish. Returns the seq."""
        with self._lock:
            event = ev.Event(kind=kind, actor=actor, payload=payload, at=at, seq=self._next_seq())
            candidate = self._snapshot.state.clone()
            candidate.apply(event)  # raises ValidationFailed; nothing written
            batch = [event]
            self._recompute_and_publish(candidate, batch)
            return event.seq

    def _recompute_and_publish(self, candidate: GraphState, batch: list[ev.Event]) -> None:
        assignments = propagate(candidate, self.engine_config)
        new_map = badge_map(assignments)
        next_seq = batch[-1].seq + 1
        for change in diff_badge_maps(self._snapshot.badge_map, new_map):
            derived = ev.Event(
                kind=ev.BADGE_CHANGED, actor=SYSTEM_ACTOR, payload=change, seq=next_seq
            )
            next_seq += 1
            candidate.apply(derived)
            batch.append(derived)
        self.log.append(batch)
        self._events.extend(batch)
        self._snapshot = Snapshot(candidate, assignments, new_map)
        self._maybe_snapshot_file()

    def _maybe_snapshot_file(self) -> None:
        every = self.config.snapshot_every
        if self.config.snapshot_path and every > 0:
            seq = self._events[-1].seq if self._events else 0
            if seq % every == 0:
                write_snapshot(self.config.snapshot_path, seq, self._snapshot.badge_map)

    def ingest_seed(self, path: str) -> dict:
        """Validate and append a JSON-lines seed file, all-or-nothing."""
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise IngestError(0, f"cannot read {path}: {exc}") from exc
        with self._lock:
            candidate = self._snapshot.state.clone()
            photos_before = len(candidate.photos)
            idents_before = len(candidate.identifications)
            seq = self._next_seq()
            applied: list[ev.Event] = []
            for line_no, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                event = ev.parse_event_line(line, line_no)
                if event.derived:
                    continue  # regenerated by the recompute below
                event = event.with_seq(seq)
                seq += 1
                try:
                    candidate.apply(event)
                except ev.ValidationFailed as exc:
                    raise IngestError(line_no, str(exc)) from exc
                applied.append(event)
            loaded = len(applied)
            if applied:
                self._recompute_and_publish(candidate, applied)
            return {
                "events_loaded": loaded,
                "photos": len(self._snapshot.state.photos) - photos_before,
                "identifications": len(self._snapshot.state.identifications) - idents_before,
            }

    # -- write operations used by the API -----------------------------------

    def add_photo(self, actor: str, payload: dict) -> str:
        photo_id = payload.get("photo_id") or f"photo-{self._next_seq()}"
        body = {
            "photo_id": photo_id,
            "photo_source": payload.get("photo_source", ""),
            "image_ref": payload.get("image_ref", ""),
            "tags": payload.get("tags", {}),
        }
        self.append_event(ev.PHOTO_ADDED, actor, body)
        return photo_id

    def link_photos(self, actor: str, query: str, target: str, verdict: str) -> str:
        self.append_event(
            ev.PHOTOS_LINKED, actor, {"query": query, "target": target, "verdict": verdict}
        )
        link_id = link_id_for(query, target)
        self._apply_face_rec(link_id, query, target)
        return link_id

    def _apply_face_rec(self, link_id: str, query: str, target: str) -> None:
        state = self.snapshot.state
        try:
            value = self.face_rec.assess(
                state.photos[query].image_ref, state.photos[target].image_ref
            )
        except Exception as exc:  # provider failures degrade to Unknown
            log.warning("face recognition provider unavailable: %s", exc)
            value = FaceRecSupport.UNKNOWN
        if value is not FaceRecSupport.UNKNOWN:
            self.append_event(
                ev.FACE_REC_SUPPORT_SET,
                FACE_REC_ACTOR,
                {"link_id": link_id, "value": value.value},
            )

    # -- views ----------------------------------------------------------------

    def photo_ids(self, badge: str | None = None, name: str | None = None) -> list[str]:
        snap = self.snapshot
        out = []
        for photo_id in sorted(snap.state.photos):
            assignment = snap.assignments[photo_id]
            if badge is not None and assignment.stage.value != badge:
                continue
            if name is not None:
                names = [
                    snap.state.identities[snap.state.identifications[i].identity_id].full_name
                    for i in snap.state.idents_of_photo.get(photo_id, [])
                ]
                if not any(name.lower() in n.lower() for n in names):
                    continue
            out.append(photo_id)
        return out

    def photo_body(self, photo_id: str) -> dict:
        snap = self.snapshot
        photo = snap.state.photos[photo_id]
        assignment = snap.assignments[photo_id]
        idents = [
            self.identification_body(ident_id)
            for ident_id in assignment.per_identification  # already winning-ordered
        ]
        return {
            "photo_id": photo.photo_id,
            "uploader": photo.uploader,
            "photo_source": photo.photo_source,
            "image_ref": photo.image_ref,
            "tags": photo.tags,
            "uploaded_seq": photo.uploaded_seq,
            "uploaded_at": photo.uploaded_at,
            "stage": assignment.stage.value,
            "identifications": idents,
        }

    def identification_body(self, ident_id: str) -> dict:
        snap = self.snapshot
        ident: Identification = snap.state.identifications[ident_id]
        badge = snap.assignments[ident.photo_id].per_identification[ident_id]
        identity = snap.state.identities[ident.identity_id]
        if isinstance(ident.origin, PreIdentified):
            origin = {
                "kind": "pre-identified",
                "source": {
                    "source_type": ident.origin.source.source_type.value,
                    "details": ident.origin.source.details,
                },
            }
        else:
            origin = {"kind": "post-identified", "via_link": ident.origin.via_link}
        return {
            "identification_id": ident_id,
            "photo_id": ident.photo_id,
            "identity": {
                "identity_id": identity.identity_id,
                "full_name": identity.full_name,
                "unit": identity.unit,
                "biography": identity.biography,
                "biography_source": identity.biography_source,
            },
            "origin": origin,
            "proposer": ident.proposer,
            "proposed_seq": ident.proposed_seq,
            "stage": badge.stage.value,
            "overlays": sorted(overlay.value for overlay in badge.overlays),
            "verified_via": badge.verified_via.value if badge.verified_via else None,
            "votes": snap.state.vote_summary(ident_id, self.consensus_config),
            "provenance": provenance_body(
                snap.state.provenance_view(ident_id, self.consensus_config)
            ),
        }

    def feed_body(self, photo_id: str) -> list[dict]:
        entries = self.snapshot.state.feed.get(photo_id, [])
        return [
            {"photo_id": e.photo_id, "seq": e.seq, "line": e.line, "actor": e.actor}
            for e in entries
        ]

    def notifications_body(self, user_id: str) -> list[dict]:
        entries = self.snapshot.state.notifications.get(user_id, [])
        return [
            {
                "recipient": n.recipient,
                "cause_seq": n.cause_seq,
                "message": n.message,
                "read": n.read,
            }
            for n in entries
        ]


def provenance_body(view: ProvenanceView) -> dict:
    sections = []
    for category, entries in view.sections:
        sections.append(
            {
                "category": category.value,
                "trust_rank": trust_rank(category),
                "entries": [
                    {
                        "source_photo": entry.source_photo,
                        "source_type": entry.claim.source_type.value,
                        "subgroup": SUBGROUPS[entry.claim.source_type],
                        "details": entry.claim.details,
                        "identified_by": entry.identified_by,
                        "provenance": "linked" if entry.linked else "direct",
                        "matched_by": entry.matched_by,
                        "via_link": entry.via_link,
                        "comparison": None
                        if entry.comparison is None
                        else {
                            "histogram": entry.comparison_counts,
                            "relation": entry.comparison.relation.value
                            if entry.comparison.relation
                            else None,
                            "agreed_match": entry.comparison.agreed_match,
                            "match_dispute": entry.comparison.match_dispute,
                        },
                        "face_rec_support": entry.face_rec_support.value
                        if entry.face_rec_support
                        else None,
                    }
                    for entry in entries
                ],
            }
        )
    return {"identification_id": view.identification_id, "sections": sections}


# -- HTTP layer ----------------------------------------------------------------


def create_app(service: PlatformService):
    from fastapi import FastAPI, Header, HTTPException, Query, Request
    from fastapi.responses import JSONResponse

    app = FastAPI(title="photosteward", version="0.1.0")

    def _actor_of(authorization: str | None) -> str | None:
        if not authorization or not authorization.startswith("Bearer "):
            return None
        return authorization[len("Bearer "):].strip() or None

    @app.middleware("http")
    async def require_actor_for_writes(request: Request, call_next):
        # auth is checked before body validation so a missing actor is always 401
        if request.method == "POST" and _actor_of(request.headers.get("authorization")) is None:
            return JSONResponse(status_code=401, content={"detail": "missing actor bearer header"})
        return await call_next(request)

    def actor_from(authorization: str | None) -> str:
        actor = _actor_of(authorization)
        if actor is None:
            raise HTTPException(status_code=401, detail="missing actor bearer header")
        return actor

    def run(write):
        try:
            return write()
        except ev.ValidationFailed as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/photos")
    def list_photos(badge: str | None = Query(default=None), name: str | None = Query(default=None)):
        from .model import QualityBadge

        if badge is not None and badge not in {b.value for b in QualityBadge}:
            raise HTTPException(status_code=400, detail=f"unknown badge filter {badge!r}")
        return [service.photo_body(pid) for pid in service.photo_ids(badge=badge, name=name)]

    @app.get("/photos/{photo_id}")
    def get_photo(photo_id: str):
        if photo_id not in service.snapshot.state.photos:
            raise HTTPException(status_code=404, detail=f"unknown photo {photo_id!r}")
        return service.photo_body(photo_id)

    @app.get("/photos/{photo_id}/feed")
    def get_feed(photo_id: str):
        if photo_id not in service.snapshot.state.photos:
            raise HTTPException(status_code=404, detail=f"unknown photo {photo_id!r}")
        return service.feed_body(photo_id)

    @app.get("/identifications/{ident_id}/provenance")
    def get_provenance(ident_id: str):
        if ident_id not in service.snapshot.state.identifications:
            raise HTTPException(status_code=404, detail=f"unknown identification {ident_id!r}")
        return provenance_body(
            service.snapshot.state.provenance_view(ident_id, service.consensus_config)
        )

    @app.get("/identifications/{ident_id}/votes")
    def get_votes(ident_id: str):
        if ident_id not in service.snapshot.state.identifications:
            raise HTTPException(status_code=404, detail=f"unknown identification {ident_id!r}")
        return service.snapshot.state.vote_summary(ident_id, service.consensus_config)

    @app.get("/users/{user_id}/notifications")
    def get_notifications(user_id: str):
        return service.notifications_body(user_id)

    @app.post("/photos", status_code=201)
    def post_photo(body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        photo_id = run(lambda: service.add_photo(actor, body))
        return service.photo_body(photo_id)

    @app.post("/photos/{photo_id}/tags")
    def post_tags(photo_id: str, body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        run(
            lambda: service.append_event(
                ev.TAGS_ADDED, actor, {"photo_id": photo_id, "tags": body.get("tags", body)}
            )
        )
        return service.photo_body(photo_id)

    @app.post("/photos/{photo_id}/identifications", status_code=201)
    def post_identification(
        photo_id: str, body: dict, authorization: str | None = Header(default=None)
    ):
        actor = actor_from(authorization)
        payload = {
            "photo_id": photo_id,
            "identity": body.get("identity", {}),
            "source": body.get("source"),
        }
        run(lambda: service.append_event(ev.PRE_IDENTIFICATION_PROPOSED, actor, payload))
        return service.photo_body(photo_id)

    @app.post("/links", status_code=201)
    def post_link(body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        link_id = run(
            lambda: service.link_photos(
                actor,
                str(body.get("query", "")),
                str(body.get("target", "")),
                body.get("verdict", ""),
            )
        )
        return {"link_id": link_id, "query_photo": service.photo_body(str(body["query"]))}

    @app.post("/links/{link_id}/votes")
    def post_link_vote(link_id: str, body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        run(
            lambda: service.append_event(
                ev.COMPARISON_VOTE_CAST,
                actor,
                {"link_id": link_id, "verdict": body.get("verdict", "")},
            )
        )
        link = service.snapshot.state.links[link_id]
        return {
            "link_id": link_id,
            "photos": [service.photo_body(link.photo_a), service.photo_body(link.photo_b)],
        }

    @app.post("/identifications/{ident_id}/votes")
    def post_id_vote(ident_id: str, body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        payload = {
            "identification_id": ident_id,
            "verdict": body.get("verdict", ""),
            "note": body.get("note", ""),
        }
        run(lambda: service.append_event(ev.IDENTIFICATION_VOTE_CAST, actor, payload))
        ident = service.snapshot.state.identifications[ident_id]
        return service.photo_body(ident.photo_id)

    @app.post("/links/{link_id}/face-rec")
    def post_face_rec(link_id: str, body: dict, authorization: str | None = Header(default=None)):
        actor = actor_from(authorization)
        run(
            lambda: service.append_event(
                ev.FACE_REC_SUPPORT_SET,
                actor,
                {"link_id": link_id, "value": body.get("value", "")},
            )
        )
        link = service.snapshot.state.links[link_id]
        return {"link_id": link_id, "face_rec_support": link.face_rec_support.value}

    @app.exception_handler(ev.ValidationFailed)
    def validation_handler(_request, exc: ev.ValidationFailed):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    if service.config.webapp_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/ui", StaticFiles(directory=service.config.webapp_dir, html=True), name="ui"
        )

    return app
