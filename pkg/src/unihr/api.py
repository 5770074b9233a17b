"""HTTP/JSON surface over the service modules.

Handlers add no semantics of their own: they parse the wire form, call
the module operation through the service facade and serialize the
result, so a sequence of API mutations leaves the store exactly as the
same sequence of direct calls would. Every mutating call writes one
audit entry with its outcome.

Module errors map to statuses via STATUS_BY_ERROR (exhaustive over the
error taxonomy): 404 not-found family, 409 conflict family, 422
validation/guard/transition family, 502 external-transport family.
"""

from __future__ import annotations

import io
import socket
import sys
from datetime import date
from typing import Any, Callable

from fastapi import Body, FastAPI, Header, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import workflow
from .bibliography import PublicationRecord, SyncReport
from .config import ServiceConfig
from .errors import (
    AlreadyDecided,
    AlreadyRegistered,
    CategoryNotRegistrable,
    DuplicateScientistId,
    EmptyPath,
    FileUnreadable,
    GuardViolation,
    HRError,
    IllegalTransition,
    InvalidTrack,
    MissingDoctorate,
    NoAuthorMapping,
    NonExpiring,
    NotFound,
    OwnerNotFound,
    ProtocolError,
    TrackMismatch,
    TransportError,
    UnknownGrade,
    ValidationError,
    VersionConflict,
)
from .expiry import ExpiryNotification, ReviewRow
from .grades import AcademicGrade, catalog_records, classify_grade, find_grade
from .people import Employee, Person
from .registry import RegistryApplication, RegistryEntry
from .requirements import Requirement
from .service import HRService
from .store import StoreIntegrityError
from .vault import AttachedDocument, OwnerKind, OwnerRef
from .workflow import AppointmentProcedure, GradeAppointment, HistoryStep

STATUS_BY_ERROR: dict[type[HRError], int] = {
    HRError: 500,
    StoreIntegrityError: 500,
    NotFound: 404,
    UnknownGrade: 404,
    OwnerNotFound: 404,
    VersionConflict: 409,
    AlreadyRegistered: 409,
    AlreadyDecided: 409,
    DuplicateScientistId: 409,
    ValidationError: 422,
    EmptyPath: 422,
    FileUnreadable: 422,
    TrackMismatch: 422,
    InvalidTrack: 422,
    CategoryNotRegistrable: 422,
    MissingDoctorate: 422,
    IllegalTransition: 422,
    GuardViolation: 422,
    NonExpiring: 422,
    NoAuthorMapping: 422,
    TransportError: 502,
    ProtocolError: 502,
}


def status_for(error: HRError) -> int:
    for cls in type(error).__mro__:
        if cls in STATUS_BY_ERROR:
            return STATUS_BY_ERROR[cls]
    return 500


def _iso(value: Any) -> Any:
    return value.isoformat() if value is not None else None


def _parse_iso_date(value: str | None, name: str) -> date:
    if not value:
        raise ValidationError(f"{name} is required (ISO date)")
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ValidationError(f"{name} must be an ISO calendar date, got {value!r}") from None


def grade_json(grade: AcademicGrade) -> dict:
    return {"name": grade.name, "track": grade.track.value, "rank": grade.rank_in_track}


def person_json(person: Person) -> dict:
    return {
        "person_id": person.person_id,
        "full_name": person.full_name,
        "date_of_birth": _iso(person.date_of_birth),
        "doctoral_degree": person.doctoral_degree,
    }


def employee_json(employee: Employee) -> dict:
    return {
        "person_id": employee.person_id,
        "staff_group": employee.staff_group.value,
        "employment_start": _iso(employee.employment_start),
        "active": employee.active,
    }


def step_json(step: HistoryStep) -> dict:
    record = step.event.to_record()
    record["resulting_state"] = step.resulting_state.value
    return record


def procedure_json(procedure: AppointmentProcedure) -> dict:
    return {
        "procedure_id": procedure.procedure_id,
        "target_grade": grade_json(procedure.target_grade),
        "state": procedure.state.value,
        "committee": list(procedure.committee),
        "applicants": [
            {
                "person_id": a.person_id,
                "received_at": _iso(a.received_at),
                "documents": list(a.documents),
            }
            for a in procedure.applicants
        ],
        "promoted": list(procedure.promoted),
        "version": procedure.version,
        "legal_events": procedure.legal_events(),
        "history": [step_json(s) for s in procedure.history],
    }


def appointment_json(appointment: GradeAppointment) -> dict:
    return {
        "appointment_id": appointment.appointment_id,
        "person_id": appointment.person_id,
        "grade": grade_json(appointment.grade),
        "procedure_id": appointment.procedure_id,
        "valid_from": _iso(appointment.valid_from),
        "valid_to": _iso(appointment.valid_to),
    }


def review_row_json(row: ReviewRow) -> dict:
    return {
        "appointment_id": row.appointment_id,
        "person_id": row.person_id,
        "grade": row.grade_name,
        "valid_to": _iso(row.valid_to),
        "status": row.status.state.value,
        "days_remaining": row.status.days_remaining,
        "deadline_to_initiate": _iso(row.status.deadline_to_initiate),
    }


def notification_json(notification: ExpiryNotification) -> dict:
    return {
        "notification_id": notification.notification_id,
        "appointment_id": notification.appointment_id,
        "person_id": notification.person_id,
        "grade": notification.grade_name,
        "valid_to": _iso(notification.valid_to),
        "status": notification.status.value,
        "generated_at": _iso(notification.generated_at),
    }


def application_json(application: RegistryApplication) -> dict:
    return {
        "application_id": application.application_id,
        "person_id": application.person_id,
        "category": application.category.value,
        "documents": list(application.documents),
        "status": application.status.value,
        "submitted_at": _iso(application.submitted_at),
        "scientist_id": application.scientist_id,
        "rejection_reason": application.rejection_reason,
        "ack_token": application.ack_token,
    }


def entry_json(entry: RegistryEntry) -> dict:
    return {
        "scientist_id": entry.scientist_id,
        "person_id": entry.person_id,
        "category": entry.category.value,
        "registered_at": _iso(entry.registered_at),
    }


def publication_json(record: PublicationRecord) -> dict:
    return {
        "source_key": record.source_key,
        "title": record.title,
        "type_of_work": record.type_of_work,
        "publishing_date": _iso(record.publishing_date),
        "url": record.url,
    }


def sync_report_json(report: SyncReport) -> dict:
    return {"added": report.added, "updated": report.updated, "unchanged": report.unchanged}


def document_json(document: AttachedDocument) -> dict:
    return {
        "document_id": document.document_id,
        "owner": {"kind": document.owner.kind.value, "id": document.owner.ref_id},
        "path": document.path,
        "declared_format": document.declared_format,
        "attached_at": _iso(document.attached_at),
        "description": document.description,
    }


def requirement_json(requirement: Requirement) -> dict:
    return {
        "requirement_id": requirement.requirement_id,
        "text": requirement.text,
        "kind": requirement.kind.value,
        "category": requirement.category.value,
        "priority": requirement.priority.value,
        "created_at": _iso(requirement.created_at),
    }


def _owner_from_json(data: Any) -> OwnerRef:
    if not isinstance(data, dict) or "kind" not in data or "id" not in data:
        raise ValidationError("owner must be an object with 'kind' and 'id'")
    try:
        kind = OwnerKind(data["kind"])
    except ValueError:
        raise ValidationError(f"unknown owner kind: {data['kind']!r}") from None
    return OwnerRef(kind, str(data["id"]))


def _require(payload: dict, field: str) -> Any:
    if field not in payload:
        raise ValidationError(f"field {field!r} is required")
    return payload[field]


class Unauthorized(Exception):
    """Request lacks a known bearer token (only when tokens are configured)."""


def create_app(service: HRService) -> FastAPI:
    app = FastAPI(title="unihr", version="0.1.0", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.service = service

    @app.exception_handler(HRError)
    async def hr_error_handler(request: Request, exc: HRError) -> JSONResponse:
        body = {"error": {"code": exc.code, "message": exc.message}}
        if exc.details:
            body["error"]["details"] = {
                k: (v.isoformat() if isinstance(v, date) else v) for k, v in exc.details.items()
            }
        return JSONResponse(status_code=status_for(exc), content=body)

    @app.exception_handler(Unauthorized)
    async def unauthorized_handler(request: Request, exc: Unauthorized) -> JSONResponse:
        return JSONResponse(
            status_code=401,
            content={
                "error": {"code": "Unauthorized", "message": "missing or unknown bearer token"}
            },
        )

    def authed(request: Request) -> str:
        """Resolve the acting operator; anonymous when no tokens are set."""
        tokens = service.config.auth_tokens
        if not tokens:
            return "anonymous"
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip()
        actor = tokens.get(token)
        if actor is None:
            raise Unauthorized()
        return actor

    def mutate(actor: str, operation: str, call: Callable[[], tuple[Any, str]]) -> Any:
        """Run a mutation and record exactly one audit entry."""
        try:
            result, entity_ref = call()
        except HRError as exc:
            service.record_audit(actor, operation, "-", exc.code)
            raise
        service.record_audit(actor, operation, entity_ref, "ok")
        return result

    # -- health ---------------------------------------------------------

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.get("/readyz")
    def readyz() -> JSONResponse:
        if service.ready():
            return JSONResponse({"status": "ok"})
        return JSONResponse({"status": "unavailable"}, status_code=503)

    # -- grade catalog ----------------------------------------------------

    @app.get("/grades")
    def list_grades(request: Request) -> list[dict]:
        authed(request)
        return catalog_records()

    @app.get("/grades/{name}")
    def classify(name: str, request: Request) -> list[dict]:
        authed(request)
        return [grade_json(g) for g in classify_grade(name)]

    # -- persons and employees ----------------------------------------------

    @app.post("/persons", status_code=201)
    def create_person(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            person = service.register_person(
                str(_require(payload, "full_name")),
                _parse_iso_date(payload.get("date_of_birth"), "date_of_birth"),
                bool(payload.get("doctoral_degree", False)),
            )
            return person_json(person), person.person_id

        return mutate(actor, "register_person", call)

    @app.get("/persons")
    def list_persons(request: Request) -> list[dict]:
        authed(request)
        return [person_json(p) for p in service.store.list_persons()]

    @app.get("/persons/{person_id}")
    def get_person(person_id: str, request: Request) -> dict:
        authed(request)
        person = service.store.get_person(person_id)
        if person is None:
            raise NotFound(f"no such person: {person_id}")
        return person_json(person)

    @app.post("/employees", status_code=201)
    def create_employee(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            employee = service.register_employee(
                str(_require(payload, "person_id")),
                str(_require(payload, "staff_group")),
                _parse_iso_date(payload.get("employment_start"), "employment_start"),
                bool(payload.get("active", True)),
            )
            return employee_json(employee), employee.person_id

        return mutate(actor, "register_employee", call)

    @app.get("/employees")
    def list_employees(request: Request) -> list[dict]:
        authed(request)
        return [employee_json(e) for e in service.store.list_employees()]

    @app.get("/employees/{person_id}")
    def get_employee(person_id: str, request: Request) -> dict:
        authed(request)
        employee = service.store.get_employee(person_id)
        if employee is None:
            raise NotFound(f"no employee record for person: {person_id}")
        return employee_json(employee)

    # -- appointment procedures -----------------------------------------------

    @app.post("/procedures", status_code=201)
    def open_procedure(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            grade = find_grade(str(_require(payload, "grade")), payload.get("track"))
            procedure = service.open_procedure(
                grade, str(_require(payload, "council_ref")), actor=actor
            )
            return procedure_json(procedure), procedure.procedure_id

        return mutate(actor, "open_procedure", call)

    @app.get("/procedures")
    def list_procedures(request: Request) -> list[dict]:
        authed(request)
        return [procedure_json(p) for p in service.store.list_procedures()]

    @app.get("/procedures/{procedure_id}")
    def get_procedure(procedure_id: str, request: Request) -> dict:
        authed(request)
        procedure = service.store.get_procedure(procedure_id)
        if procedure is None:
            raise NotFound(f"no such procedure: {procedure_id}")
        return procedure_json(procedure)

    @app.get("/procedures/{procedure_id}/export")
    def export_procedure(procedure_id: str, request: Request) -> PlainTextResponse:
        authed(request)
        procedure = service.store.get_procedure(procedure_id)
        if procedure is None:
            raise NotFound(f"no such procedure: {procedure_id}")
        return PlainTextResponse(
            workflow.history_to_jsonl(procedure.history), media_type="application/x-ndjson"
        )

    @app.post("/procedures/{procedure_id}/events")
    def post_event(
        procedure_id: str,
        request: Request,
        payload: dict = Body(...),
        x_expected_version: str | None = Header(default=None),
    ) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            if x_expected_version is None:
                raise ValidationError("X-Expected-Version header is required")
            try:
                expected_version = int(x_expected_version)
            except ValueError:
                raise ValidationError(
                    f"X-Expected-Version must be an integer, got {x_expected_version!r}"
                ) from None
            event = workflow.event_from_record(
                {
                    "kind": _require(payload, "kind"),
                    "actor": actor,
                    "occurred_at": payload.get("occurred_at"),
                    "payload": payload.get("payload", {}),
                }
            )
            procedure = service.advance_procedure(procedure_id, event, expected_version)
            return procedure_json(procedure), procedure_id

        return mutate(actor, f"advance:{payload.get('kind', '?')}", call)

    # -- appointments ------------------------------------------------------------

    @app.get("/appointments")
    def list_appointments(request: Request, person_id: str | None = Query(default=None)) -> list[dict]:
        authed(request)
        return [appointment_json(a) for a in service.store.list_appointments(person_id)]

    @app.get("/appointments/{appointment_id}")
    def get_appointment(appointment_id: str, request: Request) -> dict:
        authed(request)
        appointment = service.store.get_appointment(appointment_id)
        if appointment is None:
            raise NotFound(f"no such appointment: {appointment_id}")
        return appointment_json(appointment)

    # -- expiry review --------------------------------------------------------------

    @app.get("/expiry-review")
    def expiry_review(
        request: Request,
        as_of: str | None = Query(default=None),
        format: str = Query(default="json"),
    ):
        authed(request)
        day = _parse_iso_date(as_of, "as_of")
        if format == "csv":
            return PlainTextResponse(service.review_csv(day), media_type="text/csv")
        return [review_row_json(r) for r in service.expiry_review(day)]

    @app.post("/expiry-review/run")
    def run_expiry_review(request: Request, payload: dict = Body(...)) -> list[dict]:
        actor = authed(request)

        def call() -> tuple[list[dict], str]:
            day = _parse_iso_date(payload.get("as_of"), "as_of")
            created = service.run_expiry_review(day)
            return [notification_json(n) for n in created], day.isoformat()

        return mutate(actor, "run_expiry_review", call)

    @app.get("/expiry-review/notifications")
    def list_notifications(request: Request) -> list[dict]:
        authed(request)
        return [notification_json(n) for n in service.store.list_notifications()]

    # -- researcher registry -----------------------------------------------------------

    @app.post("/registry/applications", status_code=201)
    def submit_registration(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            documents = payload.get("documents", [])
            if not isinstance(documents, list):
                raise ValidationError("documents must be a list of references")
            application = service.submit_registration(
                str(_require(payload, "person_id")),
                str(_require(payload, "category")),
                [str(d) for d in documents],
            )
            return application_json(application), application.application_id

        return mutate(actor, "submit_registration", call)

    @app.get("/registry/applications")
    def list_applications(request: Request) -> list[dict]:
        authed(request)
        return [application_json(a) for a in service.store.list_registry_applications()]

    @app.get("/registry/applications/{application_id}")
    def get_application(application_id: str, request: Request) -> dict:
        authed(request)
        application = service.store.get_registry_application(application_id)
        if application is None:
            raise NotFound(f"no such application: {application_id}")
        return application_json(application)

    @app.post("/registry/applications/{application_id}/decision")
    def record_decision(
        application_id: str, request: Request, payload: dict = Body(...)
    ) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            application = service.record_ministry_decision(
                application_id,
                str(_require(payload, "decision")),
                scientist_id=payload.get("scientist_id"),
                reason=payload.get("reason"),
            )
            return application_json(application), application_id

        return mutate(actor, "record_ministry_decision", call)

    @app.get("/registry/entries")
    def list_entries(request: Request) -> list[dict]:
        authed(request)
        return [entry_json(e) for e in service.store.list_registry_entries()]

    # -- publications ---------------------------------------------------------------------

    @app.get("/publications/{person_id}")
    def list_publications(
        person_id: str, request: Request, type_of_work: str | None = Query(default=None)
    ) -> list[dict]:
        authed(request)
        return [publication_json(r) for r in service.list_publications(person_id, type_of_work)]

    @app.post("/publications/sync/{person_id}")
    def sync_publications(person_id: str, request: Request) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            report = service.sync_publications(person_id)
            return sync_report_json(report), person_id

        return mutate(actor, "sync_publications", call)

    @app.put("/publications/mappings/{person_id}")
    def map_author(person_id: str, request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            service.map_author(person_id, str(_require(payload, "author_key")))
            return {"person_id": person_id, "author_key": payload["author_key"]}, person_id

        return mutate(actor, "map_author", call)

    @app.delete("/publications/{person_id}/{source_key}")
    def remove_publication(person_id: str, source_key: str, request: Request) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            service.remove_publication(person_id, source_key)
            return {"removed": source_key}, f"{person_id}/{source_key}"

        return mutate(actor, "remove_publication", call)

    # -- document vault ----------------------------------------------------------------------

    @app.post("/documents", status_code=201)
    def attach_document(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            document = service.attach_document(
                _owner_from_json(_require(payload, "owner")),
                str(_require(payload, "path")),
                str(payload.get("declared_format", "")),
                str(payload.get("description", "")),
            )
            return document_json(document), document.document_id

        return mutate(actor, "attach_document", call)

    @app.get("/documents")
    def list_documents(
        request: Request,
        owner_kind: str = Query(...),
        owner_id: str = Query(...),
    ) -> list[dict]:
        authed(request)
        owner = _owner_from_json({"kind": owner_kind, "id": owner_id})
        return [document_json(d) for d in service.list_attachments(owner)]

    @app.get("/documents/{document_id}")
    def resolve_document(document_id: str, request: Request) -> dict:
        authed(request)
        path, declared_format = service.resolve_document(document_id)
        return {"document_id": document_id, "path": path, "declared_format": declared_format}

    @app.delete("/documents/{document_id}")
    def detach_document(document_id: str, request: Request) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            service.detach_document(document_id)
            return {"detached": document_id}, document_id

        return mutate(actor, "detach_document", call)

    # -- requirements ------------------------------------------------------------------------

    @app.post("/requirements", status_code=201)
    def add_requirement(request: Request, payload: dict = Body(...)) -> dict:
        actor = authed(request)

        def call() -> tuple[dict, str]:
            requirement = service.add_requirement(
                str(_require(payload, "text")),
                str(_require(payload, "category")),
                str(_require(payload, "priority")),
            )
            return requirement_json(requirement), requirement.requirement_id

        return mutate(actor, "add_requirement", call)

    @app.get("/requirements")
    def list_requirements(request: Request) -> list[dict]:
        authed(request)
        return [requirement_json(r) for r in service.store.list_requirements()]

    @app.get("/requirements/backlog")
    def backlog(request: Request) -> list[dict]:
        authed(request)
        return [requirement_json(r) for r in service.backlog()]

    # -- import and audit ------------------------------------------------------------------------

    @app.post("/import/employees")
    async def import_employees(request: Request) -> dict:
        actor = authed(request)
        text = (await request.body()).decode("utf-8")

        def call() -> tuple[dict, str]:
            report = service.import_employees(io.StringIO(text))
            return (
                {"created": report.created, "skipped": report.skipped, "errors": report.errors},
                f"rows:{report.created + report.skipped + len(report.errors)}",
            )

        return mutate(actor, "import_employees", call)

    @app.get("/audit")
    def audit(request: Request) -> list[dict]:
        authed(request)
        return service.audit_entries()

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service; startup failures exit nonzero with a diagnostic."""
    import uvicorn

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((config.host, config.port))
    except OSError as exc:
        print(f"unihr: cannot listen on {config.host}:{config.port}: {exc}", file=sys.stderr)
        raise SystemExit(1) from None
    finally:
        probe.close()

    service = HRService(config)
    app = create_app(service)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
