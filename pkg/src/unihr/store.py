"""Embedded persistent store backing the service.

SQLite, one table per entity plus an event table for procedures. The
procedure row caches state and version; the event history is the
source of truth, and reads can verify that the cached state equals a
strict replay (on by default, cheap for desk-scale histories).

All mutations are linearizable: a reentrant lock serializes access to
the single connection and ``transaction()`` brackets multi-step
mutations so partial failures roll back. The clock and id factory are
injectable for deterministic tests.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import uuid
from contextlib import contextmanager
from datetime import date, datetime, timezone
from typing import Any, Callable, Iterator

from . import workflow
from .bibliography import PublicationRecord
from .errors import DuplicateScientistId, HRError, ValidationError
from .expiry import ExpiryNotification, ExpiryState
from .grades import catalog_records, find_grade
from .people import Employee, Person, StaffGroup
from .registry import (
    ApplicationStatus,
    RegistryApplication,
    RegistryCategory,
    RegistryEntry,
)
from .requirements import FurpsCategory, Priority, Requirement, RequirementKind
from .vault import AttachedDocument, OwnerKind, OwnerRef
from .workflow import (
    AppointmentProcedure,
    GradeAppointment,
    HistoryStep,
    ProcedureState,
    Projection,
    WorkflowRules,
)


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def default_id_factory(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


class SequentialIds:
    """Deterministic id factory: per-prefix counters."""

    def __init__(self) -> None:
        self._counters: dict[str, int] = {}
        self._lock = threading.Lock()

    def __call__(self, prefix: str) -> str:
        with self._lock:
            n = self._counters.get(prefix, 0) + 1
            self._counters[prefix] = n
        return f"{prefix}-{n:06d}"


class FixedClock:
    """A clock frozen at one instant."""

    def __init__(self, at: datetime):
        if at.tzinfo is None:
            at = at.replace(tzinfo=timezone.utc)
        self.at = at

    def __call__(self) -> datetime:
        return self.at


class StoreIntegrityError(HRError):
    """Cached procedure state disagrees with a replay of its history."""


_SCHEMA = """
CREATE TABLE IF NOT EXISTS grade_catalog (
    name TEXT NOT NULL,
    track TEXT NOT NULL,
    rank INTEGER NOT NULL,
    PRIMARY KEY (name, track)
);
CREATE TABLE IF NOT EXISTS persons (
    person_id TEXT PRIMARY KEY,
    full_name TEXT NOT NULL,
    date_of_birth TEXT NOT NULL,
    doctoral_degree INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS employees (
    person_id TEXT PRIMARY KEY REFERENCES persons(person_id),
    staff_group TEXT NOT NULL,
    employment_start TEXT NOT NULL,
    active INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS procedures (
    procedure_id TEXT PRIMARY KEY,
    grade_name TEXT NOT NULL,
    grade_track TEXT NOT NULL,
    state TEXT NOT NULL,
    version INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS procedure_events (
    procedure_id TEXT NOT NULL REFERENCES procedures(procedure_id),
    seq INTEGER NOT NULL,
    kind TEXT NOT NULL,
    actor TEXT NOT NULL,
    occurred_at TEXT,
    payload TEXT NOT NULL,
    resulting_state TEXT NOT NULL,
    PRIMARY KEY (procedure_id, seq)
);
CREATE TABLE IF NOT EXISTS appointments (
    appointment_id TEXT PRIMARY KEY,
    person_id TEXT NOT NULL,
    grade_name TEXT NOT NULL,
    grade_track TEXT NOT NULL,
    procedure_id TEXT NOT NULL,
    valid_from TEXT NOT NULL,
    valid_to TEXT
);
CREATE TABLE IF NOT EXISTS registry_applications (
    application_id TEXT PRIMARY KEY,
    person_id TEXT NOT NULL,
    category TEXT NOT NULL,
    documents TEXT NOT NULL,
    status TEXT NOT NULL,
    submitted_at TEXT NOT NULL,
    scientist_id TEXT,
    rejection_reason TEXT,
    ack_token TEXT
);
CREATE TABLE IF NOT EXISTS registry_entries (
    scientist_id TEXT PRIMARY KEY,
    person_id TEXT NOT NULL,
    category TEXT NOT NULL,
    registered_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS publications (
    person_id TEXT NOT NULL,
    source_key TEXT NOT NULL,
    title TEXT NOT NULL,
    type_of_work TEXT NOT NULL,
    publishing_date TEXT NOT NULL,
    url TEXT NOT NULL,
    PRIMARY KEY (person_id, source_key)
);
CREATE TABLE IF NOT EXISTS author_mappings (
    person_id TEXT PRIMARY KEY,
    author_key TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS documents (
    document_id TEXT PRIMARY KEY,
    owner_kind TEXT NOT NULL,
    owner_id TEXT NOT NULL,
    path TEXT NOT NULL,
    declared_format TEXT NOT NULL,
    attached_at TEXT NOT NULL,
    description TEXT NOT NULL,
    deleted INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS requirements (
    requirement_id TEXT PRIMARY KEY,
    text TEXT NOT NULL,
    kind TEXT NOT NULL,
    category TEXT NOT NULL,
    priority TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS notifications (
    notification_id TEXT PRIMARY KEY,
    appointment_id TEXT NOT NULL,
    person_id TEXT NOT NULL,
    grade_name TEXT NOT NULL,
    valid_to TEXT NOT NULL,
    status TEXT NOT NULL,
    generated_at TEXT NOT NULL,
    UNIQUE (appointment_id, status)
);
CREATE TABLE IF NOT EXISTS audit_log (
    entry_id INTEGER PRIMARY KEY AUTOINCREMENT,
    actor TEXT NOT NULL,
    at TEXT NOT NULL,
    operation TEXT NOT NULL,
    entity_ref TEXT NOT NULL,
    outcome TEXT NOT NULL
);
"""


def _iso(value: date | datetime | None) -> str | None:
    return None if value is None else value.isoformat()


def _read_date(value: str) -> date:
    return date.fromisoformat(value)


def _read_datetime(value: str | None) -> datetime | None:
    return None if value is None else datetime.fromisoformat(value)


class Store:
    def __init__(
        self,
        path: str = ":memory:",
        *,
        clock: Callable[[], datetime] = utcnow,
        id_factory: Callable[[str], str] = default_id_factory,
        workflow_rules: WorkflowRules = workflow.DEFAULT_RULES,
        verify_on_read: bool = True,
    ):
        self.path = path
        self.now = clock
        self._id_factory = id_factory
        self._workflow_rules = workflow_rules
        self.verify_on_read = verify_on_read
        self._lock = threading.RLock()
        self._txn_depth = 0
        self._conn = sqlite3.connect(path, check_same_thread=False, isolation_level=None)
        self._conn.row_factory = sqlite3.Row
        self._conn.execute("PRAGMA foreign_keys = ON")
        self._conn.executescript(_SCHEMA)  # executescript manages its own commit
        with self.transaction():
            self._seed_catalog()

    # -- infrastructure ------------------------------------------------

    def next_id(self, prefix: str) -> str:
        return self._id_factory(prefix)

    @contextmanager
    def transaction(self) -> Iterator[None]:
        """Serialize and atomically commit a group of mutations."""
        with self._lock:
            if self._txn_depth == 0:
                self._conn.execute("BEGIN IMMEDIATE")
            self._txn_depth += 1
            try:
                yield
            except BaseException:
                self._txn_depth -= 1
                if self._txn_depth == 0:
                    self._conn.execute("ROLLBACK")
                raise
            else:
                self._txn_depth -= 1
                if self._txn_depth == 0:
                    self._conn.execute("COMMIT")

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def _seed_catalog(self) -> None:
        for record in catalog_records():
            self._conn.execute(
                "INSERT OR REPLACE INTO grade_catalog (name, track, rank) VALUES (?, ?, ?)",
                (record["name"], record["track"], record["rank"]),
            )

    def grade_catalog_size(self) -> int:
        with self._lock:
            row = self._conn.execute("SELECT COUNT(*) AS n FROM grade_catalog").fetchone()
        return int(row["n"])

    # -- persons and employees -----------------------------------------

    def add_person(self, person: Person) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO persons VALUES (?, ?, ?, ?)",
                (
                    person.person_id,
                    person.full_name,
                    _iso(person.date_of_birth),
                    int(person.doctoral_degree),
                ),
            )

    def get_person(self, person_id: str) -> Person | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM persons WHERE person_id = ?", (person_id,)
            ).fetchone()
        return self._person(row) if row else None

    def list_persons(self) -> list[Person]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM persons ORDER BY rowid").fetchall()
        return [self._person(r) for r in rows]

    def person_with_identity(self, full_name: str, date_of_birth: date) -> Person | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM persons WHERE full_name = ? AND date_of_birth = ?",
                (full_name, _iso(date_of_birth)),
            ).fetchone()
        return self._person(row) if row else None

    @staticmethod
    def _person(row: sqlite3.Row) -> Person:
        return Person(
            person_id=row["person_id"],
            full_name=row["full_name"],
            date_of_birth=_read_date(row["date_of_birth"]),
            doctoral_degree=bool(row["doctoral_degree"]),
        )

    def add_employee(self, employee: Employee) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO employees VALUES (?, ?, ?, ?)",
                (
                    employee.person_id,
                    employee.staff_group.value,
                    _iso(employee.employment_start),
                    int(employee.active),
                ),
            )

    def get_employee(self, person_id: str) -> Employee | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM employees WHERE person_id = ?", (person_id,)
            ).fetchone()
        return self._employee(row) if row else None

    def list_employees(self) -> list[Employee]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM employees ORDER BY rowid").fetchall()
        return [self._employee(r) for r in rows]

    @staticmethod
    def _employee(row: sqlite3.Row) -> Employee:
        return Employee(
            person_id=row["person_id"],
            staff_group=StaffGroup(row["staff_group"]),
            employment_start=_read_date(row["employment_start"]),
            active=bool(row["active"]),
        )

    # -- procedures ------------------------------------------------------

    def add_procedure(self, procedure: AppointmentProcedure) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO procedures VALUES (?, ?, ?, ?, ?)",
                (
                    procedure.procedure_id,
                    procedure.target_grade.name,
                    procedure.target_grade.track.value,
                    procedure.state.value,
                    procedure.version,
                ),
            )
            for seq, step in enumerate(procedure.history, start=1):
                self._insert_event(procedure.procedure_id, seq, step)

    def _insert_event(self, procedure_id: str, seq: int, step: HistoryStep) -> None:
        record = step.event.to_record()
        self._conn.execute(
            "INSERT INTO procedure_events VALUES (?, ?, ?, ?, ?, ?, ?)",
            (
                procedure_id,
                seq,
                record["kind"],
                record["actor"],
                record["occurred_at"],
                json.dumps(record["payload"], ensure_ascii=False, sort_keys=True),
                step.resulting_state.value,
            ),
        )

    def append_procedure_event(
        self,
        procedure_id: str,
        step: HistoryStep,
        projection: Projection,
        *,
        new_version: int,
    ) -> None:
        with self.transaction():
            self._insert_event(procedure_id, new_version, step)
            self._conn.execute(
                "UPDATE procedures SET state = ?, version = ? WHERE procedure_id = ?",
                (projection.state.value, new_version, procedure_id),
            )

    def get_procedure(self, procedure_id: str) -> AppointmentProcedure | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM procedures WHERE procedure_id = ?", (procedure_id,)
            ).fetchone()
            if row is None:
                return None
            event_rows = self._conn.execute(
                "SELECT * FROM procedure_events WHERE procedure_id = ? ORDER BY seq",
                (procedure_id,),
            ).fetchall()
        steps = tuple(
            HistoryStep(
                event=workflow.event_from_record(
                    {
                        "kind": e["kind"],
                        "actor": e["actor"],
                        "occurred_at": e["occurred_at"],
                        "payload": json.loads(e["payload"]),
                    }
                ),
                resulting_state=ProcedureState(e["resulting_state"]),
            )
            for e in event_rows
        )
        cached_state = ProcedureState(row["state"])
        if self.verify_on_read:
            replayed = workflow.replay([s.event for s in steps], self._workflow_rules)
            if replayed is not cached_state or len(steps) != row["version"]:
                raise StoreIntegrityError(
                    f"procedure {procedure_id}: cached state {cached_state.value} "
                    f"(version {row['version']}) disagrees with replayed "
                    f"{replayed.value} over {len(steps)} events"
                )
        projection = self._project(steps, cached_state)
        return AppointmentProcedure(
            procedure_id=procedure_id,
            target_grade=find_grade(row["grade_name"], row["grade_track"]),
            state=cached_state,
            committee=projection.committee,
            applicants=projection.applicants,
            promoted=projection.promoted,
            history=steps,
            version=row["version"],
        )

    @staticmethod
    def _project(steps: tuple[HistoryStep, ...], state: ProcedureState) -> Projection:
        committee: tuple[str, ...] = ()
        applicants: tuple[workflow.Application, ...] = ()
        promoted: tuple[str, ...] = ()
        for step in steps:
            event = step.event
            if isinstance(event, workflow.SelectCommittee):
                committee = event.members
            elif isinstance(event, workflow.ReceiveApplication):
                applicants += (
                    workflow.Application(event.applicant, event.occurred_at, event.documents),
                )
            elif isinstance(event, workflow.BoardDecision):
                promoted = event.promoted
        return Projection(state, committee, applicants, promoted)

    def list_procedure_ids(self) -> list[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT procedure_id FROM procedures ORDER BY rowid"
            ).fetchall()
        return [r["procedure_id"] for r in rows]

    def list_procedures(self) -> list[AppointmentProcedure]:
        procedures = []
        for procedure_id in self.list_procedure_ids():
            procedure = self.get_procedure(procedure_id)
            if procedure is not None:
                procedures.append(procedure)
        return procedures

    # -- appointments ----------------------------------------------------

    def add_appointment(self, appointment: GradeAppointment) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO appointments VALUES (?, ?, ?, ?, ?, ?, ?)",
                (
                    appointment.appointment_id,
                    appointment.person_id,
                    appointment.grade.name,
                    appointment.grade.track.value,
                    appointment.procedure_id,
                    _iso(appointment.valid_from),
                    _iso(appointment.valid_to),
                ),
            )

    def get_appointment(self, appointment_id: str) -> GradeAppointment | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM appointments WHERE appointment_id = ?", (appointment_id,)
            ).fetchone()
        return self._appointment(row) if row else None

    def list_appointments(self, person_id: str | None = None) -> list[GradeAppointment]:
        query = "SELECT * FROM appointments"
        params: tuple = ()
        if person_id is not None:
            query += " WHERE person_id = ?"
            params = (person_id,)
        with self._lock:
            rows = self._conn.execute(query + " ORDER BY rowid", params).fetchall()
        return [self._appointment(r) for r in rows]

    @staticmethod
    def _appointment(row: sqlite3.Row) -> GradeAppointment:
        return GradeAppointment(
            appointment_id=row["appointment_id"],
            person_id=row["person_id"],
            grade=find_grade(row["grade_name"], row["grade_track"]),
            procedure_id=row["procedure_id"],
            valid_from=_read_date(row["valid_from"]),
            valid_to=_read_date(row["valid_to"]) if row["valid_to"] else None,
        )

    # -- researcher registry ---------------------------------------------

    def add_registry_application(self, application: RegistryApplication) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO registry_applications VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
                self._application_row(application),
            )

    def update_registry_application(self, application: RegistryApplication) -> None:
        with self.transaction():
            self._conn.execute(
                "UPDATE registry_applications SET person_id = ?, category = ?, "
                "documents = ?, status = ?, submitted_at = ?, scientist_id = ?, "
                "rejection_reason = ?, ack_token = ? WHERE application_id = ?",
                self._application_row(application)[1:] + (application.application_id,),
            )

    @staticmethod
    def _application_row(application: RegistryApplication) -> tuple:
        return (
            application.application_id,
            application.person_id,
            application.category.value,
            json.dumps(list(application.documents), ensure_ascii=False),
            application.status.value,
            _iso(application.submitted_at),
            application.scientist_id,
            application.rejection_reason,
            application.ack_token,
        )

    def get_registry_application(self, application_id: str) -> RegistryApplication | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM registry_applications WHERE application_id = ?",
                (application_id,),
            ).fetchone()
        return self._application(row) if row else None

    def pending_registry_application(self, person_id: str) -> RegistryApplication | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM registry_applications WHERE person_id = ? AND status = ?",
                (person_id, ApplicationStatus.SUBMITTED.value),
            ).fetchone()
        return self._application(row) if row else None

    def list_registry_applications(self) -> list[RegistryApplication]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM registry_applications ORDER BY rowid"
            ).fetchall()
        return [self._application(r) for r in rows]

    @staticmethod
    def _application(row: sqlite3.Row) -> RegistryApplication:
        return RegistryApplication(
            application_id=row["application_id"],
            person_id=row["person_id"],
            category=RegistryCategory(row["category"]),
            documents=tuple(json.loads(row["documents"])),
            status=ApplicationStatus(row["status"]),
            submitted_at=_read_datetime(row["submitted_at"]),
            scientist_id=row["scientist_id"],
            rejection_reason=row["rejection_reason"],
            ack_token=row["ack_token"],
        )

    def add_registry_entry(self, entry: RegistryEntry) -> None:
        with self.transaction():
            try:
                self._conn.execute(
                    "INSERT INTO registry_entries VALUES (?, ?, ?, ?)",
                    (
                        entry.scientist_id,
                        entry.person_id,
                        entry.category.value,
                        _iso(entry.registered_at),
                    ),
                )
            except sqlite3.IntegrityError:
                raise DuplicateScientistId(
                    f"scientist id {entry.scientist_id!r} already registered",
                    scientist_id=entry.scientist_id,
                ) from None

    def get_registry_entry(self, scientist_id: str) -> RegistryEntry | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM registry_entries WHERE scientist_id = ?", (scientist_id,)
            ).fetchone()
        return self._entry(row) if row else None

    def registry_entry_for_person(self, person_id: str) -> RegistryEntry | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM registry_entries WHERE person_id = ?", (person_id,)
            ).fetchone()
        return self._entry(row) if row else None

    def list_registry_entries(self) -> list[RegistryEntry]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM registry_entries ORDER BY rowid").fetchall()
        return [self._entry(r) for r in rows]

    @staticmethod
    def _entry(row: sqlite3.Row) -> RegistryEntry:
        return RegistryEntry(
            scientist_id=row["scientist_id"],
            person_id=row["person_id"],
            category=RegistryCategory(row["category"]),
            registered_at=_read_datetime(row["registered_at"]),
        )

    # -- publications ------------------------------------------------------

    def list_publications(self, person_id: str) -> list[PublicationRecord]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM publications WHERE person_id = ? ORDER BY rowid",
                (person_id,),
            ).fetchall()
        return [
            PublicationRecord(
                source_key=r["source_key"],
                title=r["title"],
                type_of_work=r["type_of_work"],
                publishing_date=_read_date(r["publishing_date"]),
                url=r["url"],
            )
            for r in rows
        ]

    def put_publication(self, person_id: str, record: PublicationRecord) -> None:
        with self.transaction():
            updated = self._conn.execute(
                "UPDATE publications SET title = ?, type_of_work = ?, "
                "publishing_date = ?, url = ? WHERE person_id = ? AND source_key = ?",
                (
                    record.title,
                    record.type_of_work,
                    _iso(record.publishing_date),
                    record.url,
                    person_id,
                    record.source_key,
                ),
            )
            if updated.rowcount == 0:
                self._conn.execute(
                    "INSERT INTO publications VALUES (?, ?, ?, ?, ?, ?)",
                    (
                        person_id,
                        record.source_key,
                        record.title,
                        record.type_of_work,
                        _iso(record.publishing_date),
                        record.url,
                    ),
                )

    def delete_publication(self, person_id: str, source_key: str) -> bool:
        with self.transaction():
            cursor = self._conn.execute(
                "DELETE FROM publications WHERE person_id = ? AND source_key = ?",
                (person_id, source_key),
            )
            return cursor.rowcount > 0

    def set_author_mapping(self, person_id: str, author_key: str) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO author_mappings VALUES (?, ?) "
                "ON CONFLICT(person_id) DO UPDATE SET author_key = excluded.author_key",
                (person_id, author_key),
            )

    def get_author_mapping(self, person_id: str) -> str | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT author_key FROM author_mappings WHERE person_id = ?", (person_id,)
            ).fetchone()
        return row["author_key"] if row else None

    # -- document vault ----------------------------------------------------

    def owner_exists(self, owner: OwnerRef) -> bool:
        table = {
            OwnerKind.PROCEDURE: ("procedures", "procedure_id"),
            OwnerKind.REGISTRY_APPLICATION: ("registry_applications", "application_id"),
            OwnerKind.EMPLOYEE: ("employees", "person_id"),
        }[owner.kind]
        with self._lock:
            row = self._conn.execute(
                f"SELECT 1 FROM {table[0]} WHERE {table[1]} = ?", (owner.ref_id,)
            ).fetchone()
        return row is not None

    def add_document(self, document: AttachedDocument) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO documents VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (
                    document.document_id,
                    document.owner.kind.value,
                    document.owner.ref_id,
                    document.path,
                    document.declared_format,
                    _iso(document.attached_at),
                    document.description,
                    int(document.deleted),
                ),
            )

    def get_document(self, document_id: str) -> AttachedDocument | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM documents WHERE document_id = ?", (document_id,)
            ).fetchone()
        return self._document(row) if row else None

    def list_documents(self, owner: OwnerRef) -> list[AttachedDocument]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM documents WHERE owner_kind = ? AND owner_id = ? "
                "AND deleted = 0 ORDER BY attached_at, rowid",
                (owner.kind.value, owner.ref_id),
            ).fetchall()
        return [self._document(r) for r in rows]

    def mark_document_deleted(self, document_id: str) -> None:
        with self.transaction():
            self._conn.execute(
                "UPDATE documents SET deleted = 1 WHERE document_id = ?", (document_id,)
            )

    @staticmethod
    def _document(row: sqlite3.Row) -> AttachedDocument:
        return AttachedDocument(
            document_id=row["document_id"],
            owner=OwnerRef(OwnerKind(row["owner_kind"]), row["owner_id"]),
            path=row["path"],
            declared_format=row["declared_format"],
            attached_at=_read_datetime(row["attached_at"]),
            description=row["description"],
            deleted=bool(row["deleted"]),
        )

    # -- requirements --------------------------------------------------------

    def add_requirement(self, requirement: Requirement) -> None:
        with self.transaction():
            try:
                self._conn.execute(
                    "INSERT INTO requirements VALUES (?, ?, ?, ?, ?, ?)",
                    (
                        requirement.requirement_id,
                        requirement.text,
                        requirement.kind.value,
                        requirement.category.value,
                        requirement.priority.value,
                        _iso(requirement.created_at),
                    ),
                )
            except sqlite3.IntegrityError:
                raise ValidationError(
                    f"requirement id {requirement.requirement_id!r} already exists"
                ) from None

    def list_requirements(self) -> list[Requirement]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM requirements ORDER BY rowid").fetchall()
        return [
            Requirement(
                requirement_id=r["requirement_id"],
                text=r["text"],
                kind=RequirementKind(r["kind"]),
                category=FurpsCategory(r["category"]),
                priority=Priority(r["priority"]),
                created_at=_read_datetime(r["created_at"]),
            )
            for r in rows
        ]

    # -- expiry notifications --------------------------------------------------

    def has_notification(self, appointment_id: str, status: ExpiryState) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM notifications WHERE appointment_id = ? AND status = ?",
                (appointment_id, status.value),
            ).fetchone()
        return row is not None

    def add_notification(self, notification: ExpiryNotification) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO notifications VALUES (?, ?, ?, ?, ?, ?, ?)",
                (
                    notification.notification_id,
                    notification.appointment_id,
                    notification.person_id,
                    notification.grade_name,
                    _iso(notification.valid_to),
                    notification.status.value,
                    _iso(notification.generated_at),
                ),
            )

    def list_notifications(self) -> list[ExpiryNotification]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM notifications ORDER BY rowid").fetchall()
        return [
            ExpiryNotification(
                notification_id=r["notification_id"],
                appointment_id=r["appointment_id"],
                person_id=r["person_id"],
                grade_name=r["grade_name"],
                valid_to=_read_date(r["valid_to"]),
                status=ExpiryState(r["status"]),
                generated_at=_read_datetime(r["generated_at"]),
            )
            for r in rows
        ]

    # -- audit -----------------------------------------------------------------

    def add_audit_entry(
        self, actor: str, at: datetime, operation: str, entity_ref: str, outcome: str
    ) -> None:
        with self.transaction():
            self._conn.execute(
                "INSERT INTO audit_log (actor, at, operation, entity_ref, outcome) "
                "VALUES (?, ?, ?, ?, ?)",
                (actor, _iso(at), operation, entity_ref, outcome),
            )

    def list_audit_entries(self) -> list[dict[str, str]]:
        with self._lock:
            rows = self._conn.execute("SELECT * FROM audit_log ORDER BY entry_id").fetchall()
        return [dict(r) for r in rows]

    # -- snapshot ----------------------------------------------------------------

    SNAPSHOT_TABLES = (
        "persons",
        "employees",
        "procedures",
        "procedure_events",
        "appointments",
        "registry_applications",
        "registry_entries",
        "publications",
        "author_mappings",
        "documents",
        "requirements",
        "notifications",
    )

    def snapshot(self) -> dict[str, list[dict[str, Any]]]:
        """Canonical dump of all entity tables (audit log excluded).

        Two stores that received the same mutations under the same clock
        and id factory produce equal snapshots.
        """
        out: dict[str, list[dict[str, Any]]] = {}
        with self._lock:
            for table in self.SNAPSHOT_TABLES:
                rows = self._conn.execute(f"SELECT * FROM {table} ORDER BY rowid").fetchall()
                out[table] = [dict(r) for r in rows]
        return out
