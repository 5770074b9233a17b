"""Deployable service core: store wiring, imports, demo seed, audit.

HRService binds a store, the effective configuration and the external
clients, and exposes every module operation as a method. The HTTP
layer and the CLI are thin shells over this facade.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Iterable

from . import bibliography, expiry, people, registry, requirements, vault, workflow
from .bibliography import BibliographyClient, PublicationRecord, SyncReport
from .config import ServiceConfig
from .errors import FileUnreadable, HRError, ValidationError
from .expiry import ExpiryNotification, ReviewRow
from .external import (
    DEMO_AUTHOR_KEY,
    DEMO_BIBLIOGRAPHY,
    HttpBibliographyClient,
    HttpMinistryClient,
    StubBibliographyClient,
    StubMinistryClient,
)
from .grades import CATALOG, AcademicGrade, find_grade
from .people import Employee, Person, StaffGroup
from .registry import MinistryClient, RegistryApplication
from .requirements import Priority, Requirement
from .store import Store
from .vault import AttachedDocument, OwnerKind, OwnerRef
from .workflow import AppointmentProcedure, ProcedureEvent


@dataclass(frozen=True)
class AuditEntry:
    actor: str
    at: datetime
    operation: str
    entity_ref: str
    outcome: str


@dataclass
class ImportReport:
    created: int = 0
    skipped: int = 0
    errors: list[dict] = field(default_factory=list)


IMPORT_COLUMNS = (
    "full_name",
    "date_of_birth",
    "doctoral_degree",
    "staff_group",
    "employment_start",
)

_TRUE = {"1", "true", "yes", "y"}
_FALSE = {"0", "false", "no", "n", ""}


def _parse_flag(value: str, column: str) -> bool:
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValidationError(f"{column} must be a boolean flag, got {value!r}")


class HRService:
    def __init__(
        self,
        config: ServiceConfig | None = None,
        *,
        store: Store | None = None,
        ministry: MinistryClient | None = None,
        bibliography_client: BibliographyClient | None = None,
    ):
        self.config = (config or ServiceConfig()).validated()
        self.rules = self.config.workflow_rules()
        self.store = store or Store(
            self.config.store_path, workflow_rules=self.rules
        )
        if ministry is not None:
            self.ministry = ministry
        elif self.config.external_mode == "http":
            self.ministry = HttpMinistryClient(self.config.ministry_url)
        else:
            self.ministry = StubMinistryClient()
        if bibliography_client is not None:
            self.bibliography = bibliography_client
        elif self.config.external_mode == "http":
            self.bibliography = HttpBibliographyClient(self.config.bibliography_url)
        else:
            self.bibliography = StubBibliographyClient(DEMO_BIBLIOGRAPHY)

    def ready(self) -> bool:
        """Healthy once the store is migrated and the catalog is seeded."""
        return self.store.grade_catalog_size() == len(CATALOG)

    # -- domain core -----------------------------------------------------

    def register_person(
        self, full_name: str, date_of_birth: date, doctoral_degree: bool = False
    ) -> Person:
        return people.register_person(self.store, full_name, date_of_birth, doctoral_degree)

    def register_employee(
        self,
        person_id: str,
        staff_group: StaffGroup | str,
        employment_start: date,
        active: bool = True,
    ) -> Employee:
        return people.register_employee(
            self.store, person_id, staff_group, employment_start, active
        )

    # -- appointment workflow ---------------------------------------------

    def open_procedure(
        self, target_grade: AcademicGrade, council_ref: str, *, actor: str = "system"
    ) -> AppointmentProcedure:
        return workflow.open_procedure(
            self.store, target_grade, council_ref, actor=actor, rules=self.rules
        )

    def advance_procedure(
        self, procedure_id: str, event: ProcedureEvent, expected_version: int
    ) -> AppointmentProcedure:
        return workflow.advance(
            self.store, procedure_id, event, expected_version, rules=self.rules
        )

    # -- expiry engine ----------------------------------------------------

    def expiry_review(self, as_of: date) -> list[ReviewRow]:
        return expiry.review_rows(
            self.store, as_of, warning_months=self.config.warning_window_months
        )

    def run_expiry_review(self, as_of: date) -> list[ExpiryNotification]:
        return expiry.generate_review(
            self.store, as_of, warning_months=self.config.warning_window_months
        )

    def review_csv(self, as_of: date) -> str:
        """The review as a delimited tabular report."""
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["person", "grade", "valid_to", "status", "deadline_to_initiate"])
        for row in self.expiry_review(as_of):
            writer.writerow(
                [
                    row.person_id,
                    row.grade_name,
                    row.valid_to.isoformat(),
                    row.status.state.value,
                    row.status.deadline_to_initiate.isoformat(),
                ]
            )
        return out.getvalue()

    # -- researcher registry ------------------------------------------------

    def submit_registration(
        self, person_id: str, category: str, documents: Iterable[str] = ()
    ) -> RegistryApplication:
        return registry.submit_registration(
            self.store, self.ministry, person_id, category, tuple(documents)
        )

    def record_ministry_decision(
        self,
        application_id: str,
        decision: str,
        *,
        scientist_id: str | None = None,
        reason: str | None = None,
    ) -> RegistryApplication:
        return registry.record_ministry_decision(
            self.store, application_id, decision, scientist_id=scientist_id, reason=reason
        )

    # -- bibliography ---------------------------------------------------------

    def map_author(self, person_id: str, author_key: str) -> None:
        bibliography.map_author(self.store, person_id, author_key)

    def sync_publications(self, person_id: str) -> SyncReport:
        return bibliography.sync_publications(self.store, self.bibliography, person_id)

    def list_publications(
        self, person_id: str, type_of_work: str | None = None
    ) -> list[PublicationRecord]:
        return bibliography.list_publications(self.store, person_id, type_of_work)

    def remove_publication(self, person_id: str, source_key: str) -> None:
        bibliography.remove_publication(self.store, person_id, source_key)

    # -- document vault ---------------------------------------------------------

    def attach_document(
        self, owner: OwnerRef, path: str, declared_format: str, description: str = ""
    ) -> AttachedDocument:
        return vault.attach(self.store, owner, path, declared_format, description)

    def list_attachments(self, owner: OwnerRef) -> list[AttachedDocument]:
        return vault.list_attachments(self.store, owner)

    def resolve_document(self, document_id: str) -> tuple[str, str]:
        return vault.resolve(self.store, document_id)

    def detach_document(self, document_id: str) -> None:
        vault.detach(self.store, document_id)

    def attachment_manifest_csv(self, procedure_id: str) -> str:
        """Delimited manifest of a procedure's attachments, for archival."""
        owner = OwnerRef(OwnerKind.PROCEDURE, procedure_id)
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["document_id", "path", "declared_format", "attached_at", "description"])
        for doc in self.list_attachments(owner):
            writer.writerow(
                [
                    doc.document_id,
                    doc.path,
                    doc.declared_format,
                    doc.attached_at.isoformat(),
                    doc.description,
                ]
            )
        return out.getvalue()

    # -- requirements -------------------------------------------------------------

    def add_requirement(self, text: str, category: str, priority: str) -> Requirement:
        return requirements.add_requirement(self.store, text, category, priority)

    def backlog(self) -> list[Requirement]:
        return requirements.prioritized_backlog(self.store.list_requirements())

    def backlog_groups(self) -> dict[Priority, list[Requirement]]:
        return requirements.backlog_groups(self.store.list_requirements())

    def requirements_csv(self) -> str:
        """Ledger export as delimited records: id, category, priority, text."""
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["id", "category", "priority", "text"])
        for requirement in self.store.list_requirements():
            writer.writerow(
                [
                    requirement.requirement_id,
                    requirement.category.value,
                    requirement.priority.value,
                    requirement.text,
                ]
            )
        return out.getvalue()

    def import_requirements(self, source: str | Path | io.TextIOBase) -> ImportReport:
        """Load requirements from the delimited export format.

        A row's id is kept when given (round-trip fidelity) and minted
        when blank; duplicate ids and bad categories/priorities are
        collected per line, valid rows still load.
        """
        if isinstance(source, (str, Path)):
            try:
                handle: io.TextIOBase = open(source, "r", encoding="utf-8", newline="")
            except OSError as exc:
                raise FileUnreadable(f"cannot read import file: {exc}") from None
            close = True
        else:
            handle, close = source, False
        report = ImportReport()
        try:
            reader = csv.DictReader(handle)
            missing = {"category", "priority", "text"} - set(reader.fieldnames or ())
            if missing:
                raise ValidationError(f"import file lacks columns: {sorted(missing)}")
            for row in reader:
                try:
                    requirements.import_requirement(
                        self.store,
                        row.get("text") or "",
                        row.get("category") or "",
                        row.get("priority") or "",
                        requirement_id=(row.get("id") or "").strip() or None,
                    )
                    report.created += 1
                except HRError as exc:
                    report.errors.append({"line": reader.line_num, "reason": exc.message})
        finally:
            if close:
                handle.close()
        return report

    # -- audit ---------------------------------------------------------------------

    def record_audit(self, actor: str, operation: str, entity_ref: str, outcome: str) -> None:
        self.store.add_audit_entry(actor, self.store.now(), operation, entity_ref, outcome)

    def audit_entries(self) -> list[dict]:
        return self.store.list_audit_entries()

    # -- bulk import ------------------------------------------------------------------

    def import_employees(self, source: str | Path | io.TextIOBase) -> ImportReport:
        """Load persons and employments from a delimited file.

        Every row is attempted; malformed rows are reported with their
        line number, duplicates of an existing (full_name, date_of_birth)
        identity are skipped.
        """
        if isinstance(source, (str, Path)):
            try:
                handle: io.TextIOBase = open(source, "r", encoding="utf-8", newline="")
            except OSError as exc:
                raise FileUnreadable(f"cannot read import file: {exc}") from None
            close = True
        else:
            handle, close = source, False
        report = ImportReport()
        try:
            reader = csv.DictReader(handle)
            headers = set(reader.fieldnames or ())
            missing = set(IMPORT_COLUMNS) - headers
            if missing:
                raise ValidationError(f"import file lacks columns: {sorted(missing)}")
            for row in reader:
                line = reader.line_num
                try:
                    self._import_row(row, report)
                except HRError as exc:
                    report.errors.append({"line": line, "reason": exc.message})
        finally:
            if close:
                handle.close()
        return report

    def _import_row(self, row: dict, report: ImportReport) -> None:
        full_name = (row.get("full_name") or "").strip()
        try:
            date_of_birth = date.fromisoformat((row.get("date_of_birth") or "").strip())
            employment_start = date.fromisoformat((row.get("employment_start") or "").strip())
        except ValueError as exc:
            raise ValidationError(f"bad date: {exc}") from None
        doctoral = _parse_flag(row.get("doctoral_degree") or "", "doctoral_degree")
        active = _parse_flag(row.get("active") or "true", "active")
        if self.store.person_with_identity(full_name, date_of_birth) is not None:
            report.skipped += 1
            return
        with self.store.transaction():
            person = self.register_person(full_name, date_of_birth, doctoral)
            self.register_employee(
                person.person_id, row.get("staff_group") or "", employment_start, active
            )
        report.created += 1

    # -- demo data ----------------------------------------------------------------------

    def seed_demo(self, today: date | None = None) -> dict[str, str]:
        """Populate a small, self-consistent demo data set.

        Returns the ids of the seeded headline entities. Dates are laid
        out relative to ``today`` so the expiry dashboard shows one due
        and one expired appointment.
        """
        today = today or self.store.now().date()
        refs: dict[str, str] = {}

        ana = self.register_person("Ana Horvat", date(1975, 4, 12), True)
        ivan = self.register_person("Ivan Kovač", date(1980, 11, 2), False)
        maja = self.register_person("Maja Babić", date(1971, 7, 30), True)
        petra = self.register_person("Petra Jurić", date(1985, 2, 17), False)
        self.register_employee(ana.person_id, StaffGroup.ACADEMIC, date(2005, 10, 1))
        self.register_employee(ivan.person_id, StaffGroup.ACADEMIC, date(2012, 3, 1))
        self.register_employee(maja.person_id, StaffGroup.ACADEMIC, date(2001, 9, 15))
        self.register_employee(petra.person_id, StaffGroup.ADMINISTRATIVE, date(2018, 1, 8))
        refs["person"] = ana.person_id

        def run_to_recognition(grade_name: str, applicant: str, effective: date) -> str:
            grade = find_grade(grade_name, "ScientificResearch")
            procedure = self.open_procedure(grade, f"FC-{effective.year}/1", actor="registrar")
            committee = (maja.person_id, petra.person_id, ivan.person_id)
            committee = tuple(c for c in committee if c != applicant)[:2] + (
                "external-reviewer",
            )
            steps: list[ProcedureEvent] = [
                workflow.SelectCommittee(members=committee, actor="faculty-council"),
                workflow.AnnounceVacancy(announcement_date=effective, actor="university"),
                workflow.ReceiveApplication(applicant=applicant, documents=("dossier",)),
                workflow.CloseApplications(actor="committee"),
                workflow.SubmitReport(report_ref=f"report-{effective.year}", actor="committee"),
                workflow.BoardDecision(promoted=(applicant,), actor="registrar-board"),
                workflow.SenateConfirmation(actor="senate"),
                workflow.RecognizeAppointments(effective_date=effective, actor="senate"),
            ]
            for i, event in enumerate(steps, start=1):
                self.advance_procedure(procedure.procedure_id, event, i)
            return procedure.procedure_id

        # One appointment inside the warning window, one already expired.
        due_start = expiry.subtract_months(
            expiry.add_years(today, -self.config.term_years), -2
        )
        expired_start = expiry.add_years(today, -self.config.term_years - 1)
        refs["procedure_due"] = run_to_recognition("associate professor", ana.person_id, due_start)
        refs["procedure_expired"] = run_to_recognition(
            "assistant professor", ivan.person_id, expired_start
        )

        open_proc = self.open_procedure(
            find_grade("senior lecturer"), f"FC-{today.year}/9", actor="registrar"
        )
        self.advance_procedure(
            open_proc.procedure_id,
            workflow.SelectCommittee(
                members=(maja.person_id, petra.person_id, "external-reviewer"),
                actor="faculty-council",
            ),
            1,
        )
        refs["procedure_open"] = open_proc.procedure_id

        application = self.submit_registration(
            maja.person_id, "research advisor", ["diploma.pdf", "cv.pdf"]
        )
        refs["registry_application"] = application.application_id
        self.record_ministry_decision(
            application.application_id, "approved", scientist_id="299001"
        )

        self.map_author(ana.person_id, DEMO_AUTHOR_KEY)
        if isinstance(self.bibliography, StubBibliographyClient):
            self.bibliography.fixtures.setdefault(
                DEMO_AUTHOR_KEY, DEMO_BIBLIOGRAPHY[DEMO_AUTHOR_KEY]
            )
        self.sync_publications(ana.person_id)

        document = self.attach_document(
            OwnerRef(OwnerKind.PROCEDURE, refs["procedure_due"]),
            "repo://promotions/report.pdf",
            "pdf",
            "committee report",
        )
        refs["document"] = document.document_id

        for text, category, priority in (
            ("track grade expiry and warn three months ahead", "Functionality", "M"),
            ("record every procedure decision in an audit trail", "Functionality", "M"),
            ("review screens respond within two seconds", "Performance", "S"),
            ("operators can export procedure histories", "Supportability", "C"),
            ("integrate payroll coefficients", "Functionality", "W"),
        ):
            self.add_requirement(text, category, priority)

        self.run_expiry_review(today)
        return refs
