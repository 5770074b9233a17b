"""Register of Researchers: entries, applications, Ministry hand-off.

The Ministry is asynchronous: a university submits an application with
documentation and the decision (with the assigned scientist identity
number) arrives later. Submission is forwarded through a client object;
the bundled stub service implements the same wire protocol offline.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime
from enum import Enum
from typing import TYPE_CHECKING, Protocol

from .errors import (
    AlreadyDecided,
    AlreadyRegistered,
    CategoryNotRegistrable,
    DuplicateScientistId,
    MissingDoctorate,
    NotFound,
    ValidationError,
)
from .grades import normalize_grade_name
from .people import Person

if TYPE_CHECKING:
    from .store import Store


class RegistryCategory(str, Enum):
    """Closed list of registrable categories."""

    RESEARCH_ASSOCIATE = "research associate"
    SENIOR_RESEARCH_ASSOCIATE = "senior research associate"
    RESEARCH_ADVISOR = "research advisor"
    ASSISTANT_PROFESSOR = "assistant professor"
    ASSOCIATE_PROFESSOR = "associate professor"
    FULL_PROFESSOR = "full professor"
    EXTERNAL_ASSISTANT_PROFESSOR = "external associate: assistant professor"
    EXTERNAL_SENIOR_ASSISTANT_PROFESSOR = "external associate: senior assistant professor"
    DOCTORAL_DEGREE_HOLDER = "person with doctoral degree"


def parse_category(value: RegistryCategory | str) -> RegistryCategory:
    if isinstance(value, RegistryCategory):
        return value
    normalized = normalize_grade_name(value)
    for category in RegistryCategory:
        if category.value == normalized:
            return category
    raise CategoryNotRegistrable(f"not a registrable category: {value!r}", category=value)


class ApplicationStatus(str, Enum):
    SUBMITTED = "Submitted"
    APPROVED = "Approved"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class RegistryApplication:
    application_id: str
    person_id: str
    category: RegistryCategory
    documents: tuple[str, ...]
    status: ApplicationStatus
    submitted_at: datetime
    scientist_id: str | None = None
    rejection_reason: str | None = None
    ack_token: str | None = None


@dataclass(frozen=True)
class RegistryEntry:
    scientist_id: str
    person_id: str
    category: RegistryCategory
    registered_at: datetime


class MinistryClient(Protocol):
    """Transport toward the Ministry registry endpoint.

    submit is at-most-once per application: implementations key their
    idempotency on the application id.
    """

    def submit(self, application: RegistryApplication, person: Person) -> str:
        """Forward an application; returns the acknowledgment token."""
        ...


def submit_registration(
    store: "Store",
    ministry: MinistryClient,
    person_id: str,
    category: RegistryCategory | str,
    documents: list[str] | tuple[str, ...] = (),
) -> RegistryApplication:
    """Open a Register-of-Researchers application and forward it.

    Guards: the person must exist, must not already hold an active entry
    or a pending application, and the doctoral-degree category requires
    a doctorate on record. The application is persisted in Submitted
    status before forwarding; a transport failure surfaces to the caller
    but leaves the application stored for a later retry.
    """
    category = parse_category(category)
    with store.transaction():
        person = store.get_person(person_id)
        if person is None:
            raise NotFound(f"no such person: {person_id}")
        if store.registry_entry_for_person(person_id) is not None:
            raise AlreadyRegistered(
                f"person {person_id} already has an active registry entry",
                person_id=person_id,
            )
        if store.pending_registry_application(person_id) is not None:
            raise AlreadyRegistered(
                f"person {person_id} already has a pending application",
                person_id=person_id,
            )
        if category is RegistryCategory.DOCTORAL_DEGREE_HOLDER and not person.doctoral_degree:
            raise MissingDoctorate(
                f"person {person_id} has no doctoral degree on record", person_id=person_id
            )
        application = RegistryApplication(
            application_id=store.next_id("reg"),
            person_id=person_id,
            category=category,
            documents=tuple(documents),
            status=ApplicationStatus.SUBMITTED,
            submitted_at=store.now(),
        )
        store.add_registry_application(application)

    # Forwarding happens outside the store transaction: a transport
    # failure must not roll back the Submitted application.
    ack_token = ministry.submit(application, person)
    application = replace(application, ack_token=ack_token)
    store.update_registry_application(application)
    return application


def record_ministry_decision(
    store: "Store",
    application_id: str,
    decision: str,
    *,
    scientist_id: str | None = None,
    reason: str | None = None,
) -> RegistryApplication:
    """Record the Ministry's decision on a submitted application.

    Approval creates the registry entry under the assigned scientist
    identity number, which must be globally unique.
    """
    if decision not in ("approved", "rejected"):
        raise ValidationError(f"decision must be 'approved' or 'rejected', got {decision!r}")
    with store.transaction():
        application = store.get_registry_application(application_id)
        if application is None:
            raise NotFound(f"no such application: {application_id}")
        if application.status is not ApplicationStatus.SUBMITTED:
            raise AlreadyDecided(
                f"application {application_id} is already {application.status.value}",
                status=application.status.value,
            )
        if decision == "approved":
            if not scientist_id or not scientist_id.strip():
                raise ValidationError("approval requires a scientist_id")
            scientist_id = scientist_id.strip()
            if store.get_registry_entry(scientist_id) is not None:
                raise DuplicateScientistId(
                    f"scientist id {scientist_id!r} already registered",
                    scientist_id=scientist_id,
                )
            entry = RegistryEntry(
                scientist_id=scientist_id,
                person_id=application.person_id,
                category=application.category,
                registered_at=store.now(),
            )
            store.add_registry_entry(entry)
            application = replace(
                application, status=ApplicationStatus.APPROVED, scientist_id=scientist_id
            )
        else:
            if not reason or not reason.strip():
                raise ValidationError("rejection requires a reason")
            application = replace(
                application, status=ApplicationStatus.REJECTED, rejection_reason=reason.strip()
            )
        store.update_registry_application(application)
    return application
