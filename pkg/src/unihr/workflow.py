"""Grade-appointment procedure as an event-driven state machine.

A procedure is fully determined by its event history: the stored state
is a cached projection and must always equal a replay of the history.
Transitions are serialized per procedure through an optimistic version
check; the version equals the number of accepted events.

The machine:

    Initiated -> CommitteeSelected -> VacancyAnnounced
        -> (AcceptingApplications)* -> ApplicationsClosed
        -> ReportSubmitted -> BoardDecided -> SenateConfirmed -> Recognized

Closing with zero applications is legal (an open call can attract no
applicants). Any non-terminal procedure can be terminated with a
mandatory reason. Recognized and Terminated accept no further events.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import Enum
from typing import TYPE_CHECKING, Any, Callable, ClassVar

from .errors import (
    GuardViolation,
    IllegalTransition,
    InvalidTrack,
    NotFound,
    UnknownGrade,
    ValidationError,
    VersionConflict,
)
from .expiry import add_years
from .grades import APPOINTABLE_TRACKS, CATALOG, AcademicGrade

if TYPE_CHECKING:
    from .store import Store


class ProcedureState(str, Enum):
    INITIATED = "Initiated"
    COMMITTEE_SELECTED = "CommitteeSelected"
    VACANCY_ANNOUNCED = "VacancyAnnounced"
    ACCEPTING_APPLICATIONS = "AcceptingApplications"
    APPLICATIONS_CLOSED = "ApplicationsClosed"
    REPORT_SUBMITTED = "ReportSubmitted"
    BOARD_DECIDED = "BoardDecided"
    SENATE_CONFIRMED = "SenateConfirmed"
    RECOGNIZED = "Recognized"
    TERMINATED = "Terminated"


TERMINAL_STATES = frozenset({ProcedureState.RECOGNIZED, ProcedureState.TERMINATED})


@dataclass(frozen=True)
class WorkflowRules:
    """Configurable policy knobs of the procedure machine."""

    committee_min_size: int = 3
    term_years: int = 5
    non_expiring_grades: frozenset[str] = frozenset({"professor emeritus"})


DEFAULT_RULES = WorkflowRules()

_ISO = "%Y-%m-%d"


def _parse_date(value: Any, field_name: str) -> date:
    if isinstance(value, date) and not isinstance(value, datetime):
        return value
    if isinstance(value, str):
        try:
            return date.fromisoformat(value)
        except ValueError:
            pass
    raise ValidationError(f"{field_name} must be an ISO calendar date, got {value!r}")


def _parse_str_tuple(value: Any, field_name: str) -> tuple[str, ...]:
    if isinstance(value, (list, tuple)) and all(isinstance(v, str) for v in value):
        return tuple(value)
    raise ValidationError(f"{field_name} must be a list of strings, got {value!r}")


def _encode(value: Any) -> Any:
    if isinstance(value, datetime):
        return value.isoformat()
    if isinstance(value, date):
        return value.isoformat()
    if isinstance(value, tuple):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    return value


EVENT_TYPES: dict[str, type["ProcedureEvent"]] = {}


def _register(cls: type["ProcedureEvent"]) -> type["ProcedureEvent"]:
    EVENT_TYPES[cls.kind] = cls
    return cls


@dataclass(frozen=True, kw_only=True)
class ProcedureEvent:
    """Base of the event union; every event is timestamped and attributed."""

    kind: ClassVar[str] = ""

    actor: str = "system"
    occurred_at: datetime | None = None

    def payload(self) -> dict[str, Any]:
        skip = ("actor", "occurred_at")
        return {
            f.name: _encode(getattr(self, f.name))
            for f in dataclasses.fields(self)
            if f.name not in skip
        }

    def to_record(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "actor": self.actor,
            "occurred_at": self.occurred_at.isoformat() if self.occurred_at else None,
            "payload": self.payload(),
        }

    # Payload field parsers, overridden where fields need coercion.
    _parsers: ClassVar[dict[str, Callable[[Any, str], Any]]] = {}

    @classmethod
    def from_payload(
        cls, payload: dict[str, Any], *, actor: str = "system", occurred_at: datetime | None = None
    ) -> "ProcedureEvent":
        if not isinstance(payload, dict):
            raise ValidationError(f"event payload must be an object, got {payload!r}")
        own_fields = [
            f for f in dataclasses.fields(cls) if f.name not in ("actor", "occurred_at")
        ]
        unknown = set(payload) - {f.name for f in own_fields}
        if unknown:
            raise ValidationError(
                f"unknown payload fields for {cls.kind}: {sorted(unknown)}"
            )
        kwargs: dict[str, Any] = {}
        for f in own_fields:
            if f.name in payload:
                parser = cls._parsers.get(f.name)
                kwargs[f.name] = parser(payload[f.name], f.name) if parser else payload[f.name]
            elif f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                raise ValidationError(f"{cls.kind} payload requires field {f.name!r}")
        return cls(actor=actor, occurred_at=occurred_at, **kwargs)


def event_from_record(record: dict[str, Any]) -> ProcedureEvent:
    """Build an event from its wire/log form (inverse of to_record)."""
    if not isinstance(record, dict) or "kind" not in record:
        raise ValidationError(f"event record requires a 'kind' field: {record!r}")
    cls = EVENT_TYPES.get(record["kind"])
    if cls is None:
        raise ValidationError(f"unknown event kind: {record['kind']!r}")
    occurred_at = record.get("occurred_at")
    if isinstance(occurred_at, str):
        try:
            occurred_at = datetime.fromisoformat(occurred_at)
        except ValueError:
            raise ValidationError(f"bad occurred_at timestamp: {occurred_at!r}") from None
    return cls.from_payload(
        record.get("payload", {}),
        actor=record.get("actor", "system"),
        occurred_at=occurred_at,
    )


@_register
@dataclass(frozen=True, kw_only=True)
class InitiateDecision(ProcedureEvent):
    kind: ClassVar[str] = "initiate-decision"
    council_ref: str


@_register
@dataclass(frozen=True, kw_only=True)
class SelectCommittee(ProcedureEvent):
    kind: ClassVar[str] = "select-committee"
    members: tuple[str, ...]
    _parsers: ClassVar = {"members": _parse_str_tuple}


@_register
@dataclass(frozen=True, kw_only=True)
class AnnounceVacancy(ProcedureEvent):
    kind: ClassVar[str] = "announce-vacancy"
    announcement_date: date
    _parsers: ClassVar = {"announcement_date": _parse_date}


@_register
@dataclass(frozen=True, kw_only=True)
class ReceiveApplication(ProcedureEvent):
    kind: ClassVar[str] = "receive-application"
    applicant: str
    documents: tuple[str, ...] = ()
    _parsers: ClassVar = {"documents": _parse_str_tuple}


@_register
@dataclass(frozen=True, kw_only=True)
class CloseApplications(ProcedureEvent):
    kind: ClassVar[str] = "close-applications"


@_register
@dataclass(frozen=True, kw_only=True)
class SubmitReport(ProcedureEvent):
    kind: ClassVar[str] = "submit-report"
    report_ref: str
    assessments: dict[str, str] = field(default_factory=dict)


@_register
@dataclass(frozen=True, kw_only=True)
class BoardDecision(ProcedureEvent):
    kind: ClassVar[str] = "board-decision"
    promoted: tuple[str, ...]
    _parsers: ClassVar = {"promoted": _parse_str_tuple}


@_register
@dataclass(frozen=True, kw_only=True)
class SenateConfirmation(ProcedureEvent):
    kind: ClassVar[str] = "senate-confirmation"


@_register
@dataclass(frozen=True, kw_only=True)
class RecognizeAppointments(ProcedureEvent):
    kind: ClassVar[str] = "recognize-appointments"
    effective_date: date
    _parsers: ClassVar = {"effective_date": _parse_date}


@_register
@dataclass(frozen=True, kw_only=True)
class Terminate(ProcedureEvent):
    kind: ClassVar[str] = "terminate"
    reason: str


# (state, event kind) -> next state. Terminate is handled separately:
# it is legal from every non-terminal state.
TRANSITIONS: dict[tuple[ProcedureState, str], ProcedureState] = {
    (ProcedureState.INITIATED, SelectCommittee.kind): ProcedureState.COMMITTEE_SELECTED,
    (ProcedureState.COMMITTEE_SELECTED, AnnounceVacancy.kind): ProcedureState.VACANCY_ANNOUNCED,
    (ProcedureState.VACANCY_ANNOUNCED, ReceiveApplication.kind): ProcedureState.ACCEPTING_APPLICATIONS,
    (ProcedureState.ACCEPTING_APPLICATIONS, ReceiveApplication.kind): ProcedureState.ACCEPTING_APPLICATIONS,
    (ProcedureState.ACCEPTING_APPLICATIONS, CloseApplications.kind): ProcedureState.APPLICATIONS_CLOSED,
    (ProcedureState.VACANCY_ANNOUNCED, CloseApplications.kind): ProcedureState.APPLICATIONS_CLOSED,
    (ProcedureState.APPLICATIONS_CLOSED, SubmitReport.kind): ProcedureState.REPORT_SUBMITTED,
    (ProcedureState.REPORT_SUBMITTED, BoardDecision.kind): ProcedureState.BOARD_DECIDED,
    (ProcedureState.BOARD_DECIDED, SenateConfirmation.kind): ProcedureState.SENATE_CONFIRMED,
    (ProcedureState.SENATE_CONFIRMED, RecognizeAppointments.kind): ProcedureState.RECOGNIZED,
}

EVENT_KIND_ORDER: tuple[str, ...] = tuple(EVENT_TYPES)


def legal_events(state: ProcedureState) -> list[str]:
    """Event kinds the machine accepts in ``state``, in canonical order."""
    kinds = [k for k in EVENT_KIND_ORDER if (state, k) in TRANSITIONS]
    if state not in TERMINAL_STATES:
        kinds.append(Terminate.kind)
    return kinds


@dataclass(frozen=True)
class Application:
    person_id: str
    received_at: datetime | None
    documents: tuple[str, ...]


@dataclass(frozen=True)
class Projection:
    """Pure fold of an event history."""

    state: ProcedureState | None = None
    committee: tuple[str, ...] = ()
    applicants: tuple[Application, ...] = ()
    promoted: tuple[str, ...] = ()

    @property
    def applicant_ids(self) -> tuple[str, ...]:
        return tuple(a.person_id for a in self.applicants)


@dataclass(frozen=True)
class HistoryStep:
    event: ProcedureEvent
    resulting_state: ProcedureState


@dataclass(frozen=True)
class AppointmentProcedure:
    procedure_id: str
    target_grade: AcademicGrade
    state: ProcedureState
    committee: tuple[str, ...]
    applicants: tuple[Application, ...]
    promoted: tuple[str, ...]
    history: tuple[HistoryStep, ...]
    version: int

    def legal_events(self) -> list[str]:
        return legal_events(self.state)

    def projection(self) -> Projection:
        return Projection(self.state, self.committee, self.applicants, self.promoted)


@dataclass(frozen=True)
class GradeAppointment:
    appointment_id: str
    person_id: str
    grade: AcademicGrade
    procedure_id: str
    valid_from: date
    valid_to: date | None


def fold_event(
    projection: Projection,
    event: ProcedureEvent,
    rules: WorkflowRules = DEFAULT_RULES,
) -> Projection:
    """Apply one event to a projection or raise the transition error."""
    state = projection.state
    if state is None:
        if not isinstance(event, InitiateDecision):
            raise IllegalTransition(
                f"procedure history must start with {InitiateDecision.kind}, got {event.kind}"
            )
        if not event.council_ref.strip():
            raise ValidationError("council_ref must be non-empty")
        return dataclasses.replace(projection, state=ProcedureState.INITIATED)

    if state in TERMINAL_STATES:
        raise IllegalTransition(f"{state.value} is terminal; no event accepted")

    if isinstance(event, Terminate):
        if not event.reason.strip():
            raise GuardViolation(
                "termination requires a reason", guard="termination_reason_required"
            )
        return dataclasses.replace(projection, state=ProcedureState.TERMINATED)

    next_state = TRANSITIONS.get((state, event.kind))
    if next_state is None:
        raise IllegalTransition(f"event {event.kind} not accepted in state {state.value}")

    if isinstance(event, SelectCommittee):
        size = len(event.members)
        if size < rules.committee_min_size or size % 2 == 0:
            raise GuardViolation(
                f"committee must have an odd number of members, at least "
                f"{rules.committee_min_size}; got {size}",
                guard="committee_size",
            )
        if len(set(event.members)) != size:
            raise GuardViolation(
                "committee members must be pairwise distinct", guard="committee_distinct"
            )
        return dataclasses.replace(projection, state=next_state, committee=event.members)

    if isinstance(event, ReceiveApplication):
        if event.applicant in projection.applicant_ids:
            raise GuardViolation(
                f"applicant {event.applicant} already applied", guard="duplicate_applicant"
            )
        if event.applicant in projection.committee:
            raise GuardViolation(
                f"committee member {event.applicant} may not apply",
                guard="applicant_on_committee",
            )
        application = Application(event.applicant, event.occurred_at, event.documents)
        return dataclasses.replace(
            projection, state=next_state, applicants=projection.applicants + (application,)
        )

    if isinstance(event, BoardDecision):
        if len(set(event.promoted)) != len(event.promoted):
            raise GuardViolation(
                "promoted list contains duplicates", guard="duplicate_promoted"
            )
        outsiders = [p for p in event.promoted if p not in projection.applicant_ids]
        if outsiders:
            raise GuardViolation(
                f"promoted persons must be applicants: {outsiders}",
                guard="promoted_not_applicant",
            )
        return dataclasses.replace(projection, state=next_state, promoted=event.promoted)

    return dataclasses.replace(projection, state=next_state)


def fold(
    events: list[ProcedureEvent] | tuple[ProcedureEvent, ...],
    rules: WorkflowRules = DEFAULT_RULES,
) -> Projection:
    projection = Projection()
    for event in events:
        projection = fold_event(projection, event, rules)
    return projection


def replay(
    events: list[ProcedureEvent] | tuple[ProcedureEvent, ...],
    rules: WorkflowRules = DEFAULT_RULES,
) -> ProcedureState:
    """Pure replay: final state of a history, or the first error raised.

    The empty history is rejected; history[0] must be the initiation
    decision.
    """
    if not events:
        raise ValidationError("event history is empty")
    state = fold(events, rules).state
    assert state is not None
    return state


def open_procedure(
    store: "Store",
    target_grade: AcademicGrade,
    council_ref: str,
    *,
    actor: str = "system",
    rules: WorkflowRules = DEFAULT_RULES,
) -> AppointmentProcedure:
    """Start a new procedure; the initiation decision is history[0]."""
    if target_grade not in CATALOG:
        raise UnknownGrade(
            f"not a catalog grade: {target_grade.name!r} in {target_grade.track.value}"
        )
    if target_grade.track not in APPOINTABLE_TRACKS:
        raise InvalidTrack(
            f"{target_grade.track.value} grades are registry grades, not announced posts"
        )
    event = InitiateDecision(council_ref=council_ref, actor=actor, occurred_at=store.now())
    projection = fold_event(Projection(), event, rules)
    procedure = AppointmentProcedure(
        procedure_id=store.next_id("prc"),
        target_grade=target_grade,
        state=projection.state,
        committee=projection.committee,
        applicants=projection.applicants,
        promoted=projection.promoted,
        history=(HistoryStep(event, projection.state),),
        version=1,
    )
    store.add_procedure(procedure)
    return procedure


def appointments_for_recognition(
    store: "Store",
    procedure: AppointmentProcedure,
    effective_date: date,
    rules: WorkflowRules = DEFAULT_RULES,
) -> list[GradeAppointment]:
    """Appointments a recognition would create, checked against overlaps.

    One appointment per promoted applicant; the term runs for the
    configured number of years unless the grade is non-expiring. For a
    given person and grade, validity intervals may not overlap any
    existing appointment.
    """
    grade = procedure.target_grade
    if grade.name in rules.non_expiring_grades:
        valid_to = None
    else:
        valid_to = add_years(effective_date, rules.term_years)
    created = []
    for person_id in procedure.promoted:
        new_end = valid_to or date.max
        for existing in store.list_appointments(person_id=person_id):
            if existing.grade != grade:
                continue
            existing_end = existing.valid_to or date.max
            if existing.valid_from < new_end and effective_date < existing_end:
                raise GuardViolation(
                    f"appointment of {person_id} to {grade.name} overlaps "
                    f"an existing validity interval",
                    guard="overlapping_appointment",
                )
        created.append(
            GradeAppointment(
                appointment_id=store.next_id("apt"),
                person_id=person_id,
                grade=grade,
                procedure_id=procedure.procedure_id,
                valid_from=effective_date,
                valid_to=valid_to,
            )
        )
    return created


def advance(
    store: "Store",
    procedure_id: str,
    event: ProcedureEvent,
    expected_version: int,
    *,
    rules: WorkflowRules = DEFAULT_RULES,
) -> AppointmentProcedure:
    """Apply exactly one transition under the optimistic version check.

    Recognition additionally creates the grade appointments in the same
    transaction; any failure leaves the procedure untouched.
    """
    with store.transaction():
        procedure = store.get_procedure(procedure_id)
        if procedure is None:
            raise NotFound(f"no such procedure: {procedure_id}")
        if expected_version != procedure.version:
            raise VersionConflict(
                f"expected version {expected_version}, stored version is "
                f"{procedure.version}",
                expected=expected_version,
                stored=procedure.version,
            )
        if event.occurred_at is None:
            event = dataclasses.replace(event, occurred_at=store.now())
        projection = fold_event(procedure.projection(), event, rules)
        appointments: list[GradeAppointment] = []
        if isinstance(event, RecognizeAppointments):
            appointments = appointments_for_recognition(
                store, procedure, event.effective_date, rules
            )
        store.append_procedure_event(
            procedure_id,
            HistoryStep(event, projection.state),
            projection,
            new_version=procedure.version + 1,
        )
        for appointment in appointments:
            store.add_appointment(appointment)
    refreshed = store.get_procedure(procedure_id)
    assert refreshed is not None
    return refreshed


def history_to_jsonl(history: tuple[HistoryStep, ...] | list[HistoryStep]) -> str:
    """Append-only event log: one JSON event record per line.

    This is the exact format consumed by the replay CLI.
    """
    return "".join(
        json.dumps(step.event.to_record(), ensure_ascii=False, sort_keys=True) + "\n"
        for step in history
    )


def events_from_jsonl(text: str) -> list[ProcedureEvent]:
    events = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"line {lineno}: invalid JSON: {exc}") from None
        events.append(event_from_record(record))
    return events
