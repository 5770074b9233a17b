"""Appointment validity and expiry-warning review.

Appointments to expiring grades run for a fixed term (five years by
default); the renewal procedure must be opened a warning window ahead
of expiry (three calendar months by default). Both spans use calendar
arithmetic with end-of-month clamping, not fixed day counts: the
source deadlines are calendar-based administrative deadlines.

Boundary semantics, deliberately exact:
  * on the initiation deadline itself the status is already InitiationDue;
  * on the expiry date itself (days_remaining == 0) the status is Expired.
"""

from __future__ import annotations

import calendar
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum
from typing import TYPE_CHECKING

from .errors import NonExpiring

if TYPE_CHECKING:
    from .store import Store
    from .workflow import GradeAppointment

DEFAULT_WARNING_MONTHS = 3
DEFAULT_TERM_YEARS = 5


class ExpiryState(str, Enum):
    ACTIVE = "Active"
    INITIATION_DUE = "InitiationDue"
    EXPIRED = "Expired"


@dataclass(frozen=True)
class ExpiryStatus:
    state: ExpiryState
    days_remaining: int
    deadline_to_initiate: date


@dataclass(frozen=True)
class ExpiryNotification:
    notification_id: str
    appointment_id: str
    person_id: str
    grade_name: str
    valid_to: date
    status: ExpiryState
    generated_at: datetime


@dataclass(frozen=True)
class ReviewRow:
    """One line of the expiry review (pure projection, no ledger write)."""

    appointment_id: str
    person_id: str
    grade_name: str
    valid_to: date
    status: ExpiryStatus


def _clamp_day(year: int, month: int, day: int) -> date:
    return date(year, month, min(day, calendar.monthrange(year, month)[1]))


def add_years(d: date, n: int) -> date:
    """Same month and day ``n`` years later; Feb 29 clamps to Feb 28."""
    return _clamp_day(d.year + n, d.month, d.day)


def subtract_months(d: date, n: int) -> date:
    """Same day-of-month ``n`` months earlier, clamped to month end."""
    months = d.year * 12 + (d.month - 1) - n
    year, month0 = divmod(months, 12)
    return _clamp_day(year, month0 + 1, d.day)


def evaluate(
    appointment: "GradeAppointment",
    as_of: date,
    *,
    warning_months: int = DEFAULT_WARNING_MONTHS,
) -> ExpiryStatus:
    """Classify an appointment's validity as seen on ``as_of``.

    Non-expiring appointments (no valid_to) are never evaluated.
    """
    if appointment.valid_to is None:
        raise NonExpiring(
            f"appointment {appointment.appointment_id} has no expiry date",
            appointment_id=appointment.appointment_id,
        )
    deadline = subtract_months(appointment.valid_to, warning_months)
    days_remaining = (appointment.valid_to - as_of).days
    if days_remaining <= 0:
        state = ExpiryState.EXPIRED
    elif as_of >= deadline:
        state = ExpiryState.INITIATION_DUE
    else:
        state = ExpiryState.ACTIVE
    return ExpiryStatus(state, days_remaining, deadline)


def review_rows(
    store: "Store",
    as_of: date,
    *,
    warning_months: int = DEFAULT_WARNING_MONTHS,
) -> list[ReviewRow]:
    """All appointments whose renewal is due or overdue on ``as_of``.

    Pure read: evaluates every expiring appointment and keeps the
    InitiationDue/Expired ones, sorted by valid_to then person_id.
    """
    rows = []
    for appointment in store.list_appointments():
        if appointment.valid_to is None:
            continue
        status = evaluate(appointment, as_of, warning_months=warning_months)
        if status.state is not ExpiryState.ACTIVE:
            rows.append(
                ReviewRow(
                    appointment_id=appointment.appointment_id,
                    person_id=appointment.person_id,
                    grade_name=appointment.grade.name,
                    valid_to=appointment.valid_to,
                    status=status,
                )
            )
    rows.sort(key=lambda r: (r.valid_to, r.person_id))
    return rows


def generate_review(
    store: "Store",
    as_of: date,
    *,
    warning_months: int = DEFAULT_WARNING_MONTHS,
) -> list[ExpiryNotification]:
    """Open one notification per newly due/expired appointment.

    Idempotent: an appointment gets at most one notification per status,
    so re-running with the same as_of returns an empty list. Returned
    notifications are sorted by valid_to, ties by person_id.
    """
    with store.transaction():
        created = []
        for row in review_rows(store, as_of, warning_months=warning_months):
            status = row.status.state
            if store.has_notification(row.appointment_id, status):
                continue
            notification = ExpiryNotification(
                notification_id=store.next_id("ntf"),
                appointment_id=row.appointment_id,
                person_id=row.person_id,
                grade_name=row.grade_name,
                valid_to=row.valid_to,
                status=status,
                generated_at=store.now(),
            )
            store.add_notification(notification)
            created.append(notification)
    return created
