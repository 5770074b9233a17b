"""Person and employee records shared by all other modules."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import TYPE_CHECKING

from .errors import NotFound, ValidationError

if TYPE_CHECKING:
    from .store import Store


class StaffGroup(str, Enum):
    ADMINISTRATIVE = "Administrative"
    ACADEMIC = "Academic"


@dataclass(frozen=True)
class Person:
    person_id: str
    full_name: str
    date_of_birth: date
    doctoral_degree: bool


@dataclass(frozen=True)
class Employee:
    person_id: str
    staff_group: StaffGroup
    employment_start: date
    active: bool


def register_person(
    store: "Store",
    full_name: str,
    date_of_birth: date,
    doctoral_degree: bool = False,
) -> Person:
    """Persist a new person under a fresh unique id."""
    if not full_name or not full_name.strip():
        raise ValidationError("full_name must be non-empty")
    if not isinstance(date_of_birth, date):
        raise ValidationError("date_of_birth must be a calendar date")
    person = Person(
        person_id=store.next_id("per"),
        full_name=full_name.strip(),
        date_of_birth=date_of_birth,
        doctoral_degree=bool(doctoral_degree),
    )
    store.add_person(person)
    return person


def register_employee(
    store: "Store",
    person_id: str,
    staff_group: StaffGroup | str,
    employment_start: date,
    active: bool = True,
) -> Employee:
    """Record employment for an existing person.

    The start date may not lie after the store clock's current date.
    """
    try:
        staff_group = StaffGroup(staff_group)
    except ValueError:
        raise ValidationError(f"unknown staff group: {staff_group!r}") from None
    if not isinstance(employment_start, date):
        raise ValidationError("employment_start must be a calendar date")
    if store.get_person(person_id) is None:
        raise NotFound(f"no such person: {person_id}")
    if store.get_employee(person_id) is not None:
        raise ValidationError(f"person {person_id} is already an employee")
    if employment_start > store.now().date():
        raise ValidationError("employment_start may not lie in the future")
    employee = Employee(
        person_id=person_id,
        staff_group=staff_group,
        employment_start=employment_start,
        active=bool(active),
    )
    store.add_employee(employee)
    return employee
