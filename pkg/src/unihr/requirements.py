"""Requirements ledger: FURPS+ classification, MoSCoW prioritization.

A requirement is functional exactly when its FURPS+ category is
Functionality; every other category constrains the solution. Won't-have
items stay in the ledger and sort last so later iterations still see
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import ValidationError

if TYPE_CHECKING:
    from .store import Store


class FurpsCategory(str, Enum):
    FUNCTIONALITY = "Functionality"
    USABILITY = "Usability"
    RELIABILITY = "Reliability"
    PERFORMANCE = "Performance"
    SUPPORTABILITY = "Supportability"
    IMPLEMENTATION = "Implementation"
    INTERFACES = "Interfaces"
    OPERATIONS = "Operations"
    PACKAGING = "Packaging"
    LICENSING = "Licensing"


class Priority(str, Enum):
    MUST = "M"
    SHOULD = "S"
    COULD = "C"
    WONT = "W"


PRIORITY_ORDER: dict[Priority, int] = {
    Priority.MUST: 0,
    Priority.SHOULD: 1,
    Priority.COULD: 2,
    Priority.WONT: 3,
}


class RequirementKind(str, Enum):
    FUNCTIONAL = "Functional"
    NON_FUNCTIONAL = "NonFunctional"


@dataclass(frozen=True)
class Requirement:
    requirement_id: str
    text: str
    kind: RequirementKind
    category: FurpsCategory
    priority: Priority
    created_at: datetime


def kind_for_category(category: FurpsCategory) -> RequirementKind:
    if category is FurpsCategory.FUNCTIONALITY:
        return RequirementKind.FUNCTIONAL
    return RequirementKind.NON_FUNCTIONAL


def add_requirement(
    store: "Store",
    text: str,
    category: FurpsCategory | str,
    priority: Priority | str,
) -> Requirement:
    """Record a requirement; its kind derives from the category."""
    return import_requirement(store, text, category, priority)


def import_requirement(
    store: "Store",
    text: str,
    category: FurpsCategory | str,
    priority: Priority | str,
    *,
    requirement_id: str | None = None,
) -> Requirement:
    """add_requirement keeping a caller-supplied id (delimited import)."""
    if not text or not text.strip():
        raise ValidationError("requirement text must be non-empty")
    try:
        category = FurpsCategory(category)
    except ValueError:
        raise ValidationError(f"unknown FURPS+ category: {category!r}") from None
    try:
        priority = Priority(priority)
    except ValueError:
        raise ValidationError(f"priority letter must be one of M, S, C, W: {priority!r}") from None
    requirement = Requirement(
        requirement_id=requirement_id or store.next_id("req"),
        text=text.strip(),
        kind=kind_for_category(category),
        category=category,
        priority=priority,
        created_at=store.now(),
    )
    store.add_requirement(requirement)
    return requirement


def prioritized_backlog(requirements: Iterable[Requirement]) -> list[Requirement]:
    """Stable sort in the fixed order M < S < C < W.

    Insertion order is preserved within each priority class.
    """
    return sorted(requirements, key=lambda r: PRIORITY_ORDER[r.priority])


def backlog_groups(requirements: Sequence[Requirement]) -> dict[Priority, list[Requirement]]:
    """Backlog grouped by MoSCoW class, classes in fixed order."""
    groups: dict[Priority, list[Requirement]] = {p: [] for p in PRIORITY_ORDER}
    for requirement in prioritized_backlog(requirements):
        groups[requirement.priority].append(requirement)
    return groups
