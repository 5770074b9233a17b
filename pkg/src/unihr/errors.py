"""Error taxonomy shared by all unihr modules.

Every domain error derives from HRError and carries a stable ``code``
(the class name) plus optional structured ``details``. The HTTP layer
maps each leaf class to exactly one status code; see unihr.api.
"""

from __future__ import annotations

from typing import Any


class HRError(Exception):
    """Base class for all domain errors."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def code(self) -> str:
        return type(self).__name__


class NotFound(HRError):
    """A referenced entity does not exist in the store."""


class UnknownGrade(NotFound):
    """Grade name matches no entry of the closed catalog."""


class OwnerNotFound(NotFound):
    """Attachment owner reference resolves to no stored entity."""


class ValidationError(HRError):
    """Input rejected before any state change."""


class EmptyPath(ValidationError):
    """Document attachment with an empty repository path."""


class FileUnreadable(ValidationError):
    """Bulk-import source cannot be opened."""


class TrackMismatch(ValidationError):
    """Seniority comparison across different grade tracks."""


class InvalidTrack(ValidationError):
    """Procedure opened for a track that is not an announced post."""


class IllegalTransition(HRError):
    """Event not accepted in the procedure's current state."""


class GuardViolation(HRError):
    """A transition guard failed; ``guard`` names the failed rule."""

    def __init__(self, message: str, *, guard: str, **details: Any):
        super().__init__(message, guard=guard, **details)
        self.guard = guard


class VersionConflict(HRError):
    """Optimistic concurrency check failed (stale expected version)."""


class AlreadyRegistered(HRError):
    """Person already has an active registry entry or pending application."""


class AlreadyDecided(HRError):
    """Ministry decision recorded twice for one application."""


class DuplicateScientistId(HRError):
    """Scientist identity number already present in the store."""


class CategoryNotRegistrable(ValidationError):
    """Category is outside the closed Register-of-Researchers list."""


class MissingDoctorate(ValidationError):
    """Doctoral-degree category submitted for a person without one."""


class NoAuthorMapping(HRError):
    """Person has no stored bibliography author identifier."""


class NonExpiring(HRError):
    """Expiry evaluation requested for a non-expiring appointment."""


class TransportError(HRError):
    """External service unreachable; the operation may be retried."""


class ProtocolError(HRError):
    """External service answered with a malformed response."""
