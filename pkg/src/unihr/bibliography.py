"""Published-papers records, reconciled from the national bibliography.

Local records mirror the external archive keyed by source record id.
Sync is append-and-update only: a record missing from the remote
snapshot is never deleted, so an outage or upstream pruning cannot
erase local history. Manual removal is a separate operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import TYPE_CHECKING, Protocol
from urllib.parse import urlparse

from .errors import NoAuthorMapping, NotFound, ValidationError

if TYPE_CHECKING:
    from .store import Store


@dataclass(frozen=True)
class PublicationRecord:
    source_key: str
    title: str
    type_of_work: str
    publishing_date: date
    url: str


@dataclass(frozen=True)
class SyncReport:
    added: int
    updated: int
    unchanged: int


def validate_publication(record: PublicationRecord) -> PublicationRecord:
    if not record.source_key or not record.source_key.strip():
        raise ValidationError("publication source_key must be non-empty")
    if not record.title or not record.title.strip():
        raise ValidationError("publication title must be non-empty")
    parsed = urlparse(record.url)
    if not (parsed.scheme and parsed.netloc):
        raise ValidationError(f"publication url is not a well-formed link: {record.url!r}")
    if not isinstance(record.publishing_date, date):
        raise ValidationError("publishing_date must be a calendar date")
    return record


class BibliographyClient(Protocol):
    """Query interface of the external bibliography archive."""

    def fetch(self, author_key: str) -> list[PublicationRecord]:
        """All records of one author; raises TransportError/ProtocolError."""
        ...


def map_author(store: "Store", person_id: str, author_key: str) -> None:
    """Store the person's external author identifier used for syncing."""
    if store.get_person(person_id) is None:
        raise NotFound(f"no such person: {person_id}")
    if not author_key or not author_key.strip():
        raise ValidationError("author_key must be non-empty")
    store.set_author_mapping(person_id, author_key.strip())


def sync_publications(store: "Store", client: BibliographyClient, person_id: str) -> SyncReport:
    """Reconcile the local records with the external archive.

    New remote records are inserted, changed ones updated field-wise,
    identical ones left untouched; local records absent from the remote
    snapshot stay. Idempotent against an unchanged remote.
    """
    if store.get_person(person_id) is None:
        raise NotFound(f"no such person: {person_id}")
    author_key = store.get_author_mapping(person_id)
    if author_key is None:
        raise NoAuthorMapping(
            f"person {person_id} has no bibliography author mapping", person_id=person_id
        )
    remote = [validate_publication(r) for r in client.fetch(author_key)]
    with store.transaction():
        local = {r.source_key: r for r in store.list_publications(person_id)}
        added = updated = unchanged = 0
        for record in remote:
            existing = local.get(record.source_key)
            if existing is None:
                store.put_publication(person_id, record)
                added += 1
            elif existing != record:
                store.put_publication(person_id, record)
                updated += 1
            else:
                unchanged += 1
    return SyncReport(added=added, updated=updated, unchanged=unchanged)


def list_publications(
    store: "Store", person_id: str, type_of_work: str | None = None
) -> list[PublicationRecord]:
    """Records sorted by publishing date descending, ties by title."""
    records = store.list_publications(person_id)
    if type_of_work is not None:
        records = [r for r in records if r.type_of_work == type_of_work]
    records.sort(key=lambda r: r.title)
    records.sort(key=lambda r: r.publishing_date, reverse=True)
    return records


def remove_publication(store: "Store", person_id: str, source_key: str) -> None:
    """Manual removal; sync never deletes."""
    if not store.delete_publication(person_id, source_key):
        raise NotFound(
            f"no publication {source_key!r} for person {person_id}",
            person_id=person_id,
            source_key=source_key,
        )
