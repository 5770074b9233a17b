"""Attached document records: references into an external repository.

The vault stores only the path and advisory format label of each
document; contents are never read or transformed, so every operation
works the same whether or not bytes exist at the referenced location.
Detaching is a soft delete: the record stays for the audit trail but
no longer lists or resolves.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import TYPE_CHECKING

from .errors import EmptyPath, NotFound, OwnerNotFound

if TYPE_CHECKING:
    from .store import Store


class OwnerKind(str, Enum):
    PROCEDURE = "procedure"
    REGISTRY_APPLICATION = "registry-application"
    EMPLOYEE = "employee"


@dataclass(frozen=True)
class OwnerRef:
    kind: OwnerKind
    ref_id: str


@dataclass(frozen=True)
class AttachedDocument:
    document_id: str
    owner: OwnerRef
    path: str
    declared_format: str
    attached_at: datetime
    description: str
    deleted: bool = False


def attach(
    store: "Store",
    owner: OwnerRef,
    path: str,
    declared_format: str,
    description: str = "",
) -> AttachedDocument:
    """Record a repository reference for an existing owner entity."""
    if not path or not path.strip():
        raise EmptyPath("document path must be non-empty")
    with store.transaction():
        if not store.owner_exists(owner):
            raise OwnerNotFound(
                f"no {owner.kind.value} with id {owner.ref_id!r}",
                kind=owner.kind.value,
                ref_id=owner.ref_id,
            )
        document = AttachedDocument(
            document_id=store.next_id("doc"),
            owner=owner,
            path=path,
            declared_format=declared_format,
            attached_at=store.now(),
            description=description,
        )
        store.add_document(document)
    return document


def list_attachments(store: "Store", owner: OwnerRef) -> list[AttachedDocument]:
    """Attachments of one owner, oldest first; unknown owners yield []."""
    return store.list_documents(owner)


def resolve(store: "Store", document_id: str) -> tuple[str, str]:
    """Stored path and format label, verbatim, for the client to open."""
    document = store.get_document(document_id)
    if document is None or document.deleted:
        raise NotFound(f"no such document: {document_id}")
    return document.path, document.declared_format


def detach(store: "Store", document_id: str) -> None:
    document = store.get_document(document_id)
    if document is None or document.deleted:
        raise NotFound(f"no such document: {document_id}")
    store.mark_document_deleted(document_id)
