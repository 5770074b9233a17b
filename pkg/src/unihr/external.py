"""Clients for the Ministry registry and the national bibliography.

Each external service has an HTTP client and an in-process stub that
honours the same contract, selected by service configuration. The HTTP
clients translate transport failures into TransportError (retryable)
and malformed responses into ProtocolError; neither mutates local
state. Ministry submission is at-most-once per application: acks are
memoized by application id.
"""

from __future__ import annotations

from datetime import date

import httpx

from .bibliography import PublicationRecord, validate_publication
from .errors import ProtocolError, TransportError, ValidationError
from .people import Person
from .registry import RegistryApplication


def _publication_from_wire(item: object) -> PublicationRecord:
    if not isinstance(item, dict):
        raise ProtocolError(f"bibliography record is not an object: {item!r}")
    try:
        record = PublicationRecord(
            source_key=item["source_key"],
            title=item["title"],
            type_of_work=item["type_of_work"],
            publishing_date=date.fromisoformat(item["publishing_date"]),
            url=item["url"],
        )
        return validate_publication(record)
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        raise ProtocolError(f"malformed bibliography record: {exc}") from None


class HttpMinistryClient:
    """Speaks the Ministry wire format over HTTP."""

    def __init__(self, base_url: str, *, timeout: float = 5.0, client: httpx.Client | None = None):
        self._client = client or httpx.Client(base_url=base_url, timeout=timeout)
        self._acks: dict[str, str] = {}

    def submit(self, application: RegistryApplication, person: Person) -> str:
        cached = self._acks.get(application.application_id)
        if cached is not None:
            return cached
        body = {
            "application_id": application.application_id,
            "person": {
                "name": person.full_name,
                "date_of_birth": person.date_of_birth.isoformat(),
            },
            "category": application.category.value,
            "documents": list(application.documents),
        }
        try:
            response = self._client.post("/register", json=body)
        except httpx.HTTPError as exc:
            raise TransportError(f"ministry unreachable: {exc}") from None
        if response.status_code >= 500:
            raise TransportError(f"ministry error response: {response.status_code}")
        if response.status_code != 200:
            raise ProtocolError(f"unexpected ministry status: {response.status_code}")
        try:
            payload = response.json()
        except ValueError:
            raise ProtocolError("ministry response is not valid JSON") from None
        ack = payload.get("ack") if isinstance(payload, dict) else None
        if not isinstance(ack, str) or not ack:
            raise ProtocolError(f"ministry response lacks an ack token: {payload!r}")
        self._acks[application.application_id] = ack
        return ack


class HttpBibliographyClient:
    """Queries the external bibliography archive by author identifier."""

    def __init__(self, base_url: str, *, timeout: float = 5.0, client: httpx.Client | None = None):
        self._client = client or httpx.Client(base_url=base_url, timeout=timeout)

    def fetch(self, author_key: str) -> list[PublicationRecord]:
        try:
            response = self._client.get(f"/bibliography/{author_key}")
        except httpx.HTTPError as exc:
            raise TransportError(f"bibliography unreachable: {exc}") from None
        if response.status_code >= 500:
            raise TransportError(f"bibliography error response: {response.status_code}")
        if response.status_code != 200:
            raise ProtocolError(f"unexpected bibliography status: {response.status_code}")
        try:
            payload = response.json()
        except ValueError:
            raise ProtocolError("bibliography response is not valid JSON") from None
        records = payload.get("records") if isinstance(payload, dict) else None
        if not isinstance(records, list):
            raise ProtocolError(f"bibliography response lacks a record list: {payload!r}")
        return [_publication_from_wire(item) for item in records]


class StubMinistryClient:
    """In-process Ministry stand-in with failure injection."""

    def __init__(self) -> None:
        self.submissions: list[RegistryApplication] = []
        self.fail_mode: str | None = None  # "transport" | "protocol"
        self._acks: dict[str, str] = {}

    def submit(self, application: RegistryApplication, person: Person) -> str:
        if self.fail_mode == "transport":
            raise TransportError("ministry unreachable (stub)")
        if self.fail_mode == "protocol":
            raise ProtocolError("malformed ministry response (stub)")
        cached = self._acks.get(application.application_id)
        if cached is not None:
            return cached
        token = f"ack-{application.application_id}"
        self._acks[application.application_id] = token
        self.submissions.append(application)
        return token


class StubBibliographyClient:
    """In-process bibliography stand-in fed from fixture records."""

    def __init__(self, fixtures: dict[str, list[PublicationRecord]] | None = None):
        self.fixtures: dict[str, list[PublicationRecord]] = dict(fixtures or {})
        self.fail_mode: str | None = None

    def set_records(self, author_key: str, records: list[PublicationRecord]) -> None:
        self.fixtures[author_key] = list(records)

    def fetch(self, author_key: str) -> list[PublicationRecord]:
        if self.fail_mode == "transport":
            raise TransportError("bibliography unreachable (stub)")
        if self.fail_mode == "protocol":
            raise ProtocolError("malformed bibliography response (stub)")
        return list(self.fixtures.get(author_key, []))


DEMO_AUTHOR_KEY = "author-0001"

DEMO_BIBLIOGRAPHY: dict[str, list[PublicationRecord]] = {
    DEMO_AUTHOR_KEY: [
        PublicationRecord(
            source_key="bib-101",
            title="Workflow support for appointment procedures",
            type_of_work="journal article",
            publishing_date=date(2019, 5, 10),
            url="https://bib.example.org/records/101",
        ),
        PublicationRecord(
            source_key="bib-102",
            title="Tracking grade validity in personnel systems",
            type_of_work="conference paper",
            publishing_date=date(2021, 9, 3),
            url="https://bib.example.org/records/102",
        ),
        PublicationRecord(
            source_key="bib-103",
            title="Registry integration patterns for universities",
            type_of_work="journal article",
            publishing_date=date(2021, 9, 3),
            url="https://bib.example.org/records/103",
        ),
    ]
}
