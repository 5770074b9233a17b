from __future__ import annotations

from datetime import datetime, timezone

import pytest
from fastapi.testclient import TestClient

from unihr.api import create_app
from unihr.config import ServiceConfig
from unihr.external import StubBibliographyClient, StubMinistryClient
from unihr.service import HRService
from unihr.store import FixedClock, SequentialIds, Store
from unihr.stubserver import ExternalServiceStub

T0 = datetime(2024, 6, 1, 12, 0, tzinfo=timezone.utc)


def make_store(**kwargs) -> Store:
    kwargs.setdefault("clock", FixedClock(T0))
    kwargs.setdefault("id_factory", SequentialIds())
    return Store(":memory:", **kwargs)


@pytest.fixture
def store() -> Store:
    with make_store() as s:
        yield s


@pytest.fixture
def ministry() -> StubMinistryClient:
    return StubMinistryClient()


@pytest.fixture
def biblio() -> StubBibliographyClient:
    return StubBibliographyClient()


@pytest.fixture
def service(store, ministry, biblio) -> HRService:
    return HRService(
        ServiceConfig(store_path=":memory:"),
        store=store,
        ministry=ministry,
        bibliography_client=biblio,
    )


@pytest.fixture
def client(service) -> TestClient:
    return TestClient(create_app(service))


@pytest.fixture
def stub_server():
    server = ExternalServiceStub().start()
    yield server
    server.stop()
