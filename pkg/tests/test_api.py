from datetime import date

from fastapi.testclient import TestClient

from unihr.api import create_app
from unihr.config import ServiceConfig
from unihr.service import HRService

from conftest import make_store


def error_code(response):
    return response.json()["error"]["code"]


def open_procedure(client, grade="assistant professor", track=None):
    payload = {"grade": grade, "council_ref": "FC-2024/7"}
    if track:
        payload["track"] = track
    response = client.post("/procedures", json=payload)
    assert response.status_code == 201
    return response.json()


def post_event(client, procedure_id, version, kind, payload=None):
    return client.post(
        f"/procedures/{procedure_id}/events",
        json={"kind": kind, "payload": payload or {}},
        headers={"X-Expected-Version": str(version)},
    )


def drive_to_recognized(client, grade="associate professor"):
    procedure = open_procedure(client, grade)
    pid = procedure["procedure_id"]
    steps = [
        ("select-committee", {"members": ["c1", "c2", "c3"]}),
        ("announce-vacancy", {"announcement_date": "2024-02-01"}),
        ("receive-application", {"applicant": "p1", "documents": ["d1"]}),
        ("receive-application", {"applicant": "p2", "documents": []}),
        ("close-applications", {}),
        ("submit-report", {"report_ref": "R-1", "assessments": {}}),
        ("board-decision", {"promoted": ["p1"]}),
        ("senate-confirmation", {}),
        ("recognize-appointments", {"effective_date": "2024-03-01"}),
    ]
    version = 1
    for kind, payload in steps:
        response = post_event(client, pid, version, kind, payload)
        assert response.status_code == 200, response.text
        version = response.json()["version"]
    return pid


def test_health_and_readiness(client):
    assert client.get("/healthz").json() == {"status": "ok"}
    assert client.get("/readyz").json() == {"status": "ok"}


def test_grade_catalog_endpoints(client):
    grades = client.get("/grades").json()
    assert {"name": "assistant professor", "track": "ScientificResearch", "rank": 0} in grades
    hits = client.get("/grades/expert%20assistant").json()
    assert len(hits) == 2
    response = client.get("/grades/wizard")
    assert response.status_code == 404
    assert error_code(response) == "UnknownGrade"


def test_person_lifecycle(client):
    created = client.post(
        "/persons",
        json={"full_name": "T. Person", "date_of_birth": "1980-01-01", "doctoral_degree": True},
    )
    assert created.status_code == 201
    person_id = created.json()["person_id"]
    assert client.get(f"/persons/{person_id}").json()["doctoral_degree"] is True
    assert client.get("/persons/nope").status_code == 404
    assert client.post("/persons", json={"full_name": ""}).status_code == 422
    bad_date = client.post(
        "/persons", json={"full_name": "X", "date_of_birth": "yesterday"}
    )
    assert bad_date.status_code == 422


def test_employee_endpoints(client):
    person = client.post(
        "/persons", json={"full_name": "E. Worker", "date_of_birth": "1985-05-05"}
    ).json()
    response = client.post(
        "/employees",
        json={
            "person_id": person["person_id"],
            "staff_group": "Academic",
            "employment_start": "2015-01-01",
        },
    )
    assert response.status_code == 201
    assert client.get(f"/employees/{person['person_id']}").json()["staff_group"] == "Academic"
    assert client.get("/employees/nope").status_code == 404


def test_procedure_flow_and_errors(client):
    procedure = open_procedure(client)
    pid = procedure["procedure_id"]
    assert procedure["state"] == "Initiated"
    assert procedure["legal_events"] == ["select-committee", "terminate"]

    ok = post_event(client, pid, 1, "select-committee", {"members": ["a", "b", "c"]})
    assert ok.status_code == 200
    assert ok.json()["state"] == "CommitteeSelected"

    stale = post_event(client, pid, 1, "announce-vacancy", {"announcement_date": "2024-02-01"})
    assert stale.status_code == 409
    assert error_code(stale) == "VersionConflict"

    illegal = post_event(client, pid, 2, "submit-report", {"report_ref": "R"})
    assert illegal.status_code == 422
    assert error_code(illegal) == "IllegalTransition"

    guard = post_event(client, pid, 2, "terminate", {"reason": " "})
    assert guard.status_code == 422
    assert error_code(guard) == "GuardViolation"
    assert guard.json()["error"]["details"]["guard"] == "termination_reason_required"

    missing_header = client.post(
        f"/procedures/{pid}/events", json={"kind": "close-applications", "payload": {}}
    )
    assert missing_header.status_code == 422

    assert post_event(client, "prc-nope", 1, "terminate", {"reason": "x"}).status_code == 404


def test_open_procedure_validation(client):
    invalid_track = client.post(
        "/procedures", json={"grade": "research advisor", "council_ref": "FC-1"}
    )
    assert invalid_track.status_code == 422
    assert error_code(invalid_track) == "InvalidTrack"
    ambiguous = client.post("/procedures", json={"grade": "assistant", "council_ref": "FC-1"})
    assert ambiguous.status_code == 422
    with_track = client.post(
        "/procedures", json={"grade": "assistant", "track": "Associate", "council_ref": "FC-1"}
    )
    assert with_track.status_code == 201


def test_recognition_creates_appointments(client):
    pid = drive_to_recognized(client)
    appointments = client.get("/appointments").json()
    assert len(appointments) == 1
    assert appointments[0]["procedure_id"] == pid
    assert appointments[0]["valid_to"] == "2029-03-01"
    by_person = client.get("/appointments", params={"person_id": "p1"}).json()
    assert len(by_person) == 1
    single = client.get(f"/appointments/{appointments[0]['appointment_id']}")
    assert single.status_code == 200
    assert client.get("/appointments/apt-nope").status_code == 404


def test_procedure_export_is_replayable(client, service):
    from unihr import workflow

    pid = drive_to_recognized(client)
    exported = client.get(f"/procedures/{pid}/export").text
    events = workflow.events_from_jsonl(exported)
    assert workflow.replay(events).value == "Recognized"


def test_expiry_review_endpoints(client):
    drive_to_recognized(client)
    rows = client.get("/expiry-review", params={"as_of": "2029-01-15"}).json()
    assert len(rows) == 1
    assert rows[0]["status"] == "InitiationDue"
    assert rows[0]["deadline_to_initiate"] == "2028-12-01"

    csv_body = client.get(
        "/expiry-review", params={"as_of": "2029-01-15", "format": "csv"}
    ).text
    assert csv_body.splitlines()[0] == "person,grade,valid_to,status,deadline_to_initiate"
    assert "p1" in csv_body

    created = client.post("/expiry-review/run", json={"as_of": "2029-01-15"}).json()
    assert len(created) == 1
    again = client.post("/expiry-review/run", json={"as_of": "2029-01-15"}).json()
    assert again == []
    ledger = client.get("/expiry-review/notifications").json()
    assert len(ledger) == 1

    missing = client.get("/expiry-review")
    assert missing.status_code == 422


def test_registry_endpoints(client, ministry):
    person = client.post(
        "/persons", json={"full_name": "R. Advisor", "date_of_birth": "1970-01-01"}
    ).json()
    submitted = client.post(
        "/registry/applications",
        json={"person_id": person["person_id"], "category": "research advisor", "documents": ["d"]},
    )
    assert submitted.status_code == 201
    application_id = submitted.json()["application_id"]
    assert submitted.json()["ack_token"].startswith("ack-")

    duplicate = client.post(
        "/registry/applications",
        json={"person_id": person["person_id"], "category": "full professor"},
    )
    assert duplicate.status_code == 409
    assert error_code(duplicate) == "AlreadyRegistered"

    bad_category = client.post(
        "/registry/applications",
        json={"person_id": person["person_id"], "category": "lecturer"},
    )
    assert bad_category.status_code == 422
    assert error_code(bad_category) == "CategoryNotRegistrable"

    decided = client.post(
        f"/registry/applications/{application_id}/decision",
        json={"decision": "approved", "scientist_id": "299999"},
    )
    assert decided.status_code == 200
    assert decided.json()["status"] == "Approved"

    twice = client.post(
        f"/registry/applications/{application_id}/decision",
        json={"decision": "rejected", "reason": "no"},
    )
    assert twice.status_code == 409
    assert error_code(twice) == "AlreadyDecided"

    entries = client.get("/registry/entries").json()
    assert [e["scientist_id"] for e in entries] == ["299999"]


def test_registry_transport_error_maps_to_502(client, ministry):
    ministry.fail_mode = "transport"
    person = client.post(
        "/persons", json={"full_name": "T. Cutoff", "date_of_birth": "1970-01-01"}
    ).json()
    response = client.post(
        "/registry/applications",
        json={"person_id": person["person_id"], "category": "research advisor"},
    )
    assert response.status_code == 502
    assert error_code(response) == "TransportError"


def test_publication_endpoints(client, biblio):
    from test_bibliography import FIXTURES

    person = client.post(
        "/persons", json={"full_name": "A. Author", "date_of_birth": "1970-01-01"}
    ).json()
    person_id = person["person_id"]

    no_mapping = client.post(f"/publications/sync/{person_id}")
    assert no_mapping.status_code == 422
    assert error_code(no_mapping) == "NoAuthorMapping"

    mapped = client.put(
        f"/publications/mappings/{person_id}", json={"author_key": "author-1"}
    )
    assert mapped.status_code == 200
    biblio.set_records("author-1", FIXTURES)

    report = client.post(f"/publications/sync/{person_id}").json()
    assert report == {"added": 3, "updated": 0, "unchanged": 0}

    records = client.get(f"/publications/{person_id}").json()
    assert [r["source_key"] for r in records] == ["k2", "k3", "k1"]
    filtered = client.get(
        f"/publications/{person_id}", params={"type_of_work": "journal article"}
    ).json()
    assert len(filtered) == 2

    removed = client.delete(f"/publications/{person_id}/k2")
    assert removed.status_code == 200
    assert len(client.get(f"/publications/{person_id}").json()) == 2
    assert client.delete(f"/publications/{person_id}/k2").status_code == 404


def test_document_endpoints(client):
    procedure = open_procedure(client)
    pid = procedure["procedure_id"]
    owner = {"kind": "procedure", "id": pid}

    attached = client.post(
        "/documents",
        json={"owner": owner, "path": "repo://r.pdf", "declared_format": "pdf",
              "description": "committee report"},
    )
    assert attached.status_code == 201
    document_id = attached.json()["document_id"]

    empty = client.post("/documents", json={"owner": owner, "path": " ", "declared_format": "pdf"})
    assert empty.status_code == 422
    assert error_code(empty) == "EmptyPath"

    orphan = client.post(
        "/documents",
        json={"owner": {"kind": "procedure", "id": "prc-nope"}, "path": "repo://x",
              "declared_format": "pdf"},
    )
    assert orphan.status_code == 404
    assert error_code(orphan) == "OwnerNotFound"

    listed = client.get("/documents", params={"owner_kind": "procedure", "owner_id": pid}).json()
    assert [d["document_id"] for d in listed] == [document_id]

    resolved = client.get(f"/documents/{document_id}").json()
    assert resolved == {
        "document_id": document_id,
        "path": "repo://r.pdf",
        "declared_format": "pdf",
    }

    assert client.delete(f"/documents/{document_id}").status_code == 200
    assert client.get(f"/documents/{document_id}").status_code == 404


def test_requirement_endpoints(client):
    client.post(
        "/requirements",
        json={"text": "respond quickly", "category": "Performance", "priority": "S"},
    )
    client.post(
        "/requirements",
        json={"text": "track expiry", "category": "Functionality", "priority": "M"},
    )
    bad = client.post(
        "/requirements", json={"text": "x", "category": "Functionality", "priority": "Q"}
    )
    assert bad.status_code == 422
    backlog = client.get("/requirements/backlog").json()
    assert [r["priority"] for r in backlog] == ["M", "S"]
    assert backlog[0]["kind"] == "Functional"
    assert backlog[1]["kind"] == "NonFunctional"


def test_import_endpoint(client):
    from test_service import CSV_OK

    response = client.post("/import/employees", content=CSV_OK.encode("utf-8"))
    assert response.status_code == 200
    assert response.json()["created"] == 2


def test_audit_trail_counts_every_mutating_call(client):
    client.post("/persons", json={"full_name": "A", "date_of_birth": "1970-01-01"})
    client.post("/persons", json={"full_name": ""})  # fails, still audited
    open_procedure(client)
    client.get("/persons")  # reads are not audited
    entries = client.get("/audit").json()
    assert len(entries) == 3
    outcomes = [e["outcome"] for e in entries]
    assert outcomes == ["ok", "ValidationError", "ok"]


def test_auth_tokens_gate_requests_and_name_actors():
    store = make_store()
    service = HRService(
        ServiceConfig(store_path=":memory:", auth_tokens={"tok-1": "hr.officer"}),
        store=store,
    )
    client = TestClient(create_app(service))
    assert client.get("/persons").status_code == 401
    assert client.get("/healthz").status_code == 200
    denied = client.post(
        "/persons",
        json={"full_name": "A", "date_of_birth": "1970-01-01"},
        headers={"Authorization": "Bearer wrong"},
    )
    assert denied.status_code == 401
    allowed = client.post(
        "/procedures",
        json={"grade": "lecturer", "council_ref": "FC-1"},
        headers={"Authorization": "Bearer tok-1"},
    )
    assert allowed.status_code == 201
    assert allowed.json()["history"][0]["actor"] == "hr.officer"
    audit = client.get("/audit", headers={"Authorization": "Bearer tok-1"}).json()
    assert audit[-1]["actor"] == "hr.officer"


def test_error_body_shape(client):
    response = client.get("/grades/wizard")
    body = response.json()
    assert set(body) == {"error"}
    assert set(body["error"]) >= {"code", "message"}
