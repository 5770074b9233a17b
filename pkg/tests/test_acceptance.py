"""Acceptance suite: one test per release criterion.

Each criterion is verified against an oracle that is independent of the
implementation path it checks (hand-written interpreter, day-count
calendar walk, bucket sort, direct-vs-HTTP store comparison) and prints
one PASS line with its measured scale. Run with `pytest -s
tests/test_acceptance.py` to see the lines.
"""

from __future__ import annotations

import itertools
import random
import time
from datetime import date, timedelta

import pytest
from fastapi.testclient import TestClient

from unihr import bibliography, registry, requirements, workflow
from unihr.api import STATUS_BY_ERROR, create_app
from unihr.config import ServiceConfig
from unihr.errors import CategoryNotRegistrable, HRError
from unihr.expiry import ExpiryState, add_years, evaluate, subtract_months
from unihr.external import HttpMinistryClient, StubBibliographyClient, StubMinistryClient
from unihr.grades import CATALOG, GradeTrack, classify_grade, compare_seniority, find_grade
from unihr.people import register_person
from unihr.registry import RegistryCategory
from unihr.service import HRService
from unihr.store import Store
from unihr.stubserver import ExternalServiceStub
from unihr.workflow import replay

from conftest import make_store
from test_bibliography import FIXTURES
from test_expiry import make_appointment, oracle_add_years, oracle_subtract_months


# =====================================================================
# Criterion: workflow soundness by exhaustive enumeration
# =====================================================================

KINDS = (
    "initiate-decision",
    "select-committee",
    "announce-vacancy",
    "receive-application",
    "close-applications",
    "submit-report",
    "board-decision",
    "senate-confirmation",
    "recognize-appointments",
    "terminate",
)

# Independent interpreter of the procedure machine, written directly
# from the transition description (not from the implementation).
ORACLE_TABLE = {
    ("Initiated", "select-committee"): "CommitteeSelected",
    ("CommitteeSelected", "announce-vacancy"): "VacancyAnnounced",
    ("VacancyAnnounced", "receive-application"): "AcceptingApplications",
    ("AcceptingApplications", "receive-application"): "AcceptingApplications",
    ("AcceptingApplications", "close-applications"): "ApplicationsClosed",
    ("VacancyAnnounced", "close-applications"): "ApplicationsClosed",
    ("ApplicationsClosed", "submit-report"): "ReportSubmitted",
    ("ReportSubmitted", "board-decision"): "BoardDecided",
    ("BoardDecided", "senate-confirmation"): "SenateConfirmed",
    ("SenateConfirmed", "recognize-appointments"): "Recognized",
}
ORACLE_TERMINAL = {"Recognized", "Terminated"}


def oracle_replay(kinds: tuple[str, ...]) -> str | None:
    """Final state name, or None when the string is rejected."""
    if not kinds or kinds[0] != "initiate-decision":
        return None
    state = "Initiated"
    for kind in kinds[1:]:
        if state in ORACLE_TERMINAL:
            return None
        if kind == "initiate-decision":
            return None
        if kind == "terminate":
            state = "Terminated"
            continue
        state = ORACLE_TABLE.get((state, kind))
        if state is None:
            return None
    return state


def make_event(kind: str, position: int) -> workflow.ProcedureEvent:
    """Canonical concrete payload per event kind.

    Applicants are indexed by history position so the duplicate guard
    never interferes with the pure machine-shape enumeration.
    """
    payloads = {
        "initiate-decision": {"council_ref": "FC-A"},
        "select-committee": {"members": ["c1", "c2", "c3"]},
        "announce-vacancy": {"announcement_date": "2024-02-01"},
        "receive-application": {"applicant": f"p{position}", "documents": []},
        "close-applications": {},
        "submit-report": {"report_ref": "R"},
        "board-decision": {"promoted": []},
        "senate-confirmation": {},
        "recognize-appointments": {"effective_date": "2024-03-01"},
        "terminate": {"reason": "stop"},
    }
    return workflow.event_from_record({"kind": kind, "payload": payloads[kind]})


def replay_outcome(kinds: tuple[str, ...]) -> str | None:
    events = [make_event(k, i) for i, k in enumerate(kinds)]
    try:
        return replay(events).value
    except HRError:
        return None


def advance_states(store: Store, kinds: tuple[str, ...]) -> list[str]:
    """State after each event when fed through store-backed advance."""
    procedure = workflow.open_procedure(store, find_grade("lecturer"), "FC-A")
    states = [procedure.state.value]
    for i, kind in enumerate(kinds[1:], start=1):
        procedure = workflow.advance(
            store, procedure.procedure_id, make_event(kind, i), procedure.version
        )
        states.append(procedure.state.value)
    assert procedure.version == len(kinds)
    return states


RECOGNITION_TAIL = (
    "close-applications",
    "submit-report",
    "board-decision",
    "senate-confirmation",
    "recognize-appointments",
)


def is_canonical_recognition_path(kinds: tuple[str, ...]) -> bool:
    if kinds[:3] != ("initiate-decision", "select-committee", "announce-vacancy"):
        return False
    rest = kinds[3:]
    applications = 0
    while applications < len(rest) and rest[applications] == "receive-application":
        applications += 1
    return rest[applications:] == RECOGNITION_TAIL


@pytest.mark.slow
def test_workflow_soundness_exhaustive():
    started = time.monotonic()
    store = make_store()
    accepted: list[tuple[tuple[str, ...], str]] = []
    probed = 0
    recognized_paths = []

    def expand(prefix: tuple[str, ...], prefix_state: str | None) -> None:
        nonlocal probed
        for kind in KINDS:
            kinds = prefix + (kind,)
            expected = oracle_replay(kinds)
            actual = replay_outcome(kinds)
            probed += 1
            assert actual == expected, f"divergence on {kinds}: {actual} != {expected}"
            if expected is None:
                continue  # pruned on first error
            accepted.append((kinds, expected))
            if expected == "Recognized":
                recognized_paths.append(kinds)
            # replay must equal incremental advance, state by state
            states = advance_states(store, kinds)
            oracle_states = [oracle_replay(kinds[: i + 1]) for i in range(len(kinds))]
            assert states == oracle_states
            if len(kinds) < 9:
                if expected in ORACLE_TERMINAL:
                    # still probe every extension: terminal accepts nothing
                    for extra in KINDS:
                        probed += 1
                        assert replay_outcome(kinds + (extra,)) is None
                else:
                    expand(kinds, expected)

    expand((), None)
    elapsed = time.monotonic() - started

    assert recognized_paths, "no Recognized string of length <= 9 found"
    for kinds in recognized_paths:
        assert is_canonical_recognition_path(kinds), f"non-canonical path: {kinds}"
    assert elapsed < 60
    print(
        f"PASS workflow soundness: {probed} strings probed, {len(accepted)} accepted, "
        f"{len(recognized_paths)} recognition paths, {elapsed:.1f}s"
    )


# =====================================================================
# Criterion: expiry rule fidelity against the day-count oracle
# =====================================================================


def oracle_expiry(valid_from: date, as_of: date) -> tuple[str, int, date]:
    valid_to = oracle_add_years(valid_from, 5)
    deadline = oracle_subtract_months(valid_to, 3)
    days = valid_to.toordinal() - as_of.toordinal()
    if days <= 0:
        state = "Expired"
    elif as_of >= deadline:
        state = "InitiationDue"
    else:
        state = "Active"
    return state, days, deadline


@pytest.mark.slow
def test_expiry_rule_fidelity_randomized():
    rng = random.Random(19900101)
    start = date(1990, 1, 1)
    span = (date(2040, 12, 31) - start).days
    mismatches = 0
    for _ in range(10_000):
        valid_from = start + timedelta(days=rng.randrange(span + 1))
        as_of = start + timedelta(days=rng.randrange(span + 1))
        appointment = make_appointment(valid_from, add_years(valid_from, 5))
        status = evaluate(appointment, as_of)
        expected = oracle_expiry(valid_from, as_of)
        got = (status.state.value, status.days_remaining, status.deadline_to_initiate)
        if got != expected:
            mismatches += 1
    assert mismatches == 0

    # explicit boundary coverage, including leap-day starts
    for valid_from in (date(2010, 1, 15), date(2012, 2, 29), date(2011, 11, 30)):
        appointment = make_appointment(valid_from, add_years(valid_from, 5))
        deadline = subtract_months(appointment.valid_to, 3)
        assert evaluate(appointment, deadline - timedelta(days=1)).state is ExpiryState.ACTIVE
        assert evaluate(appointment, deadline).state is ExpiryState.INITIATION_DUE
        assert (
            evaluate(appointment, appointment.valid_to - timedelta(days=1)).state
            is ExpiryState.INITIATION_DUE
        )
        on_expiry = evaluate(appointment, appointment.valid_to)
        assert on_expiry.state is ExpiryState.EXPIRED and on_expiry.days_remaining == 0
        assert evaluate(appointment, appointment.valid_to + timedelta(days=1)).state is ExpiryState.EXPIRED
    print("PASS expiry rule fidelity: 10000 randomized pairs, 0 mismatches, boundaries exact")


# =====================================================================
# Criterion: calendar arithmetic equals the brute-force oracle
# =====================================================================


@pytest.mark.slow
def test_calendar_arithmetic_full_range():
    started = time.monotonic()
    rng = random.Random(5)
    day = date(1990, 1, 1)
    end = date(2040, 12, 31)
    checked = 0
    while day <= end:
        assert add_years(day, 5) == oracle_add_years(day, 5)
        assert subtract_months(day, 3) == oracle_subtract_months(day, 3)
        n_years = rng.randrange(0, 9)
        n_months = rng.randrange(0, 25)
        assert add_years(day, n_years) == oracle_add_years(day, n_years)
        assert subtract_months(day, n_months) == oracle_subtract_months(day, n_months)
        day += timedelta(days=1)
        checked += 1
    elapsed = time.monotonic() - started
    assert elapsed < 10
    print(f"PASS calendar arithmetic: {checked} dates, 0 mismatches, {elapsed:.1f}s")


# =====================================================================
# Criterion: taxonomy closure and seniority order
# =====================================================================


def test_taxonomy_closure_and_order():
    for grade in CATALOG:
        hits = classify_grade(grade.name)
        assert grade in hits
        for hit in hits:
            assert hit in CATALOG
    probes = [
        "wizard",
        "professor",
        "assistant  professor emeritus",
        "research",
        "senior",
        "",
        "lecturer II",
        "docent",
    ]
    for probe in probes:
        with pytest.raises(HRError):
            classify_grade(probe)
    for track in GradeTrack:
        grades = [g for g in CATALOG if g.track is track]
        for a, b in itertools.product(grades, grades):
            assert compare_seniority(a, b) == -compare_seniority(b, a)
            assert (compare_seniority(a, b) == 0) == (a == b)
        for a, b, c in itertools.product(grades, repeat=3):
            if compare_seniority(a, b) < 0 and compare_seniority(b, c) < 0:
                assert compare_seniority(a, c) < 0
    print(
        f"PASS taxonomy closure: {len(CATALOG)} catalog entries round-trip, "
        f"{len(probes)} probes rejected, strict total order per track"
    )


# =====================================================================
# Criterion: registry guards under randomized interleaving
# =====================================================================


@pytest.mark.slow
def test_registry_guards_randomized_against_stub():
    stub = ExternalServiceStub().start()
    try:
        store = make_store()
        ministry = HttpMinistryClient(stub.base_url)
        rng = random.Random(42)
        persons = [
            register_person(store, f"Person {i}", date(1970, 1, 1), doctoral_degree=i % 2 == 0)
            for i in range(40)
        ]
        good_categories = [c.value for c in RegistryCategory]
        bad_categories = ["lecturer", "senior lecturer", "wizard", "repetiteur", "associate"]
        id_pool = [str(200000 + i) for i in range(30)]  # small pool forces collisions
        counters = {"submitted": 0, "dup_person": 0, "bad_category": 0,
                    "approved": 0, "dup_id": 0, "rejected": 0}

        for _ in range(1000):
            if rng.random() < 0.55:
                person = rng.choice(persons)
                category = rng.choice(good_categories + bad_categories)
                try:
                    registry.submit_registration(
                        store, ministry, person.person_id, category, ("doc.pdf",)
                    )
                    counters["submitted"] += 1
                except CategoryNotRegistrable:
                    counters["bad_category"] += 1
                except HRError:
                    counters["dup_person"] += 1
            else:
                applications = store.list_registry_applications()
                if not applications:
                    continue
                application = rng.choice(applications)
                if rng.random() < 0.7:
                    try:
                        registry.record_ministry_decision(
                            store,
                            application.application_id,
                            "approved",
                            scientist_id=rng.choice(id_pool),
                        )
                        counters["approved"] += 1
                    except HRError as exc:
                        if exc.code == "DuplicateScientistId":
                            counters["dup_id"] += 1
                else:
                    try:
                        registry.record_ministry_decision(
                            store, application.application_id, "rejected", reason="denied"
                        )
                        counters["rejected"] += 1
                    except HRError:
                        pass

        entries = store.list_registry_entries()
        scientist_ids = [e.scientist_id for e in entries]
        assert len(scientist_ids) == len(set(scientist_ids)), "scientist ids must be unique"
        person_entries = [e.person_id for e in entries]
        assert len(person_entries) == len(set(person_entries)), "one active entry per person"
        for entry in entries:
            assert entry.category in RegistryCategory
        for application in store.list_registry_applications():
            assert application.category in RegistryCategory
        assert counters["bad_category"] > 0 and counters["dup_id"] > 0
        print(f"PASS registry guards: 1000 interleaved ops via HTTP stub, {counters}")
    finally:
        stub.stop()


# =====================================================================
# Criterion: bibliography sync idempotence and no-loss
# =====================================================================


def test_bibliography_sync_fixpoint_and_no_loss(store):
    biblio = StubBibliographyClient({"author-1": FIXTURES})
    person = register_person(store, "A. Author", date(1970, 1, 1))
    bibliography.map_author(store, person.person_id, "author-1")

    first = bibliography.sync_publications(store, biblio, person.person_id)
    assert (first.added, first.updated, first.unchanged) == (3, 0, 0)
    frozen = store.snapshot()
    second = bibliography.sync_publications(store, biblio, person.person_id)
    assert (second.added, second.updated, second.unchanged) == (0, 0, 3)
    assert store.snapshot() == frozen, "double sync must be a fixpoint"

    biblio.set_records("author-1", FIXTURES[:1])
    bibliography.sync_publications(store, biblio, person.person_id)
    remaining = bibliography.list_publications(store, person.person_id)
    assert len(remaining) == 3, "remote removal must not delete local records"
    print("PASS bibliography sync: double-sync fixpoint, remote removal lost nothing")


# =====================================================================
# Criterion: MoSCoW backlog against the reference stable sort
# =====================================================================


@pytest.mark.slow
def test_moscow_backlog_randomized():
    from test_requirements import _req, bucket_oracle

    rng = random.Random(99)
    priorities = list(requirements.Priority)
    for _ in range(1000):
        items = [_req(i, rng.choice(priorities)) for i in range(rng.randrange(0, 60))]
        result = requirements.prioritized_backlog(items)
        assert result == bucket_oracle(items)
        assert sorted(r.requirement_id for r in result) == sorted(
            r.requirement_id for r in items
        )
        ranks = [requirements.PRIORITY_ORDER[r.priority] for r in result]
        assert ranks == sorted(ranks)
    print("PASS MoSCoW backlog: 1000 random lists match the bucket-sort oracle")


# =====================================================================
# Criterion: API/state equivalence and total error mapping
# =====================================================================


def _fresh_pair():
    def build():
        service = HRService(
            ServiceConfig(store_path=":memory:"),
            store=make_store(),
            ministry=StubMinistryClient(),
            bibliography_client=StubBibliographyClient({"author-1": FIXTURES}),
        )
        return service

    direct = build()
    http_service = build()
    return direct, http_service, TestClient(create_app(http_service))


def _generate_op(rng: random.Random, service: HRService) -> dict:
    store = service.store
    persons = [p.person_id for p in store.list_persons()]
    procedures = store.list_procedure_ids()
    choice = rng.randrange(100)
    if choice < 18 or not persons:
        return {
            "op": "register_person",
            "full_name": rng.choice(["Ana", "Ivan", "Maja", ""]) ,
            "dob": "1975-04-12",
            "doctorate": rng.random() < 0.5,
        }
    if choice < 28:
        grade = rng.choice(CATALOG)
        return {
            "op": "open_procedure",
            "grade": grade.name,
            "track": grade.track.value,
            "council_ref": "FC-9",
        }
    if choice < 55 and procedures:
        procedure_id = rng.choice(procedures + ["prc-nope"])
        procedure = store.get_procedure(procedure_id) if procedure_id != "prc-nope" else None
        if procedure is None:
            return {
                "op": "advance",
                "procedure_id": procedure_id,
                "kind": "terminate",
                "payload": {"reason": "x"},
                "expected_version": 1,
            }
        legal = procedure.legal_events()
        kind = rng.choice(legal + ["submit-report"])  # sometimes illegal
        payload: dict = {}
        if kind == "select-committee":
            members = ["c1", "c2", "c3"] if rng.random() < 0.8 else ["c1", "c2"]
            payload = {"members": members}
        elif kind == "announce-vacancy":
            payload = {"announcement_date": "2024-02-01"}
        elif kind == "receive-application":
            applicant = rng.choice(persons + ["c1", f"p{rng.randrange(4)}"])
            payload = {"applicant": applicant, "documents": []}
        elif kind == "submit-report":
            payload = {"report_ref": "R"}
        elif kind == "board-decision":
            applicant_ids = [a.person_id for a in procedure.applicants]
            promoted = [a for a in applicant_ids if rng.random() < 0.6]
            if rng.random() < 0.15:
                promoted = promoted + ["stranger"]
            payload = {"promoted": promoted}
        elif kind == "recognize-appointments":
            year = rng.choice([2020, 2024, 2028])
            payload = {"effective_date": f"{year}-03-01"}
        elif kind == "terminate":
            payload = {"reason": "closed" if rng.random() < 0.9 else " "}
        version = procedure.version if rng.random() < 0.85 else procedure.version + 3
        return {
            "op": "advance",
            "procedure_id": procedure_id,
            "kind": kind,
            "payload": payload,
            "expected_version": version,
        }
    if choice < 63:
        return {
            "op": "register_employee",
            "person_id": rng.choice(persons + ["per-nope"]),
            "staff_group": rng.choice(["Academic", "Administrative", "Wizardry"]),
            "start": "2010-01-01",
        }
    if choice < 72:
        categories = [c.value for c in RegistryCategory] + ["lecturer"]
        return {
            "op": "submit_registration",
            "person_id": rng.choice(persons),
            "category": rng.choice(categories),
            "documents": ["d.pdf"],
        }
    if choice < 78:
        applications = [a.application_id for a in service.store.list_registry_applications()]
        if not applications:
            return {"op": "add_requirement", "text": "fallback", "category": "Usability",
                    "priority": "C"}
        return {
            "op": "record_decision",
            "application_id": rng.choice(applications),
            "decision": rng.choice(["approved", "rejected"]),
            "scientist_id": str(rng.randrange(5)),
            "reason": "because",
        }
    if choice < 84:
        return {"op": "map_author", "person_id": rng.choice(persons),
                "author_key": rng.choice(["author-1", "author-404"])}
    if choice < 88:
        return {"op": "sync", "person_id": rng.choice(persons)}
    if choice < 93 and procedures:
        return {
            "op": "attach",
            "owner_kind": "procedure",
            "owner_id": rng.choice(procedures + ["prc-nope"]),
            "path": rng.choice(["repo://doc.pdf", ""]),
            "format": "pdf",
        }
    if choice < 97:
        return {
            "op": "add_requirement",
            "text": rng.choice(["log everything", ""]),
            "category": rng.choice(["Functionality", "Performance", "Nonsense"]),
            "priority": rng.choice(["M", "S", "C", "W", "Q"]),
        }
    return {"op": "run_review", "as_of": f"{rng.choice([2026, 2029, 2033])}-06-01"}


def _apply_direct(service: HRService, op: dict) -> tuple[str, str | None]:
    try:
        name = op["op"]
        if name == "register_person":
            service.register_person(op["full_name"], date.fromisoformat(op["dob"]), op["doctorate"])
        elif name == "register_employee":
            service.register_employee(op["person_id"], op["staff_group"],
                                      date.fromisoformat(op["start"]))
        elif name == "open_procedure":
            grade = find_grade(op["grade"], op["track"])
            service.open_procedure(grade, op["council_ref"], actor="anonymous")
        elif name == "advance":
            event = workflow.event_from_record(
                {"kind": op["kind"], "actor": "anonymous", "occurred_at": None,
                 "payload": op["payload"]}
            )
            service.advance_procedure(op["procedure_id"], event, op["expected_version"])
        elif name == "submit_registration":
            service.submit_registration(op["person_id"], op["category"], op["documents"])
        elif name == "record_decision":
            service.record_ministry_decision(
                op["application_id"], op["decision"],
                scientist_id=op.get("scientist_id"), reason=op.get("reason"),
            )
        elif name == "map_author":
            service.map_author(op["person_id"], op["author_key"])
        elif name == "sync":
            service.sync_publications(op["person_id"])
        elif name == "attach":
            from unihr.vault import OwnerKind, OwnerRef

            service.attach_document(
                OwnerRef(OwnerKind(op["owner_kind"]), op["owner_id"]), op["path"], op["format"]
            )
        elif name == "add_requirement":
            service.add_requirement(op["text"], op["category"], op["priority"])
        elif name == "run_review":
            service.run_expiry_review(date.fromisoformat(op["as_of"]))
        else:
            raise AssertionError(f"unknown op {name}")
        return ("ok", None)
    except HRError as exc:
        return ("error", exc.code)


def _apply_http(client: TestClient, op: dict) -> tuple[str, str | None]:
    name = op["op"]
    if name == "register_person":
        response = client.post("/persons", json={
            "full_name": op["full_name"], "date_of_birth": op["dob"],
            "doctoral_degree": op["doctorate"]})
    elif name == "register_employee":
        response = client.post("/employees", json={
            "person_id": op["person_id"], "staff_group": op["staff_group"],
            "employment_start": op["start"]})
    elif name == "open_procedure":
        response = client.post("/procedures", json={
            "grade": op["grade"], "track": op["track"], "council_ref": op["council_ref"]})
    elif name == "advance":
        response = client.post(
            f"/procedures/{op['procedure_id']}/events",
            json={"kind": op["kind"], "payload": op["payload"]},
            headers={"X-Expected-Version": str(op["expected_version"])},
        )
    elif name == "submit_registration":
        response = client.post("/registry/applications", json={
            "person_id": op["person_id"], "category": op["category"],
            "documents": op["documents"]})
    elif name == "record_decision":
        response = client.post(
            f"/registry/applications/{op['application_id']}/decision",
            json={"decision": op["decision"], "scientist_id": op.get("scientist_id"),
                  "reason": op.get("reason")},
        )
    elif name == "map_author":
        response = client.put(
            f"/publications/mappings/{op['person_id']}", json={"author_key": op["author_key"]}
        )
    elif name == "sync":
        response = client.post(f"/publications/sync/{op['person_id']}")
    elif name == "attach":
        response = client.post("/documents", json={
            "owner": {"kind": op["owner_kind"], "id": op["owner_id"]},
            "path": op["path"], "declared_format": op["format"]})
    elif name == "add_requirement":
        response = client.post("/requirements", json={
            "text": op["text"], "category": op["category"], "priority": op["priority"]})
    elif name == "run_review":
        response = client.post("/expiry-review/run", json={"as_of": op["as_of"]})
    else:
        raise AssertionError(f"unknown op {name}")
    if response.status_code < 300:
        return ("ok", None)
    return ("error", response.json()["error"]["code"])


@pytest.mark.slow
def test_api_state_equivalence_randomized():
    rng = random.Random(2024)
    sequences = 500
    total_ops = 0
    for sequence in range(sequences):
        direct, http_service, client = _fresh_pair()
        ops: list[tuple[dict, tuple[str, str | None]]] = []
        for _ in range(rng.randrange(4, 13)):
            op = _generate_op(rng, direct)
            outcome = _apply_direct(direct, op)
            ops.append((op, outcome))
        for op, expected in ops:
            got = _apply_http(client, op)
            assert got == expected, f"sequence {sequence}: {op} -> {got}, direct {expected}"
        assert direct.store.snapshot() == http_service.store.snapshot(), (
            f"sequence {sequence}: stores diverged"
        )
        total_ops += len(ops)
    print(f"PASS API/state equivalence: {sequences} sequences, {total_ops} mutations, "
          f"stores identical")


def test_error_status_mapping_is_total():
    import unihr.api  # noqa: F401 - ensures the mapping module is loaded
    import unihr.store  # noqa: F401 - ensures StoreIntegrityError is defined

    classes = set()

    def walk(cls):
        for sub in cls.__subclasses__():
            classes.add(sub)
            walk(sub)

    walk(HRError)
    classes.add(HRError)
    unmapped = [cls for cls in classes if cls not in STATUS_BY_ERROR]
    assert not unmapped, f"error classes without a status mapping: {unmapped}"
    statuses = set(STATUS_BY_ERROR.values())
    assert statuses <= {404, 409, 422, 500, 502}
    print(f"PASS error mapping totality: {len(classes)} error classes all mapped")
