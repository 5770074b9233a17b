from datetime import date, datetime, timedelta, timezone

import pytest

from unihr import people, vault, workflow
from unihr.errors import EmptyPath, NotFound, OwnerNotFound
from unihr.grades import find_grade
from unihr.vault import OwnerKind, OwnerRef

from conftest import make_store


def procedure_owner(store):
    procedure = workflow.open_procedure(store, find_grade("lecturer"), "FC-1")
    return OwnerRef(OwnerKind.PROCEDURE, procedure.procedure_id)


def test_attach_and_resolve_round_trip(store):
    owner = procedure_owner(store)
    document = vault.attach(
        store, owner, "repo://promotions/2020/report.pdf", "pdf", "committee report"
    )
    assert vault.resolve(store, document.document_id) == (
        "repo://promotions/2020/report.pdf",
        "pdf",
    )


def test_attach_rejects_empty_path(store):
    owner = procedure_owner(store)
    with pytest.raises(EmptyPath):
        vault.attach(store, owner, "", "pdf")
    with pytest.raises(EmptyPath):
        vault.attach(store, owner, "   ", "pdf")


def test_attach_rejects_unknown_owner(store):
    with pytest.raises(OwnerNotFound):
        vault.attach(store, OwnerRef(OwnerKind.PROCEDURE, "prc-nope"), "repo://x", "html")


def test_employee_and_application_owners(store, ministry):
    from unihr import registry

    person = people.register_person(store, "A. Owner", date(1970, 1, 1), True)
    people.register_employee(store, person.person_id, "Academic", date(2000, 1, 1))
    employee_owner = OwnerRef(OwnerKind.EMPLOYEE, person.person_id)
    vault.attach(store, employee_owner, "repo://cv.pdf", "pdf")
    application = registry.submit_registration(
        store, ministry, person.person_id, "research advisor"
    )
    application_owner = OwnerRef(OwnerKind.REGISTRY_APPLICATION, application.application_id)
    vault.attach(store, application_owner, "repo://diploma.pdf", "pdf")
    assert len(vault.list_attachments(store, employee_owner)) == 1
    assert len(vault.list_attachments(store, application_owner)) == 1


def test_list_is_chronological_and_isolated():
    # a ticking clock makes attachment order observable
    tick = {"n": 0}

    def clock():
        tick["n"] += 1
        return datetime(2024, 1, 1, tzinfo=timezone.utc) + timedelta(minutes=tick["n"])

    with make_store(clock=clock) as store:
        owner_a = procedure_owner(store)
        owner_b = procedure_owner(store)
        d1 = vault.attach(store, owner_a, "repo://1", "pdf")
        d2 = vault.attach(store, owner_b, "repo://other", "doc")
        d3 = vault.attach(store, owner_a, "repo://2", "xls")
        d4 = vault.attach(store, owner_a, "repo://3", "jpg")
        listed = vault.list_attachments(store, owner_a)
        assert [d.document_id for d in listed] == [d1.document_id, d3.document_id, d4.document_id]
        assert [d.document_id for d in vault.list_attachments(store, owner_b)] == [d2.document_id]


def test_unknown_owner_lists_empty(store):
    assert vault.list_attachments(store, OwnerRef(OwnerKind.EMPLOYEE, "nobody")) == []


def test_resolve_unknown_document(store):
    with pytest.raises(NotFound):
        vault.resolve(store, "doc-nope")


def test_format_label_passes_through_verbatim(store):
    owner = procedure_owner(store)
    document = vault.attach(store, owner, "repo://odd", "Weird-Format v2.0 (β)")
    assert vault.resolve(store, document.document_id)[1] == "Weird-Format v2.0 (β)"


def test_operations_ignore_bytes_at_path(store):
    owner = procedure_owner(store)
    document = vault.attach(store, owner, "/definitely/not/a/real/file.bin", "bin")
    assert vault.resolve(store, document.document_id)[0] == "/definitely/not/a/real/file.bin"
    assert len(vault.list_attachments(store, owner)) == 1


def test_detach_is_soft_delete(store):
    owner = procedure_owner(store)
    document = vault.attach(store, owner, "repo://gone", "pdf")
    vault.detach(store, document.document_id)
    assert vault.list_attachments(store, owner) == []
    with pytest.raises(NotFound):
        vault.resolve(store, document.document_id)
    with pytest.raises(NotFound):
        vault.detach(store, document.document_id)
    # the record itself survives for the audit trail
    assert store.get_document(document.document_id).deleted is True
