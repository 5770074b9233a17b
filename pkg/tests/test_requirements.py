import pytest
from hypothesis import given
from hypothesis import strategies as st

from unihr import requirements
from unihr.errors import ValidationError
from unihr.requirements import (
    FurpsCategory,
    Priority,
    Requirement,
    RequirementKind,
    prioritized_backlog,
)


def test_functionality_category_is_functional(store):
    requirement = requirements.add_requirement(store, "track grade expiry", "Functionality", "M")
    assert requirement.kind is RequirementKind.FUNCTIONAL
    assert requirement.priority is Priority.MUST


def test_other_categories_are_non_functional(store):
    requirement = requirements.add_requirement(store, "respond within 2 s", "Performance", "S")
    assert requirement.kind is RequirementKind.NON_FUNCTIONAL


def test_validation_errors(store):
    with pytest.raises(ValidationError):
        requirements.add_requirement(store, "", "Functionality", "M")
    with pytest.raises(ValidationError):
        requirements.add_requirement(store, "x", "Velocity", "M")
    with pytest.raises(ValidationError):
        requirements.add_requirement(store, "x", "Functionality", "X")


def test_kind_category_bijection_for_stored_requirements(store):
    for category in FurpsCategory:
        requirements.add_requirement(store, f"req for {category.value}", category, "C")
    for requirement in store.list_requirements():
        functional = requirement.kind is RequirementKind.FUNCTIONAL
        assert functional == (requirement.category is FurpsCategory.FUNCTIONALITY)


def _req(n, priority):
    from datetime import datetime, timezone

    return Requirement(
        requirement_id=f"req-{n:03d}",
        text=f"requirement {n}",
        kind=RequirementKind.FUNCTIONAL,
        category=FurpsCategory.FUNCTIONALITY,
        priority=priority,
        created_at=datetime(2024, 1, 1, tzinfo=timezone.utc),
    )


def test_backlog_orders_must_before_should():
    r1, r2 = _req(1, Priority.SHOULD), _req(2, Priority.MUST)
    assert prioritized_backlog([r1, r2]) == [r2, r1]


def test_backlog_empty():
    assert prioritized_backlog([]) == []


def test_backlog_is_stable_within_class():
    a, b = _req(1, Priority.COULD), _req(2, Priority.COULD)
    assert prioritized_backlog([a, b]) == [a, b]
    assert prioritized_backlog([b, a]) == [b, a]


def test_wont_haves_are_kept_and_sorted_last(store):
    requirements.add_requirement(store, "payroll integration", "Functionality", "W")
    requirements.add_requirement(store, "expiry tracking", "Functionality", "M")
    backlog = requirements.prioritized_backlog(store.list_requirements())
    assert [r.priority for r in backlog] == [Priority.MUST, Priority.WONT]


def bucket_oracle(items):
    """Reference stable sort: concatenate the four priority buckets."""
    buckets = {p: [] for p in (Priority.MUST, Priority.SHOULD, Priority.COULD, Priority.WONT)}
    for item in items:
        buckets[item.priority].append(item)
    return [item for bucket in buckets.values() for item in bucket]


@given(st.lists(st.sampled_from(list(Priority)), max_size=40))
def test_backlog_matches_bucket_oracle(priorities):
    items = [_req(i, p) for i, p in enumerate(priorities)]
    result = prioritized_backlog(items)
    assert result == bucket_oracle(items)
    assert sorted(r.requirement_id for r in result) == sorted(r.requirement_id for r in items)


def test_backlog_groups_order():
    groups = requirements.backlog_groups([_req(1, Priority.WONT), _req(2, Priority.MUST)])
    assert list(groups) == [Priority.MUST, Priority.SHOULD, Priority.COULD, Priority.WONT]


def test_import_requirement_keeps_given_id(store):
    requirement = requirements.import_requirement(
        store, "imported", "Usability", "S", requirement_id="REQ-0042"
    )
    assert requirement.requirement_id == "REQ-0042"
    with pytest.raises(ValidationError):
        requirements.import_requirement(
            store, "duplicate", "Usability", "S", requirement_id="REQ-0042"
        )
    # the failed duplicate must not have been stored
    assert [r.requirement_id for r in store.list_requirements()] == ["REQ-0042"]
