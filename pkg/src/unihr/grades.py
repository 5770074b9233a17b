"""Closed academic-grade taxonomy.

Five tracks, each with an ordered grade listing; rank ascends with
seniority and follows the listing order of the governing regulations.
Grade names are stored in canonical lower-case form; lookups normalize
case and collapse internal whitespace. A name may legitimately appear
in more than one track ("assistant" is both a Researcher and an
Associate grade), so name lookups return every matching entry.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum

from .errors import TrackMismatch, UnknownGrade, ValidationError


class GradeTrack(str, Enum):
    SCIENTIST = "Scientist"
    RESEARCHER = "Researcher"
    SCIENTIFIC_RESEARCH = "ScientificResearch"
    TEACHING = "Teaching"
    ASSOCIATE = "Associate"


@dataclass(frozen=True)
class AcademicGrade:
    name: str
    track: GradeTrack
    rank_in_track: int


_TRACK_LISTINGS: dict[GradeTrack, tuple[str, ...]] = {
    GradeTrack.SCIENTIST: (
        "research associate",
        "senior research associate",
        "research advisor",
    ),
    GradeTrack.RESEARCHER: (
        "expert assistant",
        "younger assistant",
        "assistant",
        "senior assistant",
    ),
    GradeTrack.SCIENTIFIC_RESEARCH: (
        "assistant professor",
        "associate professor",
        "full professor",
        "professor emeritus",
    ),
    GradeTrack.TEACHING: (
        "lecturer",
        "senior lecturer",
        "professor of high school",
        "lector",
        "senior lector",
        "repetiteur",
        "senior repetiteur",
    ),
    GradeTrack.ASSOCIATE: (
        "expert assistant",
        "younger assistant",
        "assistant",
        "high school assistant",
        "senior assistant",
    ),
}

CATALOG: tuple[AcademicGrade, ...] = tuple(
    AcademicGrade(name, track, rank)
    for track, names in _TRACK_LISTINGS.items()
    for rank, name in enumerate(names)
)

# Tracks whose posts are filled through announced appointment procedures.
# Scientist/Researcher grades enter the system via the Register instead.
APPOINTABLE_TRACKS = frozenset(
    {GradeTrack.SCIENTIFIC_RESEARCH, GradeTrack.TEACHING, GradeTrack.ASSOCIATE}
)

_BY_NAME: dict[str, tuple[AcademicGrade, ...]] = {}
for _grade in CATALOG:
    _BY_NAME[_grade.name] = _BY_NAME.get(_grade.name, ()) + (_grade,)


def normalize_grade_name(name: str) -> str:
    return re.sub(r"\s+", " ", name).strip().lower()


def classify_grade(name: str) -> list[AcademicGrade]:
    """Return every catalog entry whose canonical name matches ``name``.

    Raises UnknownGrade when the normalized name is not in the catalog.
    """
    hits = _BY_NAME.get(normalize_grade_name(name))
    if not hits:
        raise UnknownGrade(f"grade name not in catalog: {name!r}", name=name)
    return list(hits)


def find_grade(name: str, track: GradeTrack | str | None = None) -> AcademicGrade:
    """Resolve a grade name to a single catalog entry.

    ``track`` disambiguates names that appear in more than one track;
    omitting it for an ambiguous name is a ValidationError.
    """
    hits = classify_grade(name)
    if track is not None:
        track = GradeTrack(track)
        for grade in hits:
            if grade.track is track:
                return grade
        raise UnknownGrade(
            f"grade {name!r} is not in track {track.value}", name=name, track=track.value
        )
    if len(hits) > 1:
        raise ValidationError(
            f"grade name {name!r} is ambiguous; specify a track",
            name=name,
            tracks=[g.track.value for g in hits],
        )
    return hits[0]


def compare_seniority(a: AcademicGrade, b: AcademicGrade) -> int:
    """Order two grades of the same track: negative, zero or positive.

    Cross-track comparison is undefined and raises TrackMismatch.
    """
    if a.track is not b.track:
        raise TrackMismatch(
            f"cannot compare {a.name!r} ({a.track.value}) with {b.name!r} ({b.track.value})"
        )
    return (a.rank_in_track > b.rank_in_track) - (a.rank_in_track < b.rank_in_track)


def catalog_records() -> list[dict]:
    """Catalog as plain records, in listing order."""
    return [
        {"name": g.name, "track": g.track.value, "rank": g.rank_in_track}
        for g in CATALOG
    ]


def dump_catalog() -> str:
    """Machine-readable seed: one JSON record per line, UTF-8."""
    return "".join(json.dumps(rec, ensure_ascii=False) + "\n" for rec in catalog_records())
