import csv
import io
from pathlib import Path

import pytest

from edumlp import SchemaEncoder, parse_dataset
from edumlp.dataset import CANONICAL_HEADER, RecordTable, StudentRecord

DATA_PATH = Path(__file__).resolve().parents[1] / "data" / "students.csv"

_DEFAULT_ROW = {
    "gender": "M",
    "NationalITy": "Kuwait",
    "PlaceofBirth": "Kuwait",
    "StageID": "lowerlevel",
    "GradeID": "G-04",
    "SectionID": "A",
    "Topic": "IT",
    "Semester": "F",
    "Relation": "Father",
    "raisedhands": "15",
    "VisITedResources": "16",
    "AnnouncementsView": "2",
    "Discussion": "20",
    "ParentAnsweringSurvey": "Yes",
    "ParentschoolSatisfaction": "Good",
    "StudentAbsenceDays": "Under-7",
    "Class": "M",
}


def make_csv(rows: list[dict], header=CANONICAL_HEADER) -> str:
    """CSV text from per-row override dicts on top of a valid template row."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for overrides in rows:
        row = {**_DEFAULT_ROW, **overrides}
        writer.writerow([row[c] for c in header])
    return out.getvalue()


def make_record(**overrides) -> StudentRecord:
    row = {**_DEFAULT_ROW, **overrides}
    return StudentRecord(
        gender=row["gender"],
        nationality=row["NationalITy"],
        place_of_birth=row["PlaceofBirth"],
        stage_id=row["StageID"],
        grade_id=row["GradeID"],
        section_id=row["SectionID"],
        topic=row["Topic"],
        semester=row["Semester"],
        relation=row["Relation"],
        raised_hands=int(row["raisedhands"]),
        visited_resources=int(row["VisITedResources"]),
        announcements_view=int(row["AnnouncementsView"]),
        discussion=int(row["Discussion"]),
        parent_answering_survey=row["ParentAnsweringSurvey"],
        parent_school_satisfaction=row["ParentschoolSatisfaction"],
        student_absence_days=row["StudentAbsenceDays"],
        class_label=row["Class"],
    )


def make_table(records) -> RecordTable:
    return RecordTable(records=tuple(records), source_name="<test>")


@pytest.fixture(scope="session")
def reference_text() -> str:
    return DATA_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def reference_table(reference_text):
    return parse_dataset(reference_text, source_name=str(DATA_PATH))


@pytest.fixture(scope="session")
def reference_encoder(reference_table):
    return SchemaEncoder().fit(reference_table)


@pytest.fixture(scope="session")
def reference_matrix(reference_table, reference_encoder):
    return reference_encoder.encode_table(reference_table)
