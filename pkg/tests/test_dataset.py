import csv
import io

import pytest

from edumlp import parse_dataset, serialize_dataset, summarize, validate
from edumlp.dataset import CANONICAL_HEADER, CATEGORICAL_COLUMNS
from edumlp.errors import DatasetFormatError

from conftest import DATA_PATH, make_csv, make_record, make_table


class TestParse:
    def test_reference_has_480_records(self, reference_table):
        assert len(reference_table) == 480

    def test_single_row(self):
        table = parse_dataset(make_csv([{}]))
        assert len(table) == 1
        assert table.records[0].gender == "M"
        assert table.records[0].raised_hands == 15

    def test_order_preserved(self):
        text = make_csv([{"raisedhands": str(i)} for i in (5, 3, 9)])
        table = parse_dataset(text)
        assert [r.raised_hands for r in table.records] == [5, 3, 9]

    def test_non_integer_count_names_row_and_column(self):
        with pytest.raises(DatasetFormatError, match=r"row 1.*raisedhands"):
            parse_dataset(make_csv([{"raisedhands": "abc"}]))

    def test_float_count_rejected(self):
        with pytest.raises(DatasetFormatError, match="integer"):
            parse_dataset(make_csv([{"Discussion": "15.5"}]))

    def test_out_of_range_count_rejected(self):
        with pytest.raises(DatasetFormatError, match=r"row 2.*VisITedResources"):
            parse_dataset(make_csv([{}, {"VisITedResources": "101"}]))
        with pytest.raises(DatasetFormatError, match="outside"):
            parse_dataset(make_csv([{"raisedhands": "-1"}]))

    def test_header_mismatch_name(self):
        text = make_csv([{}]).replace("NationalITy", "Nationality")
        with pytest.raises(DatasetFormatError, match="header mismatch"):
            parse_dataset(text)

    def test_header_mismatch_order(self):
        header = list(CANONICAL_HEADER)
        header[0], header[1] = header[1], header[0]
        lines = make_csv([{}]).splitlines()
        lines[0] = ",".join(header)
        with pytest.raises(DatasetFormatError, match="header mismatch"):
            parse_dataset("\n".join(lines))

    def test_wrong_field_count_on_row(self):
        text = make_csv([{}]) + "a,b,c\n"
        with pytest.raises(DatasetFormatError, match=r"row 2.*17 fields"):
            parse_dataset(text)

    def test_empty_input(self):
        with pytest.raises(DatasetFormatError):
            parse_dataset("")
        with pytest.raises(DatasetFormatError, match="no data rows"):
            parse_dataset(",".join(CANONICAL_HEADER) + "\n")

    def test_values_whitespace_trimmed(self):
        text = make_csv([{"gender": " M ", "raisedhands": " 15 "}])
        table = parse_dataset(text)
        assert table.records[0].gender == "M"
        assert table.records[0].raised_hands == 15

    def test_label_free_variant(self):
        text = make_csv([{}], header=CANONICAL_HEADER[:-1])
        with pytest.raises(DatasetFormatError):
            parse_dataset(text)
        table = parse_dataset(text, require_label=False)
        assert table.records[0].class_label is None

    def test_roundtrip_identity(self, reference_table):
        again = parse_dataset(serialize_dataset(reference_table))
        assert again.records == reference_table.records


class TestValidate:
    def test_reference_is_clean(self, reference_table):
        assert validate(reference_table).ok

    def test_unknown_class_label(self):
        report = validate(make_table([make_record(Class="X")]))
        assert len(report.violations) == 1
        v = report.violations[0]
        assert (v.row, v.column) == (1, "Class")
        assert "X" in v.message

    def test_out_of_range_count(self):
        report = validate(make_table([make_record(raisedhands="101")]))
        assert len(report.violations) == 1
        assert report.violations[0].column == "raisedhands"

    def test_empty_field(self):
        report = validate(make_table([make_record(Topic="")]))
        assert [v.column for v in report.violations] == ["Topic"]

    def test_multiple_violations_listed(self):
        table = make_table(
            [make_record(Topic="", Class="Q"), make_record(Semester="")]
        )
        report = validate(table)
        assert len(report.violations) == 3
        assert {v.row for v in report.violations} == {1, 2}


class TestSummarize:
    def test_gender_counts(self, reference_table):
        counts = summarize(reference_table).categorical_counts["gender"]
        assert counts == {"M": 305, "F": 175}

    def test_semester_counts(self, reference_table):
        counts = summarize(reference_table).categorical_counts["Semester"]
        assert counts == {"F": 245, "S": 235}

    def test_class_counts_match_direct_file_count(self, reference_table):
        # independent oracle: count the Class column straight off the file
        with open(DATA_PATH, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            direct: dict[str, int] = {}
            for row in reader:
                direct[row["Class"]] = direct.get(row["Class"], 0) + 1
        counts = summarize(reference_table).categorical_counts["Class"]
        assert counts == direct
        assert counts["M"] > counts["H"] > counts["L"]

    def test_counts_sum_to_row_count_for_every_column(self, reference_table):
        summary = summarize(reference_table)
        for column in CATEGORICAL_COLUMNS:
            assert sum(summary.categorical_counts[column].values()) == 480

    def test_numeric_stats(self):
        table = make_table(
            [make_record(raisedhands="10"), make_record(raisedhands="20")]
        )
        stats = summarize(table).numeric_stats["raisedhands"]
        assert stats == {"min": 10.0, "max": 20.0, "mean": 15.0}

    def test_text_rendering_orders_by_count(self, reference_table):
        text = summarize(reference_table).to_text()
        assert "gender: M=305 F=175" in text
        assert text.startswith("rows: 480")

    def test_json_rendering(self, reference_table):
        doc = summarize(reference_table).to_json_dict()
        assert doc["rows"] == 480
        assert doc["columns"]["Semester"] == {"F": 245, "S": 235}
        assert set(doc["numeric"]) == {
            "raisedhands", "VisITedResources", "AnnouncementsView", "Discussion"
        }
