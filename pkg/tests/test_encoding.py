import json

import numpy as np
import pytest

from edumlp import (
    SchemaEncoder,
    decode_label,
    default_schema,
    design_matrix_to_csv,
    encode,
    encode_features,
    encode_label,
    fit_schema,
    parse_dataset,
)
from edumlp.encoding import FeatureKind, load_schema_file, schema_from_json_dict
from edumlp.errors import EncodingError

from conftest import make_csv, make_record, make_table


class TestDefaultSchema:
    def test_kind_partition(self):
        schema = default_schema()
        by_kind = {}
        for spec in schema.columns:
            by_kind.setdefault(spec.kind, []).append(spec.name)
        assert len(by_kind[FeatureKind.BINARY]) == 6
        assert len(by_kind[FeatureKind.ORDINAL]) == 2
        assert len(by_kind[FeatureKind.NUMERIC]) == 4
        assert len(by_kind[FeatureKind.NOMINAL]) == 4
        assert by_kind[FeatureKind.LABEL] == ["Class"]
        assert len(schema.columns) == 17

    def test_stage_order_covers_reference_values(self, reference_table):
        order = default_schema().column("StageID").order
        distinct = {r.stage_id for r in reference_table.records}
        assert len(distinct) == 3
        assert distinct <= set(order)

    def test_class_order(self):
        assert default_schema().column("Class").order == ("L", "M", "H")

    def test_gender_positive_is_male(self):
        assert default_schema().column("gender").positive_value == "M"


class TestFitSchema:
    def test_reference_nationality_vocab_14(self, reference_encoder):
        vocab = reference_encoder.fitted_schema_.nominal_vocabs["NationalITy"]
        assert len(vocab) == 14
        assert list(vocab) == sorted(vocab)

    def test_reference_width_55(self, reference_encoder):
        assert reference_encoder.fitted_schema_.width == 55

    def test_width_law(self, reference_encoder):
        fitted = reference_encoder.fitted_schema_
        nominal_total = sum(len(v) for v in fitted.nominal_vocabs.values())
        assert nominal_total == 43
        assert fitted.width == 6 + 2 + 4 + nominal_total

    def test_binary_with_three_values_rejected(self):
        table = make_table([
            make_record(Semester="F"),
            make_record(
                Semester="S", gender="F", Relation="Mum",
                ParentAnsweringSurvey="No", ParentschoolSatisfaction="Bad",
                StudentAbsenceDays="Above-7",
            ),
            make_record(Semester="T"),
        ])
        with pytest.raises(EncodingError, match="Semester.*3 distinct"):
            fit_schema(table, default_schema())

    def test_binary_with_one_value_rejected(self):
        table = make_table([make_record(), make_record()])
        with pytest.raises(EncodingError, match="distinct"):
            fit_schema(table, default_schema())

    def test_declared_positive_absent_rejected(self):
        table = make_table([
            make_record(gender="A"),
            make_record(
                gender="B", Semester="S", Relation="Mum",
                ParentAnsweringSurvey="No", ParentschoolSatisfaction="Bad",
                StudentAbsenceDays="Above-7",
            ),
        ])
        with pytest.raises(EncodingError, match="gender.*positive"):
            fit_schema(table, default_schema())

    def test_ordinal_value_outside_declared_order(self):
        table = _two_valued(
            make_table([make_record(StageID="kindergarten"),
                        make_record(StageID="lowerlevel")])
        )
        with pytest.raises(EncodingError, match="StageID.*kindergarten"):
            fit_schema(table, default_schema())

    def test_feature_names_follow_schema_order(self, reference_encoder):
        names = reference_encoder.fitted_schema_.feature_names
        assert names[0] == "gender"
        assert names[1].startswith("NationalITy_")
        assert names[-1] == "StudentAbsenceDays"


def _two_valued(table):
    """Pad a table so every binary column sees two values except the ones
    under test."""
    filler = [
        make_record(
            gender="F", Semester="S", Relation="Mum",
            ParentAnsweringSurvey="No", ParentschoolSatisfaction="Bad",
            StudentAbsenceDays="Above-7",
        ),
        make_record(),
    ]
    return make_table(list(table.records) + filler)


def _fitted_pair():
    """Small labeled table covering two values of every binary column."""
    records = [
        make_record(),
        make_record(
            gender="F", Semester="S", Relation="Mum",
            ParentAnsweringSurvey="No", ParentschoolSatisfaction="Bad",
            StudentAbsenceDays="Above-7", SectionID="B", Topic="Math",
            NationalITy="Jordan", PlaceofBirth="USA", StageID="MiddleSchool",
            GradeID="G-07", Class="H", raisedhands="80",
        ),
        make_record(Class="L", SectionID="C"),
    ]
    table = make_table(records)
    fitted = fit_schema(table, default_schema())
    return table, fitted


class TestEncode:
    def test_reference_shape_480x55_plus_labels(self, reference_matrix):
        assert reference_matrix.features.shape == (480, 55)
        assert reference_matrix.labels.shape == (480,)
        assert len(reference_matrix.column_names) == 55

    def test_numeric_passthrough(self):
        table, fitted = _fitted_pair()
        matrix = encode(table, fitted)
        col = list(fitted.feature_names).index("raisedhands")
        assert matrix.features[0, col] == 15.0
        assert matrix.features[1, col] == 80.0

    def test_one_hot_block_three_values(self):
        table, fitted = _fitted_pair()
        matrix = encode(table, fitted)
        assert fitted.nominal_vocabs["SectionID"] == ("A", "B", "C")
        start = list(fitted.feature_names).index("SectionID_A")
        # row 1 has SectionID=B, the middle vocabulary entry
        assert matrix.features[1, start:start + 3].tolist() == [0.0, 1.0, 0.0]

    def test_one_hot_rows_sum_to_one(self, reference_encoder, reference_matrix):
        fitted = reference_encoder.fitted_schema_
        names = list(fitted.feature_names)
        for column, vocab in fitted.nominal_vocabs.items():
            start = names.index(f"{column}_{vocab[0]}")
            block = reference_matrix.features[:, start:start + len(vocab)]
            assert np.all(block.sum(axis=1) == 1.0)
            assert set(np.unique(block)) <= {0.0, 1.0}

    def test_binary_columns_are_01(self, reference_encoder, reference_matrix):
        fitted = reference_encoder.fitted_schema_
        names = list(fitted.feature_names)
        for column in fitted.binary_values:
            values = np.unique(reference_matrix.features[:, names.index(column)])
            assert set(values) == {0.0, 1.0}

    def test_gender_male_maps_to_one(self, reference_encoder, reference_matrix):
        col = list(reference_encoder.fitted_schema_.feature_names).index("gender")
        males = reference_matrix.features[:, col].sum()
        assert males == 305.0

    def test_later_value_maps_to_one_without_declared_positive(self):
        table, fitted = _fitted_pair()
        # Semester has values F and S; S is lexicographically later
        assert fitted.binary_values["Semester"] == ("F", "S")

    def test_ordinal_rank_encoding(self):
        table, fitted = _fitted_pair()
        matrix = encode(table, fitted)
        names = list(fitted.feature_names)
        assert matrix.features[0, names.index("StageID")] == 0.0
        assert matrix.features[1, names.index("StageID")] == 1.0
        # G-04 is the 4th entry of the declared G-01..G-12 order
        assert matrix.features[0, names.index("GradeID")] == 3.0

    def test_deterministic(self, reference_table):
        a = SchemaEncoder().fit(reference_table).encode_table(reference_table)
        b = SchemaEncoder().fit(reference_table).encode_table(reference_table)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.labels, b.labels)
        assert a.column_names == b.column_names

    def test_unseen_nominal_value_raises(self):
        table, fitted = _fitted_pair()
        probe = make_table([make_record(Topic="Astronomy")])
        with pytest.raises(EncodingError, match="Topic.*Astronomy"):
            encode_features(probe, fitted)

    def test_unseen_binary_value_raises(self):
        table, fitted = _fitted_pair()
        probe = make_table([make_record(Semester="T")])
        with pytest.raises(EncodingError, match="Semester"):
            encode_features(probe, fitted)

    def test_labels_encode_low_mid_high(self):
        table, fitted = _fitted_pair()
        matrix = encode(table, fitted)
        assert matrix.labels.tolist() == [1, 2, 0]  # M, H, L

    def test_unlabeled_rows_rejected_by_encode(self):
        table, fitted = _fitted_pair()
        probe = make_table([make_record(Class=None)])
        with pytest.raises(EncodingError, match="label"):
            encode(probe, fitted)
        # but the feature-only path accepts them
        assert encode_features(probe, fitted).shape == (1, fitted.width)


class TestLabelCodec:
    def test_bijection(self):
        assert encode_label("L") == 0
        assert encode_label("M") == 1
        assert encode_label("H") == 2
        for label in ("L", "M", "H"):
            assert decode_label(encode_label(label)) == label

    def test_unknown_label(self):
        with pytest.raises(EncodingError):
            encode_label("medium")

    def test_out_of_range_index(self):
        with pytest.raises(EncodingError):
            decode_label(3)
        with pytest.raises(EncodingError):
            decode_label(-1)


class TestSchemaFile:
    def _doc(self):
        doc = {}
        for spec in default_schema().columns:
            entry = {"kind": spec.kind.value}
            if spec.positive_value is not None:
                entry["positive_value"] = spec.positive_value
            if spec.order is not None:
                entry["order"] = list(spec.order)
            doc[spec.name] = entry
        return doc

    def test_roundtrip_equals_default(self):
        assert schema_from_json_dict(self._doc()) == default_schema()

    def test_positive_value_override(self, tmp_path):
        doc = self._doc()
        doc["Semester"]["positive_value"] = "F"
        path = tmp_path / "schema.json"
        path.write_text(json.dumps(doc))
        schema = load_schema_file(str(path))
        table, _ = _fitted_pair()
        fitted = fit_schema(table, schema)
        assert fitted.binary_values["Semester"] == ("S", "F")

    def test_missing_column_rejected(self):
        doc = self._doc()
        del doc["Topic"]
        with pytest.raises(ValueError, match="missing"):
            schema_from_json_dict(doc)

    def test_unknown_column_rejected(self):
        doc = self._doc()
        doc["Hobby"] = {"kind": "nominal"}
        with pytest.raises(ValueError, match="unknown"):
            schema_from_json_dict(doc)

    def test_bad_kind_rejected(self):
        doc = self._doc()
        doc["Topic"]["kind"] = "fancy"
        with pytest.raises(ValueError, match="kind"):
            schema_from_json_dict(doc)

    def test_ordinal_without_order_rejected(self):
        doc = self._doc()
        del doc["StageID"]["order"]
        with pytest.raises(ValueError, match="order"):
            schema_from_json_dict(doc)


class TestMatrixCsv:
    def test_header_and_rows(self, reference_matrix):
        text = design_matrix_to_csv(reference_matrix)
        lines = text.strip().split("\n")
        header = lines[0].split(",")
        assert len(header) == 56
        assert header[-1] == "Class"
        assert len(lines) == 481

    def test_values_roundtrip(self):
        table, fitted = _fitted_pair()
        matrix = encode(table, fitted)
        lines = design_matrix_to_csv(matrix).strip().split("\n")
        first = lines[1].split(",")
        parsed = np.array([float(v) for v in first[:-1]])
        assert np.array_equal(parsed, matrix.features[0])
        assert int(first[-1]) == matrix.labels[0]


class TestSchemaEncoderApi:
    def test_get_params_roundtrip(self):
        encoder = SchemaEncoder()
        params = encoder.get_params()
        assert params == {"schema": None}
        encoder.set_params(schema=default_schema())
        assert encoder.schema is not None

    def test_transform_before_fit_raises(self, reference_table):
        with pytest.raises(RuntimeError, match="fit"):
            SchemaEncoder().transform(reference_table)

    def test_fit_transform_matches_encode(self, reference_table):
        encoder = SchemaEncoder()
        X = encoder.fit_transform(reference_table)
        assert np.array_equal(
            X, encoder.encode_table(reference_table).features
        )

    def test_feature_names_out(self, reference_encoder):
        names = reference_encoder.get_feature_names_out()
        assert names.shape == (55,)
        assert names[0] == "gender"
