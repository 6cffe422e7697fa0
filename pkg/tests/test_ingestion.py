"""
Tests for archive parsing, normalization and the train/validation split
"""
import numpy as np
import pytest

from src.entities.enums import Normalization
from src.entities.timeSeries import TimeSeries
from src.exceptions import EmptyFileError, MissingFileError, ParseError, TooFewSeriesError
from src.ingestion import service


class TestParseArchive:
    def test_tab_separated_line(self):
        archive = service.parse_archive_text("2\t0.1\t0.2\t0.3\n")
        (series,) = archive.series
        assert series.values.tolist() == [0.1, 0.2, 0.3]
        assert series.label == 0
        assert series.meta["raw_label"] == 2
        assert archive.label_map == {2: 0}

    def test_comma_separated_line(self):
        (series,) = service.parse_archive_text("1,0.5,0.5\n").series
        assert series.values.tolist() == [0.5, 0.5]

    def test_labels_in_first_appearance_order(self):
        archive = service.parse_archive_text("5\t1\t2\n-1\t3\t4\n5\t5\t6\n")
        assert archive.label_map == {5: 0, -1: 1}
        assert [s.label for s in archive.series] == [0, 1, 0]

    def test_float_label_and_blank_lines(self):
        archive = service.parse_archive_text("\n2.0\t1\t2\n\n")
        assert archive.label_map == {2: 0}
        assert archive.series[0].id == "archive:2"

    def test_non_numeric_label(self):
        with pytest.raises(ParseError) as e:
            service.parse_archive_text("x\t1.0\n")
        assert (e.value.line, e.value.column) == (1, 1)
        assert e.value.exit_code == 2

    def test_bad_sample_reports_column(self):
        with pytest.raises(ParseError) as e:
            service.parse_archive_text("1\t0.5\t0.5\n1\t0.5\tabc\n")
        assert (e.value.line, e.value.column) == (2, 3)

    def test_single_sample_series(self):
        with pytest.raises(ParseError):
            service.parse_archive_text("1\t0.5\n")

    def test_non_finite_sample(self):
        with pytest.raises(ParseError):
            service.parse_archive_text("1\t0.5\tnan\n")

    def test_ragged_lengths_are_flagged(self):
        assert service.parse_archive_text("1\t1\t2\t3\n2\t1\t2\n").ragged
        assert not service.parse_archive_text("1\t1\t2\n2\t1\t2\n").ragged

    def test_known_mapping_is_extended(self):
        archive = service.parse_archive_text("7\t1\t2\n9\t1\t2\n", label_map={7: 0, 8: 1})
        assert archive.label_map == {7: 0, 8: 1, 9: 2}
        assert [s.label for s in archive.series] == [0, 2]

    def test_empty_text(self):
        with pytest.raises(EmptyFileError):
            service.parse_archive_text("\n  \n")


class TestFiles:
    def test_write_then_read(self, tmp_path, random_series):
        series = [random_series(20, seed=i, label=i % 2) for i in range(4)]
        path = service.write_archive_file(series, tmp_path / "data.tsv", label_map={4: 0, 6: 1})
        loaded = service.read_archive(path)
        assert loaded.label_map == {4: 0, 6: 1}
        for original, parsed in zip(series, loaded.series):
            assert np.array_equal(original.values, parsed.values)
            assert original.label == parsed.label

    def test_parse_archive_file_returns_series(self, tmp_path):
        path = tmp_path / "small.csv"
        path.write_text("1,0,1,2\n")
        assert len(service.parse_archive_file(path)) == 1

    def test_missing_archive(self, tmp_path):
        with pytest.raises(MissingFileError):
            service.read_archive(tmp_path / "absent.tsv")

    def test_empty_archive(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("")
        with pytest.raises(EmptyFileError):
            service.read_archive(path)

    def test_boundary_file(self, tmp_path):
        path = service.write_boundary_file([(200,), (190, 410), ()], [0, 1, 0], tmp_path / "gt.tsv")
        assert service.parse_boundary_file(path) == [(200,), (190, 410), ()]

    def test_boundary_file_rejects_fractional_cut(self, tmp_path):
        path = tmp_path / "gt.tsv"
        path.write_text("0\t20.5\n")
        with pytest.raises(ParseError) as e:
            service.parse_boundary_file(path)
        assert e.value.column == 2


class TestNormalize:
    def test_z_normalize(self):
        result = service.z_normalize(TimeSeries(values=[1.0, 2.0, 3.0]))
        assert result.values == pytest.approx([-1.224744871, 0.0, 1.224744871])

    def test_constant_series_becomes_zeros(self):
        result = service.z_normalize(TimeSeries(values=[4.0, 4.0, 4.0]))
        assert result.values.tolist() == [0.0, 0.0, 0.0]

    def test_idempotent(self, random_series):
        once = service.z_normalize(random_series(50, seed=1))
        twice = service.z_normalize(once)
        assert np.allclose(once.values, twice.values, atol=1e-12)

    def test_keeps_label_and_id(self):
        series = TimeSeries(values=[1.0, 5.0], label=1, id="a")
        result = service.z_normalize(series)
        assert (result.label, result.id) == (1, "a")

    def test_none_mode_leaves_values(self, random_series):
        series = [random_series(10, seed=2)]
        assert service.normalize_all(series, Normalization.NONE)[0] is series[0]


class TestSplit:
    def labeled(self, count: int, classes: int = 2) -> list[TimeSeries]:
        return [TimeSeries(values=[float(i), 0.0], label=i % classes, id=str(i)) for i in range(count)]

    def test_validation_sizes(self):
        assert service.validation_size(100, 0.05) == 5
        assert service.validation_size(10, 0.05) == 1
        assert service.validation_size(2, 0.9) == 1

    def test_sizes_and_disjointness(self):
        train, val = service.train_val_split(self.labeled(100), 0.05, seed=3)
        assert (len(train), len(val)) == (95, 5)
        assert not {s.id for s in train} & {s.id for s in val}

    def test_same_seed_same_split(self):
        first = service.train_val_split(self.labeled(40), 0.1, seed=9)
        second = service.train_val_split(self.labeled(40), 0.1, seed=9)
        assert [s.id for s in first[1]] == [s.id for s in second[1]]

    def test_stratified(self):
        _, val = service.train_val_split(self.labeled(20), 0.1, seed=0)
        assert sorted(s.label for s in val) == [0, 1]

    def test_every_class_keeps_a_training_member(self):
        series = self.labeled(6, classes=3)
        for seed in range(20):
            train, _ = service.train_val_split(series, 0.5, seed=seed)
            assert {s.label for s in train} == {0, 1, 2}

    def test_too_few_series(self):
        with pytest.raises(TooFewSeriesError):
            service.train_val_split(self.labeled(1))
