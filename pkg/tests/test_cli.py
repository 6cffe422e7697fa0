"""
Tests for the command-line entry point
"""
from pathlib import Path

import pytest

from src.cli.main import main
from src.cli.report import parse_report
from src.entities.timeSeries import TimeSeries
from src.evaluation.service import global_mean_threshold_baseline
from src.exceptions import NonFiniteGradientError
from src.ingestion.service import write_archive_file, write_boundary_file
from src.synthetic.service import generate, make_classification_suite, write_suite

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

SMALL_TRAIN_CONFIG = """
hidden_size = 4
dense_size = 4
max_epochs = 3
patience = 1
phase_boundary = 1
batch_size = 8
segment_count = 3
scale_min = 10
scale_max = 50
scale_step = 10
penalty_weight = 0.0
saliency_window = 150
"""


@pytest.fixture
def two_segment_files(tmp_path, two_segment_spec):
    series, cuts = [], []
    for seed in range(20):
        s, boundaries = generate(two_segment_spec(seed=seed))
        series.append(TimeSeries(values=s.values, label=0, id=f"two:{seed}"))
        cuts.append(boundaries.cuts)
    data = write_archive_file(series, tmp_path / "two.tsv")
    gt = write_boundary_file(cuts, [0] * len(cuts), tmp_path / "two_gt.tsv")
    return data, gt


@pytest.fixture
def small_suite(tmp_path):
    paths = write_suite(make_classification_suite(seed=1, size=10, length=150, jitter=5), tmp_path / "suite")
    config = tmp_path / "small.cfg"
    config.write_text(SMALL_TRAIN_CONFIG)
    return paths, config


def read_report(path) -> dict[str, dict[str, str]]:
    return parse_report(path.read_text())


class TestSegment:
    def test_covering_against_ground_truth(self, tmp_path, two_segment_files):
        data, gt = two_segment_files
        out = tmp_path / "report.txt"
        code = main(
            ["segment", "--input", str(data), "--gt", str(gt), "--k", "2",
             "--config", str(CONFIG_DIR / "synthetic.cfg"), "--out", str(out)]
        )
        assert code == 0
        report = read_report(out)
        assert report[""]["schema_version"] == "1"
        assert report["results"]["series_count"] == "20"
        assert float(report["results"]["covering_mean"]) >= 0.9

    def test_without_ground_truth(self, tmp_path, two_segment_files):
        data, _ = two_segment_files
        out = tmp_path / "report.txt"
        assert main(["segment", "--input", str(data), "--k", "2", "--out", str(out)]) == 0
        results = read_report(out)["results"]
        assert "covering_mean" not in results
        assert results["segment_count"] == "2"

    def test_csv_table(self, two_segment_files, capsys):
        data, gt = two_segment_files
        assert main(["segment", "--input", str(data), "--gt", str(gt), "--k", "2", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "id,length,segments,cuts,covering"
        assert len(lines) == 21

    def test_malformed_config(self, tmp_path, two_segment_files):
        data, _ = two_segment_files
        config = tmp_path / "bad.cfg"
        config.write_text("hidden_size 8\n")
        out = tmp_path / "report.txt"
        assert main(["segment", "--input", str(data), "--config", str(config), "--out", str(out)]) == 3
        assert not out.exists()

    def test_missing_input(self, tmp_path, capsys):
        assert main(["segment", "--input", str(tmp_path / "absent.tsv")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_ground_truth_line_count(self, tmp_path, two_segment_files):
        data, _ = two_segment_files
        gt = write_boundary_file([(200,)], [0], tmp_path / "short_gt.tsv")
        assert main(["segment", "--input", str(data), "--gt", str(gt), "--k", "2"]) == 2

    def test_input_that_is_not_utf8(self, tmp_path, capsys):
        data = tmp_path / "latin.tsv"
        data.write_bytes(b"1\t0.5\t\xff\xfe\n")
        assert main(["segment", "--input", str(data), "--k", "2"]) == 2
        assert "not UTF-8" in capsys.readouterr().err

    def test_ground_truth_that_is_not_utf8(self, tmp_path, two_segment_files):
        data, _ = two_segment_files
        gt = tmp_path / "latin_gt.tsv"
        gt.write_bytes(b"0\t200\xe9\n")
        assert main(["segment", "--input", str(data), "--gt", str(gt), "--k", "2"]) == 2

    def test_config_that_is_not_utf8(self, tmp_path, two_segment_files, capsys):
        data, _ = two_segment_files
        config = tmp_path / "latin.cfg"
        config.write_bytes(b"# r\xe9glages\nhidden_size = 8\n")
        assert main(["segment", "--input", str(data), "--config", str(config)]) == 3
        assert "not UTF-8" in capsys.readouterr().err


class TestBench:
    def run(self, tmp_path, length: int) -> dict[str, str]:
        out = tmp_path / f"bench_{length}.txt"
        assert main(["bench", "--length", str(length), "--repetitions", "3", "--out", str(out)]) == 0
        return read_report(out)["results"]

    def test_reports_timings(self, tmp_path):
        results = self.run(tmp_path, 100)
        assert results["length"] == "100"
        assert float(results["median_ms"]) >= 0

    def test_longer_series_take_longer(self, tmp_path):
        short = float(self.run(tmp_path, 100)["median_ms"])
        long = float(self.run(tmp_path, 1000)["median_ms"])
        assert short < long

    def test_series_shorter_than_every_scale(self):
        assert main(["bench", "--length", "15", "--repetitions", "1"]) == 2

    def test_thousand_points_within_target(self, tmp_path):
        results = self.run(tmp_path, 1000)
        assert results["scale_count"] == "50"
        assert results["within_target"] == "true"

    @pytest.mark.parametrize("argv", [["--length", "100", "--repetitions", "0"], ["--length", "-5"]])
    def test_rejects_bad_sizes(self, argv, capsys):
        assert main(["bench", *argv]) == 2
        assert "error:" in capsys.readouterr().err


class TestTrain:
    def train_args(self, paths, config, out, *extra) -> list[str]:
        return [
            "train", "--train", str(paths["train"]), "--test", str(paths["test"]),
            "--config", str(config), "--out", str(out), *extra,
        ]

    def test_small_run(self, tmp_path, small_suite):
        paths, config = small_suite
        out = tmp_path / "train.txt"
        checkpoint = tmp_path / "model.json"
        assert main(self.train_args(paths, config, out, "--checkpoint", str(checkpoint))) == 0
        results = read_report(out)["results"]
        assert results["segment_count"] == "3"
        assert 0.0 <= float(results["test_accuracy"]) <= 1.0
        assert checkpoint.exists()

    def test_reruns_are_identical(self, tmp_path, small_suite):
        paths, config = small_suite
        reports = []
        for name in ("first.txt", "second.txt"):
            out = tmp_path / name
            assert main(self.train_args(paths, config, out)) == 0
            reports.append(out.read_text().split("[provenance]")[0])
        assert reports[0] == reports[1]

    def test_reconstruction_only_adds_probe(self, tmp_path, small_suite):
        paths, config = small_suite
        out = tmp_path / "probe.txt"
        assert main(self.train_args(paths, config, out, "--lambda2", "0")) == 0
        report = read_report(out)
        assert report["probe"]["method"] == "nearest_centroid"
        assert report["config"]["lambda2"] == "0.0"

    def test_divergence_exit_code(self, tmp_path, small_suite, monkeypatch):
        def diverge(*args, **kwargs):
            raise NonFiniteGradientError(3, "Wf")

        monkeypatch.setattr("src.cli.commands.train", diverge)
        paths, config = small_suite
        assert main(self.train_args(paths, config, tmp_path / "never.txt")) == 4


@pytest.mark.slow
def test_synthetic_suite_end_to_end(tmp_path):
    suite = make_classification_suite(seed=0)
    paths = write_suite(suite, tmp_path / "suite")
    out = tmp_path / "e2e.txt"
    assert main(["train", "--train", str(paths["train"]), "--test", str(paths["test"]),
                 "--config", str(CONFIG_DIR / "synthetic.cfg"), "--out", str(out)]) == 0
    results = read_report(out)["results"]
    assert int(results["segment_count"]) >= 2
    assert int(results["epochs_run"]) <= 250
    assert float(results["test_accuracy"]) >= 0.95
    assert global_mean_threshold_baseline(suite.train, suite.test) <= 0.6
