import numpy as np
import pytest

from farsiocr.dataset import split
from farsiocr.experiment import (
    REFERENCE_TEST_ACCURACY,
    SweepRow,
    SweepSpec,
    render_table,
    rows_to_csv,
    run_sweep,
)
from farsiocr.synth import generate_corpus
from farsiocr.train import TrainConfig


@pytest.fixture(scope="module")
def small_corpus():
    ds = generate_corpus(2, seed=5)
    return split(ds, 0.5, seed=0)


def quick_cfg():
    return TrainConfig(max_epochs=20, mse_threshold=1e-9, seed=0)


class TestSweepSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SweepSpec(hidden_counts=())
        with pytest.raises(ValueError):
            SweepSpec(seeds=())
        with pytest.raises(ValueError):
            SweepSpec(input_size=500)

    def test_row_accuracy_bounds(self):
        with pytest.raises(ValueError):
            SweepRow(hidden=4, epochs_run=1, wall_time=0.0, train_accuracy=101.0, test_accuracy=0.0)


class TestRunSweep:
    def test_single_cell_single_row(self, small_corpus):
        train_set, test_set = small_corpus
        spec = SweepSpec(hidden_counts=(6,), cfg=quick_cfg(), seeds=(0,))
        rows = run_sweep(spec, train_set, test_set)
        assert len(rows) == 1
        assert rows[0].hidden == 6
        assert rows[0].epochs_run == 20.0

    def test_reproducible_accuracies(self, small_corpus):
        train_set, test_set = small_corpus
        spec = SweepSpec(hidden_counts=(4, 8), cfg=quick_cfg(), seeds=(0, 1))
        a = run_sweep(spec, train_set, test_set)
        b = run_sweep(spec, train_set, test_set)
        for ra, rb in zip(a, b):
            assert ra.train_accuracy == rb.train_accuracy
            assert ra.test_accuracy == rb.test_accuracy
            assert ra.epochs_run == rb.epochs_run

    def test_empty_sets_rejected(self, small_corpus):
        train_set, _ = small_corpus
        from farsiocr.dataset import Dataset

        spec = SweepSpec(hidden_counts=(4,), cfg=quick_cfg(), seeds=(0,))
        with pytest.raises(ValueError):
            run_sweep(spec, Dataset([]), train_set)

    def test_pooled_input_size(self, small_corpus):
        train_set, test_set = small_corpus
        spec = SweepSpec(hidden_counts=(4,), cfg=quick_cfg(), input_size=100, seeds=(0,))
        rows = run_sweep(spec, train_set, test_set)
        assert 0.0 <= rows[0].test_accuracy <= 100.0


class TestRendering:
    def _rows(self):
        return [
            SweepRow(hidden=12, epochs_run=200.0, wall_time=1.5, train_accuracy=100.0, test_accuracy=52.5),
            SweepRow(hidden=24, epochs_run=200.0, wall_time=2.5, train_accuracy=100.0, test_accuracy=58.1),
        ]

    def test_csv_format(self):
        text = rows_to_csv(self._rows())
        lines = text.strip().splitlines()
        assert lines[0] == "hidden,epochs,seconds,train_acc,test_acc"
        assert lines[1].startswith("12,200.0,")
        assert len(lines) == 3

    def test_table_includes_reference_values(self):
        text = render_table(self._rows(), input_size=900)
        assert "30x30" in text
        assert "12" in text and "24" in text
        # the published reference accuracies appear as a side column
        assert "100 / 80" in text
        assert "100 / 85" in text

    def test_reference_targets(self):
        assert REFERENCE_TEST_ACCURACY == {12: 80.0, 24: 85.0, 36: 80.0}
