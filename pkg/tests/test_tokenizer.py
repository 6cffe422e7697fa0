"""
Tests for component tokenization and masking plans
"""
import numpy as np
import pytest

from src.entities.componentSequence import ComponentSequence, MaskPlan
from src.entities.config import ChangeSpaceConfig
from src.entities.enums import SegmentationMode
from src.entities.segmentBoundaries import SegmentBoundaries
from src.entities.timeSeries import TimeSeries
from src.exceptions import MaskIndexError, PartitionMismatchError, SegmentTooLongError
from src.tokenizer import service


class TestTokenize:
    def test_pads_short_components(self):
        series = TimeSeries(values=np.arange(1.0, 11.0))
        sequence = service.tokenize(series, SegmentBoundaries(cuts=(4, 7), length=10), 4)
        assert sequence.true_lengths == (4, 3, 3)
        assert sequence.tokens.tolist() == [[1, 2, 3, 4], [5, 6, 7, 0], [8, 9, 10, 0]]

    def test_single_component_is_the_series(self):
        series = TimeSeries(values=[3.0, 1.0, 2.0])
        sequence = service.tokenize(series, SegmentBoundaries(cuts=(), length=3), 3)
        assert sequence.K == 1
        assert sequence.tokens[0].tolist() == [3.0, 1.0, 2.0]

    def test_equal_components_need_no_padding(self):
        series = TimeSeries(values=np.arange(1.0, 10.0))
        sequence = service.tokenize(series, SegmentBoundaries(cuts=(3, 6), length=9), 3)
        assert sequence.tokens.tolist() == [[1, 2, 3], [4, 5, 6], [7, 8, 9]]

    def test_concatenation_restores_series(self, random_series):
        series = random_series(50, seed=3)
        sequence = service.tokenize(series, SegmentBoundaries(cuts=(5, 21, 40), length=50), 20)
        assert np.array_equal(sequence.concatenate(), series.values)
        assert sequence.L == 20

    def test_segment_longer_than_padding(self):
        series = TimeSeries(values=np.arange(10.0))
        with pytest.raises(SegmentTooLongError):
            service.tokenize(series, SegmentBoundaries(cuts=(6,), length=10), 5)

    def test_boundaries_for_another_length(self):
        with pytest.raises(PartitionMismatchError):
            service.tokenize(TimeSeries(values=np.arange(10.0)), SegmentBoundaries(cuts=(5,), length=12), 7)


class TestDatasetTokenization:
    def test_padded_length_is_dataset_maximum(self):
        boundaries = [SegmentBoundaries(cuts=(3,), length=10), SegmentBoundaries(cuts=(2, 4), length=6)]
        assert service.padded_length(boundaries) == 7

    def test_uniform_mode(self, random_series):
        series = [random_series(30, seed=i) for i in range(3)]
        boundaries = service.segment_dataset(series, 3, ChangeSpaceConfig(), SegmentationMode.UNIFORM)
        assert all(b.cuts == (10, 20) for b in boundaries)
        tokens = service.tokenize_dataset(series, boundaries, service.padded_length(boundaries))
        assert [t.tokens.shape for t in tokens] == [(3, 10)] * 3

    def test_change_space_mode_keeps_k(self, random_series):
        series = [random_series(120, seed=i) for i in range(3)]
        boundaries = service.segment_dataset(series, 4, ChangeSpaceConfig())
        assert all(b.count == 4 for b in boundaries)


class TestPlanMask:
    """Roughly 15% of the components, interior ones once K >= 3"""

    def test_small_k_masks_one(self):
        assert len(service.plan_mask(10, 0.15, 0)) == 1

    def test_twenty_components(self):
        plan = service.plan_mask(20, 0.15, 3)
        assert len(plan) == 3
        assert all(1 <= i <= 18 for i in plan.masked_indices)

    def test_two_components_mask_the_first(self):
        for seed in range(5):
            assert service.plan_mask(2, 0.5, seed).masked_indices == (0,)

    def test_properties_over_many_seeds(self):
        for seed in range(1000):
            k = 2 + seed % 30
            plan = service.plan_mask(k, 0.15, seed)
            assert 1 <= len(plan) < k
            assert len(set(plan.masked_indices)) == len(plan)
            if k >= 3:
                assert all(0 < i < k - 1 for i in plan.masked_indices)

    def test_every_interior_index_gets_masked(self):
        seen = set()
        for seed in range(1000):
            seen.update(service.plan_mask(20, 0.15, seed).masked_indices)
        assert seen == set(range(1, 19))

    def test_same_seed_same_plan(self):
        assert service.plan_mask(30, 0.2, [4, 1, 7]) == service.plan_mask(30, 0.2, [4, 1, 7])

    def test_high_ratio_is_capped_by_interior(self):
        plan = service.plan_mask(4, 0.9, 1)
        assert plan.masked_indices == (1, 2)

    def test_rejects_single_component(self):
        with pytest.raises(ValueError):
            service.plan_mask(1, 0.15, 0)


class TestApplyMask:
    def make_sequence(self, k: int) -> ComponentSequence:
        tokens = np.arange(1.0, 3 * k + 1).reshape(k, 3)
        return ComponentSequence(tokens=tokens, true_lengths=(3,) * k)

    def test_zeroes_planned_tokens_only(self):
        sequence = self.make_sequence(3)
        masked = service.apply_mask(sequence, MaskPlan(masked_indices=(1,)))
        assert masked.tokens[1].tolist() == [0.0, 0.0, 0.0]
        assert np.array_equal(masked.tokens[[0, 2]], sequence.tokens[[0, 2]])
        assert masked.true_lengths == sequence.true_lengths

    def test_several_positions(self):
        masked = service.apply_mask(self.make_sequence(5), MaskPlan(masked_indices=(1, 3)))
        zeroed = [i for i in range(5) if not masked.tokens[i].any()]
        assert zeroed == [1, 3]

    def test_zero_token_is_unchanged(self):
        sequence = ComponentSequence(tokens=[[1.0, 2.0], [0.0, 0.0], [3.0, 4.0]], true_lengths=(2, 2, 2))
        masked = service.apply_mask(sequence, MaskPlan(masked_indices=(1,)))
        assert np.array_equal(masked.tokens, sequence.tokens)

    def test_targets_keep_original_values(self):
        sequence = self.make_sequence(4)
        targets = service.mask_targets(sequence, MaskPlan(masked_indices=(2,)))
        assert targets.tolist() == [[7.0, 8.0, 9.0]]

    def test_out_of_range_index(self):
        with pytest.raises(MaskIndexError):
            service.apply_mask(self.make_sequence(3), MaskPlan(masked_indices=(3,)))
