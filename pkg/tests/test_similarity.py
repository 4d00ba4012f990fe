import math

import numpy as np
import pytest

from outcrop import compressor, imagecore, similarity
from outcrop.errors import DegenerateImage, HeightMismatch
from outcrop.imagecore import ImageBuffer
from outcrop.similarity import (
    NOVEL,
    SIMILAR,
    NoveltyThreshold,
    classify,
    compare,
    d_sim_raw,
    normalize,
    self_baseline,
)

from conftest import solid


class TestDSimRaw:
    def test_self_comparison_large_positive(self, stripes64):
        raw = d_sim_raw(stripes64, stripes64)
        own = compressor.compressed_size(imagecore.serialize(stripes64)).compressed_len
        assert raw > 0
        assert raw > 0.5 * own

    def test_noise_scores_below_self(self, stripes64, noise64):
        assert d_sim_raw(stripes64, noise64) < d_sim_raw(stripes64, stripes64)

    def test_1x1_degenerate_size_regime(self):
        a, b = solid(1, 1, (10, 10, 10)), solid(1, 1, (200, 200, 200))
        raw = d_sim_raw(a, b)
        assert abs(raw) < 32  # overhead-dominated; may be <= 0

    def test_height_mismatch_propagates(self):
        with pytest.raises(HeightMismatch):
            d_sim_raw(solid(4, 4, (0, 0, 0)), solid(4, 5, (0, 0, 0)))


class TestSelfBaseline:
    def test_constant_64x64_positive(self):
        # compressor oracle recorded 18: constant rasters collapse to runs,
        # so the baseline is positive but small
        img = solid(64, 64, (90, 90, 90))
        assert self_baseline(img) > 1

    def test_textured_64x64_large(self, stripes64):
        assert self_baseline(stripes64) > 1000

    def test_1x1_rejected(self):
        with pytest.raises(DegenerateImage):
            self_baseline(solid(1, 1, (128, 128, 128)))

    def test_deterministic(self, stripes64):
        assert self_baseline(stripes64) == self_baseline(stripes64)


class TestNormalize:
    def test_baseline_maps_to_100(self):
        assert normalize(2981, 2981) == 100.0

    def test_zero_clamps_to_0(self):
        assert normalize(0, 2981) == 0.0
        assert normalize(-500, 2981) == 0.0

    def test_hand_computed_midpoint(self):
        # 100 * ln(55) / ln(2981), evaluated by hand
        assert normalize(55, 2981) == pytest.approx(50.0916, abs=1e-3)

    def test_above_baseline_clamps_to_100(self):
        assert normalize(5000, 2981) == 100.0

    def test_monotone_in_raw(self):
        scores = [normalize(raw, 10000) for raw in range(-10, 10050, 97)]
        assert scores == sorted(scores)

    def test_total_no_nan_inf(self):
        for raw in (-(2**40), -1, 0, 1, 2, 7, 2**40):
            for baseline in (2, 3, 1000, 2**40):
                s = normalize(raw, baseline)
                assert math.isfinite(s)
                assert 0.0 <= s <= 100.0

    def test_baseline_must_exceed_one(self):
        with pytest.raises(DegenerateImage):
            normalize(10, 1)


class TestClassify:
    def test_just_below_is_novel(self):
        assert classify(39.99, NoveltyThreshold(40)) == NOVEL

    def test_equality_is_similar(self):
        assert classify(40.0, NoveltyThreshold(40)) == SIMILAR

    def test_reported_field_score_is_similar(self):
        assert classify(45.486, NoveltyThreshold(40)) == SIMILAR

    @pytest.mark.parametrize("value", [0, 100, -5, 150])
    def test_threshold_invariants(self, value):
        with pytest.raises(ValueError):
            NoveltyThreshold(value)


class TestCompare:
    def test_self_score_is_exactly_100(self, stripes64):
        assert compare(stripes64, stripes64).score == 100.0

    def test_ordering_against_noise(self, stripes64, noise64):
        vs_noise = compare(stripes64, noise64)
        vs_self = compare(stripes64, stripes64)
        assert vs_noise.score < vs_self.score
