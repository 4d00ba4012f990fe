import numpy as np
import pytest

from outcrop import texgen
from outcrop.evaluation import TruthLabel
from outcrop.texgen import TextureSpec, generate, generate_corpus

# Recorded once from the shipped default corpus; changes only if the
# generator's PRNG stream or family definitions change.
GOLDEN_DEFAULT_CORPUS_SHA256 = (
    "a4c08be86a9d3e510235a331dbdd7eae7733323525879d1991094e7cb9a9f08e"
)


class TestGenerate:
    def test_stripes_closed_form_without_jitter(self):
        img = generate(TextureSpec("stripes", (10, 20, 30), period=4, dims=(8, 8)))
        base = np.array((10, 20, 30), np.uint8)
        comp = np.array((245, 235, 225), np.uint8)
        for row in img.data:
            assert np.array_equal(row[:4], np.tile(base, (4, 1)))
            assert np.array_equal(row[4:], np.tile(comp, (4, 1)))

    def test_bit_identical_for_identical_specs(self):
        spec = TextureSpec("checker", (60, 160, 70), jitter=16, period=8, seed=99, dims=(32, 32))
        assert generate(spec).same_pixels(generate(spec))

    def test_two_seeds_differ_but_share_family_statistics(self):
        a = generate(TextureSpec("noise", (200, 180, 140), jitter=16, seed=1, dims=(64, 64)))
        b = generate(TextureSpec("noise", (200, 180, 140), jitter=16, seed=2, dims=(64, 64)))
        assert not a.same_pixels(b)
        for img in (a, b):
            mean = img.data.reshape(-1, 3).mean(axis=0)
            assert np.all(np.abs(mean - (200, 180, 140)) <= 16)

    @pytest.mark.parametrize("family", texgen.FAMILIES)
    def test_all_families_render(self, family):
        img = generate(TextureSpec(family, (100, 110, 120), jitter=8, period=4, seed=5, dims=(16, 16)))
        assert img.dims == (16, 16)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            TextureSpec("plaid", (0, 0, 0))
        with pytest.raises(ValueError):
            TextureSpec("stripes", (0, 0, 0), jitter=65)
        with pytest.raises(ValueError):
            TextureSpec("stripes", (0, 0, 0), period=1)


class TestGenerateCorpus:
    def test_truth_pattern_two_by_two(self):
        fams = texgen.default_family_templates(dims=(16, 16))[:2]
        corpus = generate_corpus(fams, 2, master_seed=7)
        assert [t for _, t in corpus] == [
            TruthLabel.NOVEL,
            TruthLabel.SIMILAR,
            TruthLabel.NOVEL,
            TruthLabel.SIMILAR,
        ]

    def test_counts_4x8(self, default_corpus):
        assert len(default_corpus) == 32
        assert sum(t == TruthLabel.NOVEL for _, t in default_corpus) == 4

    def test_reproducible_corpus_hash(self, default_corpus):
        assert texgen.corpus_sha256(default_corpus) == GOLDEN_DEFAULT_CORPUS_SHA256

    def test_needs_two_families(self):
        with pytest.raises(ValueError):
            generate_corpus(texgen.default_family_templates()[:1], 4)


class TestSaveCorpus(object):
    def test_round_trip_through_evaluation_manifest(self, tmp_path):
        from outcrop import evaluation, imagecore

        fams = texgen.default_family_templates(dims=(16, 16))
        corpus = generate_corpus(fams, 2, master_seed=3)
        manifest = texgen.save_corpus(tmp_path, corpus)
        records = evaluation.read_corpus_manifest(manifest)
        assert len(records) == len(corpus)
        for rec, (img, truth) in zip(records, corpus):
            assert rec["truth"] == truth
            assert imagecore.decode(rec["path"].read_bytes()).same_pixels(img)
