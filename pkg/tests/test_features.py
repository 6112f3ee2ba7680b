import io
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plotarc.corpus import Novel, NovelMetadata
from plotarc.features import (
    FEATURE_SET_DIMS,
    FeaturizationError,
    SectionPartition,
    SegmentProfile,
    build_features,
    compute_profile,
    read_profile_cache,
    section_means,
    segment,
    segment_sentiment,
    write_profile_cache,
)


def make_profile(vectors, novel_id="x"):
    arr = np.array(vectors, dtype=float)
    return SegmentProfile(novel_id, arr, np.ones(arr.shape[0], dtype=int))


class TestSegment:
    def test_exact_division(self):
        blocks = segment([f"w{i}" for i in range(750)], 75)
        assert len(blocks) == 75
        assert all(len(b) == 10 for b in blocks)

    def test_remainder_to_earliest(self):
        lemmas = [f"w{i}" for i in range(77)]
        blocks = segment(lemmas, 75)
        sizes = [len(b) for b in blocks]
        assert sizes[:2] == [2, 2] and set(sizes[2:]) == {1}
        assert [w for b in blocks for w in b] == lemmas

    def test_too_short_raises(self):
        with pytest.raises(FeaturizationError):
            segment(["a"] * 74, 75)

    @given(
        st.integers(1, 60).flatmap(
            lambda n: st.tuples(st.just(n), st.integers(n, 600))
        )
    )
    @settings(max_examples=200)
    def test_partition_properties(self, pair):
        n_segments, length = pair
        lemmas = [f"w{i}" for i in range(length)]
        blocks = segment(lemmas, n_segments)
        sizes = [len(b) for b in blocks]
        assert len(blocks) == n_segments
        assert max(sizes) - min(sizes) <= 1
        assert [w for b in blocks for w in b] == lemmas
        q, r = divmod(length, n_segments)
        assert sizes == [q + 1] * r + [q] * (n_segments - r)


class TestSegmentSentiment:
    def test_single_surprise_token(self, table1_lexicon):
        vec, matched = segment_sentiment(["Zufall"], table1_lexicon)
        assert matched == 1
        assert vec.surprise == 1.0
        assert np.sum(vec.values) == 1.0

    def test_hand_averaged_pair(self, table1_lexicon):
        vec, matched = segment_sentiment(["verabscheuen", "bewundernswert"], table1_lexicon)
        assert matched == 2
        assert vec.positive == 0.5 and vec.negative == 0.5 and vec.polarity == 0.0
        assert vec.anger == 0.5 and vec.disgust == 0.5 and vec.fear == 0.5
        assert vec.joy == 0.5 and vec.trust == 0.5
        assert vec.sadness == 0.0 and vec.surprise == 0.0 and vec.anticipation == 0.0

    def test_all_oov_gives_zero_vector(self, table1_lexicon):
        vec, matched = segment_sentiment(["foo", "bar"], table1_lexicon)
        assert matched == 0
        assert not vec.values.any()

    def test_all_tokens_denominator(self, table1_lexicon):
        vec, matched = segment_sentiment(
            ["Zufall", "oov", "oov", "oov"], table1_lexicon, denominator="all"
        )
        assert matched == 1
        assert vec.surprise == 0.25

    def test_unknown_policy_rejected(self, table1_lexicon):
        with pytest.raises(ValueError):
            segment_sentiment(["Zufall"], table1_lexicon, denominator="weird")


class TestSectionMeans:
    def test_standard_partition_slices(self):
        partition = SectionPartition(75, 4, 4)
        assert partition.main_slice == slice(0, 71)
        assert partition.final_slice == slice(71, 75)
        assert partition.late_slice == slice(67, 71)

    def test_final_len_one_equals_last_segment(self):
        rng = np.random.default_rng(0)
        profile = make_profile(rng.random((75, 11)))
        _, _, final = section_means(profile, SectionPartition(75, 1, 0))
        np.testing.assert_array_equal(final, profile.segment_vectors[-1])

    def test_constant_profile_all_equal(self):
        profile = make_profile(np.tile(np.arange(11.0), (75, 1)))
        main, late, final = section_means(profile, SectionPartition(75, 4, 4))
        np.testing.assert_allclose(main, final)
        np.testing.assert_allclose(late, final)

    def test_length_mismatch_rejected(self):
        profile = make_profile(np.zeros((10, 11)))
        with pytest.raises(FeaturizationError):
            section_means(profile, SectionPartition(75, 4, 4))

    def test_invalid_partition_rejected(self):
        with pytest.raises(FeaturizationError):
            SectionPartition(10, 8, 5)
        with pytest.raises(FeaturizationError):
            SectionPartition(10, 0, 0)


class TestBuildFeatures:
    @pytest.fixture
    def random_profile(self):
        rng = np.random.default_rng(7)
        return make_profile(rng.random((75, 11)))

    def test_set1_is_last_segment(self, random_profile):
        fv = build_features(random_profile, SectionPartition(75, 4, 4), 1, True)
        np.testing.assert_array_equal(fv.values, random_profile.segment_vectors[-1])

    @pytest.mark.parametrize("fsid,dim", sorted(FEATURE_SET_DIMS.items()))
    def test_dimensions(self, random_profile, fsid, dim):
        fv = build_features(random_profile, SectionPartition(75, 4, 4), fsid, False)
        assert fv.values.shape == (dim,)

    def test_constant_profile_zero_differences(self):
        profile = make_profile(np.tile(np.arange(11.0), (75, 1)))
        partition = SectionPartition(75, 4, 4)
        for fsid in (2, 4, 5, 6):
            fv = build_features(profile, partition, fsid, True)
            diffs = fv.values[11:33] if fsid in (5, 6) else fv.values[11:22]
            np.testing.assert_allclose(diffs, 0.0, atol=1e-15)

    def test_set3_equals_set1_with_final_len_one(self, random_profile):
        partition = SectionPartition(75, 1, 0)
        f1 = build_features(random_profile, partition, 1, True)
        f3 = build_features(random_profile, partition, 3, True)
        np.testing.assert_array_equal(f1.values, f3.values)

    def test_late_required_for_sets_5_6(self, random_profile):
        partition = SectionPartition(75, 4, 0)
        for fsid in (5, 6):
            with pytest.raises(FeaturizationError, match="late_len"):
                build_features(random_profile, partition, fsid, True)

    def test_bad_feature_set_id(self, random_profile):
        with pytest.raises(FeaturizationError):
            build_features(random_profile, SectionPartition(75, 4, 4), 7, True)

    def test_pure_function(self, random_profile):
        partition = SectionPartition(75, 4, 4)
        a = build_features(random_profile, partition, 6, True)
        b = build_features(random_profile, partition, 6, True)
        np.testing.assert_array_equal(a.values, b.values)


class TestComputeProfile:
    def test_polarity_linearity(self, toy_lexicon):
        rng = random.Random(11)
        lemmas = tuple(
            rng.choice(sorted(toy_lexicon.entries) + ["oov1", "oov2"]) for _ in range(400)
        )
        novel = Novel(NovelMetadata("p", "t", "a", 1850, True), lemmas)
        profile = compute_profile(novel, toy_lexicon)
        np.testing.assert_allclose(
            profile.segment_vectors[:, 2],
            profile.segment_vectors[:, 0] - profile.segment_vectors[:, 1],
            atol=1e-12,
        )

    def test_error_names_novel(self, toy_lexicon):
        novel = Novel(NovelMetadata("tiny", "t", "a", 1850, True), ("a",) * 10)
        with pytest.raises(FeaturizationError, match="tiny"):
            compute_profile(novel, toy_lexicon)


class TestProfileCache:
    def test_roundtrip(self, toy_lexicon):
        rng = random.Random(3)
        profiles = []
        for i in range(3):
            lemmas = tuple(
                rng.choice(sorted(toy_lexicon.entries) + ["oov"]) for _ in range(200)
            )
            novel = Novel(NovelMetadata(f"n{i}", "t", "a", 1850, True), lemmas)
            profiles.append(compute_profile(novel, toy_lexicon))
        buf = io.StringIO()
        write_profile_cache(profiles, buf)
        buf.seek(0)
        again = read_profile_cache(buf)
        assert len(again) == 3
        for orig, back in zip(profiles, again):
            assert back.novel_id == orig.novel_id
            np.testing.assert_array_equal(back.segment_vectors, orig.segment_vectors)
            np.testing.assert_array_equal(back.matched_counts, orig.matched_counts)
