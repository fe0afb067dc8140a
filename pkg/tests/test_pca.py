import numpy as np
import pytest

from lyricsim.errors import (ConvergenceFailure, EmptyHistogram,
                             InsufficientData)
from lyricsim.phonetics import (FeaturePairCounts, fit_pca, fit_pca_matrix,
                                load_pca, phonetic_vector,
                                project_frequencies, save_pca)


def hist(counts):
    return FeaturePairCounts(counts=dict(counts), total=sum(counts.values()))


PAIR_A = ("alv", "vwl")
PAIR_B = ("vwl", "nas")
PAIR_C = ("nas", "end")


class TestFitPcaMatrix:
    def test_rank_one_structure(self):
        rng = np.random.default_rng(0)
        direction = rng.standard_normal(8)
        base = rng.standard_normal(8)
        rows = np.stack([base + t * direction for t in rng.standard_normal(30)])
        _, comps, variances = fit_pca_matrix(rows, 5, seed=1)
        assert variances[0] > 0
        assert np.all(variances[1:] <= 1e-9)
        assert np.abs(comps @ comps.T - np.eye(5)).max() <= 1e-6

    def test_known_covariance_recovery(self):
        rng = np.random.default_rng(7)
        rows = rng.standard_normal((10000, 3)) * np.array([2.0, 1.0, 0.5])
        _, comps, variances = fit_pca_matrix(rows, 3, seed=1)
        assert variances == pytest.approx([4.0, 1.0, 0.25], rel=0.1)
        assert np.abs(comps @ comps.T - np.eye(3)).max() <= 1e-6

    def test_reconstruction_within_discarded_variance(self):
        rng = np.random.default_rng(3)
        rows = rng.standard_normal((200, 6)) * np.linspace(2.0, 0.1, 6)
        mean, comps, variances = fit_pca_matrix(rows, 4, seed=2)
        centered = rows - rows.mean(axis=0)
        recon = (centered @ comps.T) @ comps
        residual = float(np.mean(np.sum((centered - recon) ** 2, axis=1)))
        total = float(np.trace(centered.T @ centered / rows.shape[0]))
        assert residual <= total - variances.sum() + 1e-8

    def test_sign_convention(self):
        rng = np.random.default_rng(5)
        rows = rng.standard_normal((100, 4))
        _, comps, _ = fit_pca_matrix(rows, 3, seed=4)
        for row in comps:
            assert row[int(np.argmax(np.abs(row)))] > 0

    def test_deterministic(self):
        rng = np.random.default_rng(9)
        rows = rng.standard_normal((50, 5))
        out1 = fit_pca_matrix(rows, 3, seed=8)
        out2 = fit_pca_matrix(rows, 3, seed=8)
        for a, b in zip(out1, out2):
            assert np.array_equal(a, b)

    def test_too_few_rows(self):
        with pytest.raises(InsufficientData):
            fit_pca_matrix(np.zeros((3, 5)), 3, seed=0)

    def test_dims_exceed_space(self):
        with pytest.raises(InsufficientData):
            fit_pca_matrix(np.zeros((10, 2)), 3, seed=0)

    def test_convergence_failure_raised(self):
        rng = np.random.default_rng(1)
        rows = rng.standard_normal((40, 6))
        with pytest.raises(ConvergenceFailure):
            fit_pca_matrix(rows, 3, seed=0, max_iter=0)


class TestFitPcaHistograms:
    def test_insufficient_histograms(self):
        hists = [hist({PAIR_A: 1, PAIR_B: 1})] * 3
        with pytest.raises(InsufficientData):
            fit_pca(hists, dims=3, seed=0)

    def test_pair_space_too_small(self):
        hists = [hist({PAIR_A: i + 1, PAIR_B: 1}) for i in range(10)]
        with pytest.raises(InsufficientData):
            fit_pca(hists, dims=3, seed=0)

    def test_zero_total_histograms_excluded(self):
        rng = np.random.default_rng(2)
        hists = [FeaturePairCounts()] + [
            hist({PAIR_A: int(rng.integers(1, 9)),
                  PAIR_B: int(rng.integers(1, 9)),
                  PAIR_C: int(rng.integers(1, 9))}) for _ in range(12)]
        model = fit_pca(hists, dims=2, seed=0)
        assert model.dims == 2
        assert len(model.pair_index) == 3


@pytest.fixture(scope="module")
def fitted():
    rng = np.random.default_rng(4)
    hists = [hist({PAIR_A: int(rng.integers(1, 20)),
                   PAIR_B: int(rng.integers(1, 20)),
                   PAIR_C: int(rng.integers(1, 20))}) for _ in range(30)]
    return fit_pca(hists, dims=2, seed=3)


class TestPhoneticVector:

    def test_identical_histograms_identical_vectors(self, fitted):
        h = hist({PAIR_A: 3, PAIR_B: 5, PAIR_C: 2})
        assert np.array_equal(phonetic_vector(h, fitted),
                              phonetic_vector(hist(dict(h.counts)), fitted))

    def test_mean_frequency_projects_to_zero(self):
        # identical dyadic histograms make the fitted mean exactly equal to
        # each input's frequency vector, so the projection must be exactly 0
        hists = [hist({PAIR_A: 1, PAIR_B: 1})] * 4 + [hist({PAIR_A: 1, PAIR_B: 1})] * 4
        model = fit_pca(hists, dims=2, seed=1)
        vec = phonetic_vector(hist({PAIR_A: 1, PAIR_B: 1}), model)
        assert np.array_equal(vec, np.zeros(2))

    def test_component_direction_recovered(self, fitted):
        freq = fitted.mean + 0.25 * fitted.components[0]
        projected = project_frequencies(freq, fitted)
        assert projected == pytest.approx([0.25, 0.0], abs=1e-12)

    def test_unseen_pairs_dropped_with_warning(self, fitted, caplog):
        h = hist({PAIR_A: 1, PAIR_B: 1, ("beg", "alv"): 2})
        with caplog.at_level("WARNING"):
            vec = phonetic_vector(h, fitted)
        assert "dropped 1" in caplog.text
        assert vec.shape == (2,)

    def test_empty_histogram_rejected(self, fitted):
        with pytest.raises(EmptyHistogram):
            phonetic_vector(FeaturePairCounts(), fitted)

    def test_similarity_scale_invariant_on_fitted_vectors(self, fitted):
        from lyricsim.phonetics import phonetic_similarity
        p = phonetic_vector(hist({PAIR_A: 3, PAIR_B: 5, PAIR_C: 2}), fitted)
        q = phonetic_vector(hist({PAIR_A: 7, PAIR_B: 1, PAIR_C: 4}), fitted)
        for lam in (1e-6, 0.5, 3.0, 1e6):
            assert phonetic_similarity(p, lam * q) == pytest.approx(
                phonetic_similarity(p, q), abs=1e-12)


class TestPersistence:
    def test_round_trip_bit_exact(self, pca_model, tmp_path):
        path = tmp_path / "pca.json"
        save_pca(pca_model, str(path))
        loaded = load_pca(str(path))
        assert loaded.pair_index == pca_model.pair_index
        assert np.array_equal(loaded.mean, pca_model.mean)
        assert np.array_equal(loaded.components, pca_model.components)
        assert np.array_equal(loaded.explained_variance,
                              pca_model.explained_variance)

    def test_fixture_model_invariants(self, pca_model):
        eye = np.eye(pca_model.dims)
        assert np.abs(pca_model.components @ pca_model.components.T
                      - eye).max() <= 1e-6
        assert np.all(np.diff(pca_model.explained_variance) <= 1e-15)
        assert np.all(pca_model.explained_variance >= 0)
