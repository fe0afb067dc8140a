import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lyricsim.errors import (DegenerateInput, InsufficientSamples,
                             MalformedRecord)
from lyricsim.study import (MetricVector, PairRecord, correlation_with_p,
                            metric_correlation_matrix, metric_rank_correlation,
                            p_value, pearson, rank_summary, read_rankings,
                            regularized_incomplete_beta, student_t_quantile,
                            student_t_sf)
from lyricsim.study.stats import RankRecord

# frozen before the build by numerically integrating the t density (nu=10),
# cross-checked against two further independent implementations
P_VALUE_ORACLE_R05_N12 = 0.0978546142578125


class TestPearson:
    def test_perfect_positive(self):
        assert pearson([1, 2, 3, 4], [2, 4, 6, 8]) == pytest.approx(1.0)

    def test_perfect_negative_affine(self):
        assert pearson([1, 2, 3, 4], [6, 5, 4, 3]) == pytest.approx(-1.0)

    def test_hand_value(self):
        assert pearson([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8,
                                                                    abs=1e-12)

    def test_short_input(self):
        with pytest.raises(DegenerateInput):
            pearson([1, 2], [3, 4])

    def test_zero_variance(self):
        with pytest.raises(DegenerateInput):
            pearson([1, 1, 1], [1, 2, 3])

    @given(st.floats(0.1, 50), st.floats(-100, 100))
    def test_affine_invariance(self, scale, shift):
        x = [0.3, 1.8, -2.4, 0.9, 5.5]
        y = [1.0, 0.2, 3.3, -1.1, 0.8]
        base = pearson(x, y)
        assert pearson([scale * v + shift for v in x], y) == pytest.approx(
            base, abs=1e-12)

    def test_sign_flips_under_negation(self):
        x = [0.3, 1.8, -2.4, 0.9, 5.5]
        y = [1.0, 0.2, 3.3, -1.1, 0.8]
        assert pearson([-v for v in x], y) == pytest.approx(-pearson(x, y),
                                                            abs=1e-12)


class TestIncompleteBeta:
    def test_bounds(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    def test_against_scipy_grid(self):
        scipy_special = pytest.importorskip("scipy.special")
        for a in (0.5, 1.0, 2.5, 5.0, 24.0):
            for b in (0.5, 1.0, 3.5):
                for x in (0.01, 0.2, 0.5, 0.8, 0.99):
                    assert regularized_incomplete_beta(a, b, x) == (
                        pytest.approx(scipy_special.betainc(a, b, x),
                                      abs=1e-12))


class TestPValue:
    def test_zero_correlation(self):
        for n in (3, 10, 500):
            assert p_value(0.0, n) == 1.0

    def test_perfect_correlation(self):
        assert p_value(1.0, 8) == 0.0
        assert p_value(-1.0, 8) == 0.0

    def test_frozen_oracle(self):
        assert p_value(0.5, 12) == pytest.approx(P_VALUE_ORACLE_R05_N12,
                                                 abs=1e-4)

    def test_against_scipy(self):
        scipy_stats = pytest.importorskip("scipy.stats")
        for r in (0.1, 0.35, 0.72, 0.95):
            for n in (5, 12, 80):
                t = r * math.sqrt(n - 2) / math.sqrt(1 - r * r)
                expected = 2 * scipy_stats.t.sf(t, n - 2)
                assert p_value(r, n) == pytest.approx(expected, rel=1e-10)

    def test_monotone_in_abs_r(self):
        values = [p_value(r, 20) for r in (0.0, 0.2, 0.4, 0.6, 0.8, 0.99)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_monotone_in_n(self):
        values = [p_value(0.4, n) for n in (4, 8, 16, 64, 256)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_insufficient_samples(self):
        with pytest.raises(InsufficientSamples):
            p_value(0.5, 2)


class TestStudentT:
    def test_quantile_nu1(self):
        # analytic: tan(pi * 0.475)
        assert student_t_quantile(0.975, 1) == pytest.approx(
            12.706204736174696, abs=1e-9)

    def test_quantile_against_scipy(self):
        scipy_stats = pytest.importorskip("scipy.stats")
        for p in (0.6, 0.9, 0.975, 0.995):
            for df in (1, 2, 7, 30, 200):
                assert student_t_quantile(p, df) == pytest.approx(
                    scipy_stats.t.ppf(p, df), abs=1e-9)

    def test_sf_symmetry(self):
        assert student_t_sf(1.3, 5) + student_t_sf(-1.3, 5) == pytest.approx(
            1.0, abs=1e-12)


class TestRankSummary:
    @staticmethod
    def records(ranks, group="H"):
        return [RankRecord(question_id=f"q{i}", rater_id="r", group=group,
                           rank=r) for i, r in enumerate(ranks)]

    def test_constant_ranks_zero_width(self):
        summary = rank_summary(self.records([1, 1, 1, 1]), "H")
        assert summary.mean == 1.0
        assert summary.ci_lo == summary.ci_hi == 1.0

    def test_two_point_half_width(self):
        summary = rank_summary(self.records([1, 3]), "H")
        assert summary.mean == 2.0
        assert summary.ci_hi - summary.mean == pytest.approx(12.706204736,
                                                             abs=1e-3)

    def test_symmetric_about_mean(self):
        summary = rank_summary(self.records([1, 2, 3]), "H")
        assert summary.mean == 2.0
        assert summary.ci_hi - summary.mean == pytest.approx(
            summary.mean - summary.ci_lo, abs=1e-12)

    def test_insufficient(self):
        with pytest.raises(InsufficientSamples):
            rank_summary(self.records([1]), "H")

    def test_filters_by_group(self):
        records = self.records([1, 1], "H") + self.records([3, 3], "L")
        assert rank_summary(records, "L").mean == 3.0


class TestReadRankings:
    def test_valid_file(self):
        text = ("question_id,rater_id,group_label,rank\n"
                "q1,r1,H,1\nq1,r1,M,2\nq1,r1,L,3\n")
        records = read_rankings(io.StringIO(text))
        assert len(records) == 3
        assert records[0].group == "H" and records[0].rank == 1

    def test_rejects_non_permutation(self):
        text = ("question_id,rater_id,group_label,rank\n"
                "q1,r1,H,1\nq1,r1,M,1\nq1,r1,L,3\n")
        with pytest.raises(MalformedRecord):
            read_rankings(io.StringIO(text))

    def test_rejects_bad_rank(self):
        text = "question_id,rater_id,group_label,rank\nq1,r1,H,4\n"
        with pytest.raises(MalformedRecord):
            read_rankings(io.StringIO(text))

    def test_rejects_missing_header(self):
        with pytest.raises(MalformedRecord):
            read_rankings(io.StringIO("a,b\n1,2\n"))


def records_from_columns(**columns) -> list[PairRecord]:
    n = len(next(iter(columns.values())))
    records = []
    for i in range(n):
        mv = MetricVector(**{name: col[i] for name, col in columns.items()})
        records.append(PairRecord(set_id_a=f"a{i:05d}", set_id_b=f"b{i:05d}",
                                  metrics=mv))
    return records


class TestCorrelationMatrix:
    def test_linear_dependence_cell(self):
        rng = np.random.default_rng(0)
        mood = rng.uniform(0, 3, size=50)
        records = records_from_columns(mood_diff=list(mood),
                                       musical_diff=list(2.0 * mood))
        matrix = metric_correlation_matrix(records)
        i = matrix.names.index("mood_diff")
        j = matrix.names.index("musical_diff")
        assert matrix.r[i, j] == pytest.approx(1.0, abs=1e-9)

    def test_diagonal_exactly_one(self):
        rng = np.random.default_rng(1)
        records = records_from_columns(
            **{name: list(rng.uniform(size=30)) for name in
               ("topic_sim", "semantic_sim", "mood_diff", "audio_sim",
                "phonetic_sim", "musical_diff")})
        matrix = metric_correlation_matrix(records)
        assert np.all(np.diag(matrix.r) == 1.0)
        assert np.array_equal(matrix.r, matrix.r.T)

    def test_absent_cells_for_missing_metric(self):
        records = records_from_columns(topic_sim=[0.1, 0.5, 0.9, 0.2])
        matrix = metric_correlation_matrix(records)
        i = matrix.names.index("topic_sim")
        j = matrix.names.index("audio_sim")
        assert math.isnan(matrix.r[i, j])
        assert matrix.n[i, j] == 0
        assert matrix.r[j, j] == 1.0

    def test_pairwise_complete_counts(self):
        records = records_from_columns(
            topic_sim=[0.1, 0.2, 0.3, None, 0.5],
            semantic_sim=[0.9, None, 0.7, 0.6, 0.5])
        matrix = metric_correlation_matrix(records)
        i = matrix.names.index("topic_sim")
        j = matrix.names.index("semantic_sim")
        assert matrix.n[i, j] == 3


class TestMetricRankCorrelation:
    def test_perfectly_ordered_fixture(self):
        # two raters rank the same triple exactly by semantic similarity
        # descending, so (value, rank) points are collinear
        joined = {"semantic_sim": [(0.9, 1), (0.5, 2), (0.1, 3),
                                   (0.9, 1), (0.5, 2), (0.1, 3)]}
        results = metric_rank_correlation(joined)
        assert results["semantic_sim"].r == pytest.approx(-1.0, abs=1e-12)
        assert results["semantic_sim"].p == 0.0
        assert results["topic_sim"] is None

    def test_difference_metric_positive_sign(self):
        joined = {"musical_diff": [(0.2, 1), (0.8, 2), (1.4, 3),
                                   (0.1, 1), (0.9, 2), (1.2, 3)]}
        results = metric_rank_correlation(joined)
        assert results["musical_diff"].r > 0.9

    def test_independent_ranks_insignificant(self):
        rng = np.random.default_rng(42)
        rows = [(float(rng.uniform()), int(rng.integers(1, 4)))
                for _ in range(600)]
        results = metric_rank_correlation({"audio_sim": rows})
        assert abs(results["audio_sim"].r) < 0.1
        assert results["audio_sim"].p > 0.05


def test_correlation_with_p_consistency():
    x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    y = [1.1, 2.3, 2.8, 4.2, 5.1, 5.7]
    result = correlation_with_p(x, y)
    assert result.n == 6
    assert result.p == pytest.approx(p_value(result.r, 6), abs=1e-15)
