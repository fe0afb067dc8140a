"""Experiment pipeline: sampling, evaluation, grouping, triples, statistics."""

from .evaluate import (MetricProviders, SetFeatures, compute_set_features,
                       evaluate_pair, evaluate_pairs, pair_metrics)
from .grouping import group_by_metric
from .metrics import (DIFFERENCE, METRIC_NAMES, SIMILARITY, MetricSpec,
                      MetricVector, PairRecord, default_metric_specs,
                      resolve_specs, specs_from_dict, specs_to_dict)
from .recommend import (DEFAULT_WEIGHTS, Query, Recommendation, recommend)
from .sampling import sample_pairs
from .stats import (CorrelationMatrix, CorrelationResult, RankRecord,
                    RankSummary, correlation_with_p, metric_correlation_matrix,
                    metric_rank_correlation, p_value, pearson, read_rankings,
                    rank_summary, regularized_incomplete_beta, student_t_sf,
                    student_t_quantile)
from .triples import (Triple, TripleMember, closeness, select_triples,
                      verify_triple)

__all__ = [
    "DEFAULT_WEIGHTS", "DIFFERENCE", "METRIC_NAMES", "SIMILARITY",
    "CorrelationMatrix", "CorrelationResult", "MetricProviders", "MetricSpec",
    "MetricVector", "PairRecord", "Query", "RankRecord", "RankSummary",
    "Recommendation", "SetFeatures", "Triple", "TripleMember", "closeness",
    "compute_set_features", "correlation_with_p", "default_metric_specs",
    "evaluate_pair", "evaluate_pairs", "group_by_metric",
    "metric_correlation_matrix", "metric_rank_correlation", "p_value",
    "pair_metrics", "pearson", "rank_summary", "read_rankings", "recommend",
    "regularized_incomplete_beta", "resolve_specs", "sample_pairs",
    "select_triples", "specs_from_dict", "specs_to_dict", "student_t_sf",
    "student_t_quantile", "verify_triple",
]
