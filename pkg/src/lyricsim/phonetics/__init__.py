"""Sound-based similarity: feature-pair phonetic vectors and repetition metrics."""

from .features import (BEG, END, FeaturePairCounts, FeatureTable,
                       feature_pairs, load_feature_table, parse_feature_table)
from .pca import (PcaModel, fit_pca, fit_pca_matrix, load_pca,
                  phonetic_vector, project_frequencies, save_pca)
from .repetition import musical_difference, repetition_ratio

from ..embeddings import cosine


def phonetic_similarity(p, q) -> float:
    """Cosine similarity between two phonetic vectors."""
    return cosine(p, q)


__all__ = [
    "BEG", "END", "FeaturePairCounts", "FeatureTable", "PcaModel",
    "cosine", "feature_pairs", "fit_pca", "fit_pca_matrix",
    "load_feature_table", "load_pca", "musical_difference",
    "parse_feature_table", "phonetic_similarity", "phonetic_vector",
    "project_frequencies", "repetition_ratio", "save_pca",
]
