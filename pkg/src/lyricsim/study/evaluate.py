"""Six-metric evaluation of lyric-set pairs against loaded providers."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..corpus import CorpusStore
from ..embeddings import EmbeddingStore, cosine, mood_difference
from ..errors import NoKnownTokens, TooShort, ZeroVector
from ..phonetics import (FeatureTable, PcaModel, feature_pairs,
                         musical_difference, phonetic_vector,
                         repetition_ratio)
from ..topics import (DEFAULT_BURN_IN, DEFAULT_SAMPLES, TopicModel,
                      infer_topics)
from .. import util
from .metrics import METRIC_NAMES, MetricVector, PairRecord


@dataclass
class MetricProviders:
    """Everything needed to score a pair; missing pieces disable metrics."""
    corpus: CorpusStore
    topic_model: Optional[TopicModel] = None
    pca_model: Optional[PcaModel] = None
    feature_table: Optional[FeatureTable] = None
    semantic: Optional[EmbeddingStore] = None
    audio: Optional[EmbeddingStore] = None
    mood: Optional[EmbeddingStore] = None
    seed: int = 0
    burn_in: int = DEFAULT_BURN_IN
    samples: int = DEFAULT_SAMPLES


@dataclass
class SetFeatures:
    """Per-set quantities cached once per evaluation run."""
    set_id: str
    track_id: str
    phonemes: list[str]
    topic_vector: Optional[np.ndarray] = None
    phonetic_vector: Optional[np.ndarray] = None
    repetition: Optional[float] = None


@dataclass
class UnavailableCounts:
    counts: dict[str, int] = field(
        default_factory=lambda: {name: 0 for name in METRIC_NAMES})

    def note(self, metric: str) -> None:
        self.counts[metric] += 1


def _set_features(providers: MetricProviders, set_id: str) -> SetFeatures:
    lyric_set = providers.corpus.lyric_sets[set_id]
    feats = SetFeatures(set_id=set_id, track_id=lyric_set.track_id,
                        phonemes=lyric_set.phonemes)
    if providers.topic_model is not None:
        try:
            feats.topic_vector = infer_topics(
                providers.topic_model, lyric_set.tokens,
                burn_in=providers.burn_in, samples=providers.samples,
                seed=util.stable_seed(providers.seed, "infer", set_id))
        except NoKnownTokens:
            pass
    if providers.pca_model is not None and providers.feature_table is not None:
        hist = feature_pairs(lyric_set.phonemes, providers.feature_table)
        if hist.total > 0:
            feats.phonetic_vector = phonetic_vector(hist, providers.pca_model)
    if len(lyric_set.phonemes) >= 2:
        feats.repetition = repetition_ratio(lyric_set.phonemes)
    return feats


def compute_set_features(providers: MetricProviders, set_ids: Sequence[str],
                         jobs: int = 1) -> dict[str, SetFeatures]:
    """Cache per-set features for the ids, in deterministic per-set terms.

    Every set gets its own derived inference seed, so the result does not
    depend on evaluation order or on ``jobs``.
    """
    ordered = sorted(set(set_ids))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(lambda sid: _set_features(providers, sid),
                               ordered)
            return {f.set_id: f for f in results}
    return {sid: _set_features(providers, sid) for sid in ordered}


def evaluate_pair(a: SetFeatures, b: SetFeatures, providers: MetricProviders,
                  tally: Optional[UnavailableCounts] = None) -> MetricVector:
    """Score one cross-track pair; unavailable inputs null the metric."""
    mv = MetricVector()

    def miss(metric: str) -> None:
        if tally is not None:
            tally.note(metric)

    if a.topic_vector is not None and b.topic_vector is not None:
        mv.topic_sim = cosine(a.topic_vector, b.topic_vector)
    else:
        miss("topic_sim")

    sem = providers.semantic
    if sem is not None and a.set_id in sem and b.set_id in sem:
        mv.semantic_sim = cosine(sem.get(a.set_id), sem.get(b.set_id))
    else:
        miss("semantic_sim")

    mood = providers.mood
    if mood is not None and a.track_id in mood and b.track_id in mood:
        mv.mood_diff = mood_difference(a.track_id, b.track_id, mood)
    else:
        miss("mood_diff")

    aud = providers.audio
    if aud is not None and a.track_id in aud and b.track_id in aud:
        mv.audio_sim = cosine(aud.get(a.track_id), aud.get(b.track_id))
    else:
        miss("audio_sim")

    if a.phonetic_vector is not None and b.phonetic_vector is not None:
        try:
            mv.phonetic_sim = cosine(a.phonetic_vector, b.phonetic_vector)
        except ZeroVector:
            miss("phonetic_sim")
    else:
        miss("phonetic_sim")

    if a.repetition is not None and b.repetition is not None:
        try:
            mv.musical_diff = musical_difference(a.phonemes, b.phonemes)
        except TooShort:
            miss("musical_diff")
    else:
        miss("musical_diff")

    return mv


def evaluate_pairs(pairs: Sequence[tuple[str, str]],
                   providers: MetricProviders, jobs: int = 1,
                   ) -> tuple[list[PairRecord], dict[str, int]]:
    """Score every pair; returns the records plus unavailability counts.

    Per-set features are computed once up front, so pair order and
    parallelism cannot change any value.
    """
    ids = {sid for pair in pairs for sid in pair}
    features = compute_set_features(providers, sorted(ids), jobs=jobs)
    tally = UnavailableCounts()
    records = []
    for id_a, id_b in pairs:
        a, b = sorted((id_a, id_b))
        mv = evaluate_pair(features[a], features[b], providers, tally)
        records.append(PairRecord(set_id_a=a, set_id_b=b, metrics=mv))
    return records, tally.counts


def pair_metrics(providers: MetricProviders, id_a: str, id_b: str,
                 ) -> MetricVector:
    """Convenience single-pair evaluation (used by the CLI)."""
    a, b = sorted((id_a, id_b))
    features = compute_set_features(providers, [a, b])
    return evaluate_pair(features[a], features[b], providers)
