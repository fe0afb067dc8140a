"""Metric-weighted lyric recommendation over the corpus."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..corpus import tokenize
from ..embeddings import cosine
from ..errors import (MissingObjective, MissingProvider, NoKnownTokens,
                      TooShort, ZeroVector)
from ..phonetics import (feature_pairs, musical_difference, phonetic_vector,
                         repetition_ratio)
from ..topics import infer_topics
from .. import util
from .evaluate import MetricProviders, compute_set_features
from .metrics import DIFFERENCE, METRIC_NAMES, MetricVector, default_metric_specs

# Weight magnitudes of the three metrics with significant human-perception
# correlation; the rest default to 0.
DEFAULT_WEIGHTS = {
    "topic_sim": 0.0,
    "semantic_sim": 0.65,
    "mood_diff": 0.0,
    "audio_sim": 0.48,
    "phonetic_sim": 0.0,
    "musical_diff": 0.74,
}


@dataclass
class Query:
    """Recommendation query: raw text, optionally anchored to a corpus set.

    ``vectors`` may supply explicit semantic/audio vectors and a
    ``(valence, arousal)`` mood for the query itself; an anchored query
    falls back to the anchor set's vectors and track metadata.
    """
    text: str = ""
    set_id: Optional[str] = None
    vectors: dict[str, np.ndarray] = field(default_factory=dict)


@dataclass
class Recommendation:
    set_id: str
    score: float
    metrics: MetricVector


@dataclass
class _QueryFeatures:
    tokens: list[str]
    phonemes: list[str]
    topic_vector: Optional[np.ndarray] = None
    phonetic_vector: Optional[np.ndarray] = None
    repetition: Optional[float] = None
    semantic: Optional[np.ndarray] = None
    audio: Optional[np.ndarray] = None
    mood: Optional[np.ndarray] = None


def _query_features(providers: MetricProviders, query: Query,
                    lexicon) -> _QueryFeatures:
    corpus = providers.corpus
    anchor = corpus.lyric_sets.get(query.set_id) if query.set_id else None
    if query.text:
        tokens = tokenize(query.text.splitlines())
        phonemes = []
        if lexicon is not None:
            from ..corpus import phonemize
            phonemes, _ = phonemize(tokens, lexicon)
    elif anchor is not None:
        tokens, phonemes = anchor.tokens, anchor.phonemes
    else:
        raise MissingProvider("query needs text or an anchor set id")

    feats = _QueryFeatures(tokens=tokens, phonemes=phonemes)
    if providers.topic_model is not None:
        try:
            feats.topic_vector = infer_topics(
                providers.topic_model, tokens, burn_in=providers.burn_in,
                samples=providers.samples,
                seed=util.stable_seed(providers.seed, "infer", "::query"))
        except NoKnownTokens:
            pass
    if providers.pca_model is not None and providers.feature_table is not None:
        hist = feature_pairs(phonemes, providers.feature_table)
        if hist.total > 0:
            feats.phonetic_vector = phonetic_vector(hist, providers.pca_model)
    if len(phonemes) >= 2:
        feats.repetition = repetition_ratio(phonemes)

    feats.semantic = query.vectors.get("semantic")
    if feats.semantic is None and anchor is not None and providers.semantic:
        if anchor.set_id in providers.semantic:
            feats.semantic = providers.semantic.get(anchor.set_id)
    feats.audio = query.vectors.get("audio")
    feats.mood = query.vectors.get("mood")
    if anchor is not None:
        track_id = anchor.track_id
        if feats.audio is None and providers.audio and track_id in providers.audio:
            feats.audio = providers.audio.get(track_id)
        if feats.mood is None and providers.mood and track_id in providers.mood:
            feats.mood = providers.mood.get(track_id)
    return feats


def _check_available(metric: str, query_feats: _QueryFeatures,
                     providers: MetricProviders) -> None:
    ok = {
        "topic_sim": query_feats.topic_vector is not None,
        "semantic_sim": (query_feats.semantic is not None
                         and providers.semantic is not None),
        "mood_diff": (query_feats.mood is not None
                      and providers.mood is not None),
        "audio_sim": (query_feats.audio is not None
                      and providers.audio is not None),
        "phonetic_sim": query_feats.phonetic_vector is not None,
        "musical_diff": query_feats.repetition is not None,
    }[metric]
    if not ok:
        raise MissingProvider(f"metric {metric!r} has weight but no provider "
                              "for this query")


def recommend(providers: MetricProviders, query: Query,
              weights: Optional[dict[str, float]] = None, k: int = 10,
              lexicon=None, jobs: int = 1) -> list[Recommendation]:
    """Rank lyric sets against the query by a weighted metric combination.

    Per weighted metric, candidate scores are z-normalized over the
    candidate population (difference metrics negated) and combined as the
    weighted sum.  Candidates missing any weighted metric are dropped.
    Ties break by set id.
    """
    weights = dict(DEFAULT_WEIGHTS if weights is None else weights)
    active = [m for m in METRIC_NAMES if weights.get(m)]
    if not active:
        raise MissingObjective("all metric weights are zero")

    qf = _query_features(providers, query, lexicon)
    for metric in active:
        _check_available(metric, qf, providers)

    candidate_ids = [sid for sid in providers.corpus.sorted_set_ids()
                     if sid != query.set_id]
    features = compute_set_features(providers, candidate_ids, jobs=jobs)

    rows: list[tuple[str, MetricVector]] = []
    for sid in candidate_ids:
        cand = features[sid]
        mv = MetricVector()
        if qf.topic_vector is not None and cand.topic_vector is not None:
            mv.topic_sim = cosine(qf.topic_vector, cand.topic_vector)
        sem = providers.semantic
        if qf.semantic is not None and sem is not None and sid in sem:
            mv.semantic_sim = cosine(qf.semantic, sem.get(sid))
        mood = providers.mood
        if qf.mood is not None and mood is not None and cand.track_id in mood:
            delta = qf.mood - mood.get(cand.track_id)
            mv.mood_diff = float(np.hypot(delta[0], delta[1]))
        aud = providers.audio
        if qf.audio is not None and aud is not None and cand.track_id in aud:
            mv.audio_sim = cosine(qf.audio, aud.get(cand.track_id))
        if qf.phonetic_vector is not None and cand.phonetic_vector is not None:
            try:
                mv.phonetic_sim = cosine(qf.phonetic_vector,
                                         cand.phonetic_vector)
            except ZeroVector:
                pass
        if qf.repetition is not None and cand.repetition is not None:
            try:
                mv.musical_diff = musical_difference(qf.phonemes, cand.phonemes)
            except TooShort:
                pass
        if all(mv.get(m) is not None for m in active):
            rows.append((sid, mv))

    if not rows:
        return []

    specs = default_metric_specs()
    scores = np.zeros(len(rows))
    for metric in active:
        col = np.array([mv.get(metric) for _, mv in rows])
        sigma = float(col.std(ddof=0))
        z = (col - col.mean()) / sigma if sigma > 0 else np.zeros_like(col)
        if specs[metric].polarity == DIFFERENCE:
            z = -z
        scores += weights[metric] * z

    order = sorted(range(len(rows)), key=lambda i: (-scores[i], rows[i][0]))
    return [Recommendation(set_id=rows[i][0], score=float(scores[i]),
                           metrics=rows[i][1]) for i in order[:k]]
