"""Topic modeling: collapsed-Gibbs LDA training, fold-in inference, similarity.

Documents are lyric sections (token lists).  Training and inference are
deterministic given their seeds; trained models are immutable.
"""

from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

import numpy as np

from ..embeddings import cosine
from ..errors import EmptyVocabulary, NoKnownTokens, TooFewDocuments
from .. import util
from .kernel import BACKEND, infer_gibbs, train_gibbs

TOPIC_MODEL_FORMAT_VERSION = 1
DEFAULT_TOPICS = 50
DEFAULT_BETA = 0.01
DEFAULT_MIN_DF = 3
DEFAULT_ITERATIONS = 200
DEFAULT_BURN_IN = 50
DEFAULT_SAMPLES = 10


def default_alpha(k: int) -> float:
    """Symmetric document-topic prior: 50 / K (1.0 at the default K)."""
    return 50.0 / k


def load_stopwords() -> frozenset[str]:
    text = resources.files("lyricsim.data").joinpath(
        "stopwords.txt").read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line)
    return frozenset(words)


@dataclass
class TopicModel:
    k: int
    vocabulary: dict[str, int]
    alpha: float
    beta: float
    topic_word_counts: np.ndarray  # (K, V) int32
    topic_totals: np.ndarray       # (K,) int32
    seed: int
    iterations_run: int

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    def phi(self) -> np.ndarray:
        """Topic-word distributions (K, V); rows sum to 1."""
        num = self.topic_word_counts + self.beta
        den = self.topic_totals.astype(np.float64) + self.beta * self.vocab_size
        return num / den[:, None]

    def encode(self, tokens: Iterable[str]) -> list[int]:
        vocab = self.vocabulary
        return [vocab[t] for t in tokens if t in vocab]


def build_vocabulary(docs: list[list[str]], min_df: int = DEFAULT_MIN_DF,
                     stopwords: Optional[frozenset[str]] = None,
                     ) -> dict[str, int]:
    """Document-frequency-filtered, stopword-free vocabulary (sorted order)."""
    if stopwords is None:
        stopwords = load_stopwords()
    df: dict[str, int] = {}
    for doc in docs:
        for word in set(doc):
            df[word] = df.get(word, 0) + 1
    kept = sorted(w for w, n in df.items() if n >= min_df and w not in stopwords)
    return {w: i for i, w in enumerate(kept)}


def train_lda(docs: list[list[str]], k: int = DEFAULT_TOPICS,
              alpha: Optional[float] = None, beta: float = DEFAULT_BETA,
              iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
              min_df: int = DEFAULT_MIN_DF,
              stopwords: Optional[frozenset[str]] = None) -> TopicModel:
    """Train by collapsed Gibbs sampling; counts reflect the final sweep.

    Identical (docs, k, alpha, beta, iterations, seed) reproduce an
    identical model.  Requires at least ``k`` documents that still hold a
    token after vocabulary filtering.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if alpha is None:
        alpha = default_alpha(k)
    vocabulary = build_vocabulary(docs, min_df=min_df, stopwords=stopwords)
    if not vocabulary:
        raise EmptyVocabulary("no tokens survive vocabulary filtering")
    encoded = [[vocabulary[t] for t in doc if t in vocabulary] for doc in docs]
    nonempty = sum(1 for doc in encoded if doc)
    if nonempty < k:
        raise TooFewDocuments(
            f"{nonempty} documents with in-vocabulary tokens, need >= {k}")

    words: list[int] = []
    offsets = [0]
    for doc in encoded:
        words.extend(doc)
        offsets.append(len(words))
    _, _, topic_word, topic_totals = train_gibbs(
        np.asarray(words, dtype=np.int32), np.asarray(offsets, dtype=np.int32),
        k, len(vocabulary), float(alpha), float(beta), int(iterations),
        int(seed))
    return TopicModel(k=k, vocabulary=vocabulary, alpha=float(alpha),
                      beta=float(beta), topic_word_counts=topic_word,
                      topic_totals=topic_totals, seed=int(seed),
                      iterations_run=int(iterations))


def infer_topics(model: TopicModel, doc: list[str],
                 burn_in: int = DEFAULT_BURN_IN,
                 samples: int = DEFAULT_SAMPLES, seed: int = 0) -> np.ndarray:
    """Topic distribution of one document by fold-in Gibbs sampling.

    Topic-word counts stay frozen; the returned vector is the average over
    ``samples`` post-burn-in sweeps of the smoothed local topic counts, a
    probability distribution over the model's K topics.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ids = model.encode(doc)
    if not ids:
        raise NoKnownTokens("document has no in-vocabulary token")
    return infer_gibbs(np.asarray(ids, dtype=np.int32),
                       model.topic_word_counts, model.topic_totals,
                       model.alpha, model.beta, int(burn_in), int(samples),
                       int(seed))


def topic_similarity(t: np.ndarray, u: np.ndarray) -> float:
    """Cosine similarity between two topic distributions, in [0, 1]."""
    return cosine(t, u)


# -- persistence -------------------------------------------------------------

def save_topic_model(model: TopicModel, path: str) -> None:
    words = sorted(model.vocabulary, key=model.vocabulary.get)
    util.write_json(path, {
        "format_version": TOPIC_MODEL_FORMAT_VERSION,
        "k": model.k,
        "alpha": model.alpha,
        "beta": model.beta,
        "seed": model.seed,
        "iterations_run": model.iterations_run,
        "vocabulary": words,
        "topic_word_counts": model.topic_word_counts.tolist(),
        "topic_totals": model.topic_totals.tolist(),
    })


def load_topic_model(path: str) -> TopicModel:
    data = util.read_json(path)
    if data.get("format_version") != TOPIC_MODEL_FORMAT_VERSION:
        raise EmptyVocabulary(
            f"unsupported topic model format {data.get('format_version')!r}")
    vocabulary = {w: i for i, w in enumerate(data["vocabulary"])}
    return TopicModel(
        k=data["k"], vocabulary=vocabulary, alpha=data["alpha"],
        beta=data["beta"],
        topic_word_counts=np.array(data["topic_word_counts"], dtype=np.int32),
        topic_totals=np.array(data["topic_totals"], dtype=np.int32),
        seed=data["seed"], iterations_run=data["iterations_run"])


__all__ = [
    "BACKEND", "TopicModel", "build_vocabulary", "default_alpha",
    "infer_topics", "load_stopwords", "load_topic_model", "save_topic_model",
    "topic_similarity", "train_lda",
]
