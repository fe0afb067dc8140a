"""Externally produced vectors (semantic/audio/mood) and the metrics over them.

The engine never computes embeddings itself; it loads vector files emitted
by an exporter.  Semantic vectors are keyed by lyric-set id, audio and mood
vectors by track id.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .corpus import CorpusStore
from .errors import (DimensionMismatch, DuplicateId, MalformedRecord,
                     MissingVector, ZeroVector)

KIND_DIMS = {"semantic": 384, "audio": 200, "mood": 2}


@dataclass
class EmbeddingStore:
    kind: str
    dim: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, key: str) -> bool:
        return key in self.vectors

    def get(self, key: str) -> np.ndarray:
        try:
            return self.vectors[key]
        except KeyError:
            raise MissingVector(f"{self.kind} vector for {key!r}") from None


def load_vectors(source: Iterable[str], kind: str) -> EmbeddingStore:
    """Load the line-delimited vector file format.

    The first line is a header object with ``kind`` and ``dim``; every
    following line is ``{"id": ..., "vec": [...]}``.  The header must match
    ``kind`` and its fixed dimension; every vector must have exactly that
    many finite entries and a fresh id.
    """
    if kind not in KIND_DIMS:
        raise MalformedRecord(f"unknown vector kind {kind!r}")
    expected_dim = KIND_DIMS[kind]
    store = EmbeddingStore(kind=kind, dim=expected_dim)
    header_seen = False
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"line {lineno}: {exc}") from exc
        if not header_seen:
            if not isinstance(obj, dict) or "kind" not in obj or "dim" not in obj:
                raise MalformedRecord(f"line {lineno}: missing header")
            if obj["kind"] != kind:
                raise MalformedRecord(
                    f"line {lineno}: header kind {obj['kind']!r} != {kind!r}")
            if obj["dim"] != expected_dim:
                raise DimensionMismatch(
                    f"kind {kind!r} requires dim {expected_dim}, "
                    f"header says {obj['dim']!r}")
            header_seen = True
            continue
        if not isinstance(obj, dict) or "id" not in obj or "vec" not in obj:
            raise MalformedRecord(f"line {lineno}: missing id/vec")
        vec_id = str(obj["id"])
        if vec_id in store.vectors:
            raise DuplicateId(f"line {lineno}: {vec_id!r}")
        vec = obj["vec"]
        if not isinstance(vec, list) or len(vec) != expected_dim:
            raise DimensionMismatch(
                f"line {lineno}: {vec_id!r} has {len(vec) if isinstance(vec, list) else '?'} "
                f"entries, expected {expected_dim}")
        arr = np.asarray(vec, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise MalformedRecord(f"line {lineno}: non-finite entry in {vec_id!r}")
        store.vectors[vec_id] = arr
    if not header_seen:
        raise MalformedRecord("empty vector file: header line required")
    return store


def load_vectors_file(path: str, kind: str) -> EmbeddingStore:
    with open(path, encoding="utf-8") as fh:
        return load_vectors(fh, kind)


def write_vectors(store: EmbeddingStore, path: str) -> None:
    """Write a store back out, ids sorted, full round-trip precision."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"kind": store.kind, "dim": store.dim}))
        fh.write("\n")
        for vec_id in sorted(store.vectors):
            vec = [float(x) for x in store.vectors[vec_id]]
            fh.write(json.dumps({"id": vec_id, "vec": vec}))
            fh.write("\n")


def mood_store_from_corpus(corpus: CorpusStore) -> EmbeddingStore:
    """Build a mood store from per-track valence/arousal metadata."""
    store = EmbeddingStore(kind="mood", dim=2)
    for track_id, track in corpus.tracks.items():
        if track.mood is not None:
            store.vectors[track_id] = np.asarray(track.mood, dtype=np.float64)
    return store


# -- metric primitives --------------------------------------------------------

def cosine(u, v) -> float:
    """Cosine similarity in [-1, 1]; rejects zero vectors and mixed dims."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatch(f"{u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine undefined for a zero vector")
    value = float(np.dot(u, v)) / (nu * nv)
    return max(-1.0, min(1.0, value))


def semantic_similarity(a: str, b: str, store: EmbeddingStore) -> float:
    """Cosine similarity of two lyric sets' semantic vectors."""
    return cosine(store.get(a), store.get(b))


def audio_similarity(a: str, b: str, store: EmbeddingStore) -> float:
    """Cosine similarity of two tracks' audio vectors."""
    return cosine(store.get(a), store.get(b))


def mood_difference(a: str, b: str, store: EmbeddingStore) -> float:
    """Euclidean distance between two tracks' (valence, arousal) pairs."""
    va = store.get(a)
    vb = store.get(b)
    return math.hypot(float(va[0]) - float(vb[0]), float(va[1]) - float(vb[1]))
