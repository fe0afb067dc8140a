"""Phoneme feature table and consecutive-feature-pair counting."""

from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from ..errors import MalformedRecord, UnknownPhoneme

# Boundary pseudo-features attached before the first and after the last
# phoneme of a sequence.
BEG = "beg"
END = "end"

Pair = tuple[str, str]


class FeatureTable:
    """Maps each phoneme to its (sorted, deduplicated) feature tuple."""

    def __init__(self, mapping: dict[str, Iterable[str]]):
        self.features: dict[str, tuple[str, ...]] = {}
        for phoneme, feats in mapping.items():
            feats = tuple(sorted(set(feats)))
            if not feats:
                raise MalformedRecord(f"phoneme {phoneme!r} has no features")
            if BEG in feats or END in feats:
                raise MalformedRecord(
                    f"phoneme {phoneme!r} uses a reserved boundary feature")
            self.features[phoneme] = feats

    def __contains__(self, phoneme: str) -> bool:
        return phoneme in self.features

    def __getitem__(self, phoneme: str) -> tuple[str, ...]:
        try:
            return self.features[phoneme]
        except KeyError:
            raise UnknownPhoneme(phoneme) from None

    @property
    def symbols(self) -> set[str]:
        return set(self.features)


def parse_feature_table(source: Iterable[str]) -> FeatureTable:
    """Parse the table file format: ``PHONEME feat1,feat2,...``, '#' comments."""
    mapping: dict[str, list[str]] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise MalformedRecord(f"feature table line {lineno}: {raw.rstrip()!r}")
        phoneme, feats = parts
        mapping[phoneme] = [f for f in feats.replace(" ", "").split(",") if f]
    return FeatureTable(mapping)


def load_feature_table(path: Optional[str] = None) -> FeatureTable:
    """Load a table from ``path``, or the packaged default inventory."""
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return parse_feature_table(fh)
    text = resources.files("lyricsim.data").joinpath(
        "arpabet_features.txt").read_text(encoding="utf-8")
    return parse_feature_table(text.splitlines())


@dataclass
class FeaturePairCounts:
    """Sparse histogram of ordered (feature, feature) pairs."""

    counts: dict[Pair, int] = field(default_factory=dict)
    total: int = 0

    def frequency(self, pair: Pair) -> float:
        return self.counts.get(pair, 0) / self.total


def feature_pairs(phonemes: list[str], table: FeatureTable) -> FeaturePairCounts:
    """Count consecutive feature pairs over a phoneme sequence.

    The sequence is bracketed by {beg} and {end}; each adjacent pair of
    feature sets contributes its full Cartesian product, one count per
    element.  An empty sequence yields an empty histogram (total 0), with
    no boundary pair.
    """
    if not phonemes:
        return FeaturePairCounts()
    sets = [(BEG,)]
    sets.extend(table[p] for p in phonemes)
    sets.append((END,))
    counts: dict[Pair, int] = {}
    total = 0
    for left, right in zip(sets, sets[1:]):
        for f1 in left:
            for f2 in right:
                key = (f1, f2)
                counts[key] = counts.get(key, 0) + 1
        total += len(left) * len(right)
    return FeaturePairCounts(counts=counts, total=total)
