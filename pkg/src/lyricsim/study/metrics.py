"""Metric registry: the six per-pair scores and their range/polarity specs."""

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from ..errors import UnresolvedRange

METRIC_NAMES = ("topic_sim", "semantic_sim", "mood_diff",
                "audio_sim", "phonetic_sim", "musical_diff")

SIMILARITY = "similarity"
DIFFERENCE = "difference"


@dataclass(frozen=True)
class MetricSpec:
    """Name, polarity, and score range of one metric.

    Bounded metrics carry analytic (lo, hi); unbounded difference metrics
    leave them None until resolved empirically over a reference population.
    """
    name: str
    polarity: str
    lo: Optional[float] = None
    hi: Optional[float] = None

    @property
    def resolved(self) -> bool:
        return self.lo is not None and self.hi is not None

    def require_range(self) -> tuple[float, float]:
        if not self.resolved or self.lo >= self.hi:
            raise UnresolvedRange(f"metric {self.name!r} has no usable range")
        return self.lo, self.hi

    def resolve(self, values: Sequence[float]) -> "MetricSpec":
        """Fill lo/hi from an observed population (no-op when analytic)."""
        if self.resolved:
            return self
        if not values:
            raise UnresolvedRange(f"no values to resolve range of {self.name!r}")
        return replace(self, lo=float(min(values)), hi=float(max(values)))


def default_metric_specs() -> dict[str, MetricSpec]:
    # Cosines of nonnegative topic distributions live in [0, 1]; general
    # cosines in [-1, 1]; the two difference metrics are unbounded above
    # and get empirical ranges.
    return {
        "topic_sim": MetricSpec("topic_sim", SIMILARITY, 0.0, 1.0),
        "semantic_sim": MetricSpec("semantic_sim", SIMILARITY, -1.0, 1.0),
        "mood_diff": MetricSpec("mood_diff", DIFFERENCE),
        "audio_sim": MetricSpec("audio_sim", SIMILARITY, -1.0, 1.0),
        "phonetic_sim": MetricSpec("phonetic_sim", SIMILARITY, -1.0, 1.0),
        "musical_diff": MetricSpec("musical_diff", DIFFERENCE),
    }


@dataclass
class MetricVector:
    """The six per-pair scores; None marks a metric unavailable for the pair."""
    topic_sim: Optional[float] = None
    semantic_sim: Optional[float] = None
    mood_diff: Optional[float] = None
    audio_sim: Optional[float] = None
    phonetic_sim: Optional[float] = None
    musical_diff: Optional[float] = None

    def get(self, name: str) -> Optional[float]:
        if name not in METRIC_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    def as_dict(self) -> dict[str, Optional[float]]:
        return {name: getattr(self, name) for name in METRIC_NAMES}

    @classmethod
    def from_dict(cls, data: dict) -> "MetricVector":
        return cls(**{name: data.get(name) for name in METRIC_NAMES})


@dataclass
class PairRecord:
    """A cross-track lyric-set pair and its metric scores, ids sorted."""
    set_id_a: str
    set_id_b: str
    metrics: MetricVector

    def __post_init__(self):
        if self.set_id_a >= self.set_id_b:
            raise ValueError("pair ids must satisfy set_id_a < set_id_b")

    def as_dict(self) -> dict:
        return {"set_id_a": self.set_id_a, "set_id_b": self.set_id_b,
                **self.metrics.as_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "PairRecord":
        return cls(set_id_a=data["set_id_a"], set_id_b=data["set_id_b"],
                   metrics=MetricVector.from_dict(data))


def resolve_specs(specs: dict[str, MetricSpec],
                  records: Sequence[PairRecord]) -> dict[str, MetricSpec]:
    """Resolve empirical ranges over the available values of a sample."""
    out = {}
    for name, spec in specs.items():
        if spec.resolved:
            out[name] = spec
        else:
            values = [r.metrics.get(name) for r in records
                      if r.metrics.get(name) is not None]
            out[name] = spec.resolve(values)
    return out


def specs_to_dict(specs: dict[str, MetricSpec]) -> dict:
    return {name: {"polarity": s.polarity, "lo": s.lo, "hi": s.hi}
            for name, s in sorted(specs.items())}


def specs_from_dict(data: dict) -> dict[str, MetricSpec]:
    return {name: MetricSpec(name, d["polarity"], d.get("lo"), d.get("hi"))
            for name, d in data.items()}
