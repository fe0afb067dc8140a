"""Closeness control and H/M/L triple selection for survey questions."""

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .metrics import METRIC_NAMES, MetricSpec, MetricVector, PairRecord

GROUP_CAP = 50


def closeness(x: float, y: float, spec: MetricSpec) -> float:
    """Item closeness of two scores: 1 - |x - y| / (range width), in [0, 1]."""
    lo, hi = spec.require_range()
    value = 1.0 - abs(x - y) / (hi - lo)
    return max(0.0, min(1.0, value))


@dataclass
class TripleMember:
    set_id: str
    metrics: MetricVector


@dataclass
class Triple:
    """One survey question: a reference set plus H/M/L comparisons.

    ``pairwise_closeness`` certifies, for each non-target metric and each
    unordered comparison pair, that the two reference-relative scores are
    close; that is the constrained reading.  Each member also carries its
    raw reference-relative scores so the reference-side reading stays
    inspectable.
    """
    reference_id: str
    target: str
    threshold: float
    members: dict[str, TripleMember]            # "H"/"M"/"L" -> member
    pairwise_closeness: dict[str, dict[str, float]]  # metric -> "H-M" etc.
    min_closeness: float

    def as_dict(self) -> dict:
        return {
            "reference_id": self.reference_id,
            "target": self.target,
            "threshold": self.threshold,
            "members": {label: {"set_id": m.set_id, **m.metrics.as_dict()}
                        for label, m in sorted(self.members.items())},
            "pairwise_closeness": self.pairwise_closeness,
            "min_closeness": self.min_closeness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Triple":
        members = {label: TripleMember(set_id=m["set_id"],
                                       metrics=MetricVector.from_dict(m))
                   for label, m in data["members"].items()}
        return cls(reference_id=data["reference_id"], target=data["target"],
                   threshold=data["threshold"], members=members,
                   pairwise_closeness=data["pairwise_closeness"],
                   min_closeness=data["min_closeness"])


_PAIR_KEYS = (("H", "M"), ("H", "L"), ("M", "L"))


def _certificates(combo: dict[str, "_Candidate"], non_target: Sequence[str],
                  specs: dict[str, MetricSpec]) -> tuple[dict, float]:
    certs: dict[str, dict[str, float]] = {m: {} for m in non_target}
    lowest = 1.0
    for metric in non_target:
        spec = specs[metric]
        for ga, gb in _PAIR_KEYS:
            c = closeness(combo[ga].metrics.get(metric),
                          combo[gb].metrics.get(metric), spec)
            certs[metric][f"{ga}-{gb}"] = c
            lowest = min(lowest, c)
    return certs, lowest


@dataclass
class _Candidate:
    set_id: str
    target_value: float
    metrics: MetricVector


def select_triples(pool: Sequence[PairRecord], reference_id: str, target: str,
                   labels: Sequence[str], specs: dict[str, MetricSpec],
                   threshold: float = 0.99,
                   group_cap: int = GROUP_CAP) -> Optional[Triple]:
    """Pick one H, M, L comparison so all three are pairwise close on the
    five non-target metrics.

    ``pool`` holds the reference set's pair records; ``labels`` are their
    H/M/L assignments on the target metric.  Candidates missing any metric
    are skipped.  Each group is capped at ``group_cap`` candidates nearest
    its target-value centroid; the exhaustive search over H x M x L then
    maximizes the minimum pairwise closeness, requiring it to reach
    ``threshold``.  Ties go to the lexicographically smallest
    (H id, M id, L id).  Returns None when no feasible combination exists.
    """
    if target not in METRIC_NAMES:
        raise KeyError(target)
    non_target = [m for m in METRIC_NAMES if m != target]
    groups: dict[str, list[_Candidate]] = {"H": [], "M": [], "L": []}
    for rec, label in zip(pool, labels):
        other = rec.set_id_b if rec.set_id_a == reference_id else rec.set_id_a
        values = rec.metrics.as_dict()
        if any(values[m] is None for m in METRIC_NAMES):
            continue
        groups[label].append(_Candidate(set_id=other,
                                        target_value=values[target],
                                        metrics=rec.metrics))
    if not all(groups[g] for g in ("H", "M", "L")):
        return None

    for label, cands in groups.items():
        centroid = sum(c.target_value for c in cands) / len(cands)
        cands.sort(key=lambda c: (abs(c.target_value - centroid), c.set_id))
        del cands[group_cap:]
        cands.sort(key=lambda c: c.set_id)

    best: Optional[tuple[float, dict, dict]] = None
    for h, m, low in itertools.product(groups["H"], groups["M"], groups["L"]):
        combo = {"H": h, "M": m, "L": low}
        certs, lowest = _certificates(combo, non_target, specs)
        if lowest < threshold:
            continue
        if best is None or lowest > best[0]:
            best = (lowest, combo, certs)
    if best is None:
        return None
    lowest, combo, certs = best
    return Triple(
        reference_id=reference_id, target=target, threshold=threshold,
        members={label: TripleMember(set_id=c.set_id, metrics=c.metrics)
                 for label, c in combo.items()},
        pairwise_closeness=certs, min_closeness=lowest)


def verify_triple(triple: Triple, specs: dict[str, MetricSpec]) -> bool:
    """Recompute a triple's certificates and check them against its threshold."""
    non_target = [m for m in METRIC_NAMES if m != triple.target]
    for metric in non_target:
        spec = specs[metric]
        for ga, gb in _PAIR_KEYS:
            c = closeness(triple.members[ga].metrics.get(metric),
                          triple.members[gb].metrics.get(metric), spec)
            if c < triple.threshold:
                return False
            stored = triple.pairwise_closeness[metric][f"{ga}-{gb}"]
            if abs(stored - c) > 1e-12:
                return False
    return True
