"""Statistics: Pearson r, its two-sided p-value, rank summaries, correlation
matrices.

The t machinery is self-contained (regularized incomplete beta via Lentz
continued fractions, quantile by bisection) so results are deterministic and
the test suite can check them against independent oracles.
"""

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ..errors import (DegenerateInput, InsufficientSamples, MalformedRecord)
from .metrics import METRIC_NAMES, PairRecord

_CF_MAX_ITER = 300
_CF_EPS = 3e-16
_FPMIN = 1e-300


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise DegenerateInput(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                     + a * math.log(x) + b * math.log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: float) -> float:
    """Upper-tail probability P(T >= t) of the t distribution."""
    x = df / (df + t * t)
    half_tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return half_tail if t >= 0 else 1.0 - half_tail


def student_t_quantile(p: float, df: float) -> float:
    """Inverse CDF for p in (0.5, 1), by bisection on the tail probability."""
    if not 0.5 < p < 1.0:
        raise DegenerateInput(f"quantile level {p} outside (0.5, 1)")
    tail = 1.0 - p
    hi = 1.0
    while student_t_sf(hi, df) > tail:
        hi *= 2.0
        if hi > 1e300:
            raise DegenerateInput("t quantile out of range")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if student_t_sf(mid, df) > tail:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation, clamped to [-1, 1]."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateInput("inputs must be equal-length vectors")
    if x.size < 3:
        raise DegenerateInput(f"need >= 3 samples, got {x.size}")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt(np.dot(xc, xc)))
    sy = float(np.sqrt(np.dot(yc, yc)))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInput("zero variance input")
    r = float(np.dot(xc, yc)) / (sx * sy)
    return max(-1.0, min(1.0, r))


def p_value(r: float, n: int) -> float:
    """Two-sided p for Pearson r under the t-test with n-2 df.

    Uses the identity p = I_{1-r^2}(df/2, 1/2); |r| = 1 gives 0.
    """
    if n < 3:
        raise InsufficientSamples(f"need n >= 3, got {n}")
    if abs(r) > 1.0 + 1e-12:
        raise DegenerateInput(f"|r| = {abs(r)} exceeds 1")
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return 0.0
    df = n - 2
    return regularized_incomplete_beta(df / 2.0, 0.5, 1.0 - r * r)


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    p: float
    n: int


def correlation_with_p(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    r = pearson(x, y)
    return CorrelationResult(r=r, p=p_value(r, len(x)), n=len(x))


# -- cross-metric correlation matrix ------------------------------------------

@dataclass
class CorrelationMatrix:
    names: tuple[str, ...]
    r: np.ndarray  # (6, 6); nan marks an absent cell
    n: np.ndarray  # (6, 6) int

    def as_dict(self) -> dict:
        cells = {}
        for i, a in enumerate(self.names):
            for j, b in enumerate(self.names):
                val = self.r[i, j]
                cells[f"{a}|{b}"] = {
                    "r": None if math.isnan(val) else float(val),
                    "n": int(self.n[i, j]),
                }
        return {"names": list(self.names), "cells": cells}


def metric_correlation_matrix(records: Sequence[PairRecord]) -> CorrelationMatrix:
    """Pairwise Pearson r between metrics over a pair sample.

    Each cell uses the records where both metrics are available; cells with
    fewer than 3 such records or zero variance are reported absent (nan).
    The diagonal is exactly 1.
    """
    k = len(METRIC_NAMES)
    r = np.full((k, k), np.nan)
    n = np.zeros((k, k), dtype=np.int64)
    columns = {name: np.array([np.nan if rec.metrics.get(name) is None
                               else rec.metrics.get(name) for rec in records])
               for name in METRIC_NAMES}
    for i, a in enumerate(METRIC_NAMES):
        r[i, i] = 1.0
        n[i, i] = int(np.sum(~np.isnan(columns[a])))
        for j in range(i + 1, k):
            b = METRIC_NAMES[j]
            mask = ~np.isnan(columns[a]) & ~np.isnan(columns[b])
            n[i, j] = n[j, i] = int(mask.sum())
            if mask.sum() < 3:
                continue
            try:
                val = pearson(columns[a][mask], columns[b][mask])
            except DegenerateInput:
                continue
            r[i, j] = r[j, i] = val
    return CorrelationMatrix(names=METRIC_NAMES, r=r, n=n)


# -- human-ranking analysis ----------------------------------------------------

GROUP_LABELS = ("H", "M", "L")


@dataclass(frozen=True)
class RankRecord:
    question_id: str
    rater_id: str
    group: str  # H / M / L
    rank: int   # 1 (most similar) .. 3


def read_rankings(source: Iterable[str]) -> list[RankRecord]:
    """Parse the rankings CSV (header: question_id, rater_id, group_label,
    rank) and check that each (question, rater) ranks H/M/L with a
    permutation of {1, 2, 3}."""
    reader = csv.DictReader(source)
    required = {"question_id", "rater_id", "group_label", "rank"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise MalformedRecord(f"rankings header must contain {sorted(required)}")
    records = []
    for i, row in enumerate(reader, start=2):
        group = row["group_label"].strip().upper()
        if group not in GROUP_LABELS:
            raise MalformedRecord(f"line {i}: bad group {row['group_label']!r}")
        try:
            rank = int(row["rank"])
        except ValueError:
            raise MalformedRecord(f"line {i}: bad rank {row['rank']!r}") from None
        if rank not in (1, 2, 3):
            raise MalformedRecord(f"line {i}: rank {rank} outside 1..3")
        records.append(RankRecord(question_id=row["question_id"].strip(),
                                  rater_id=row["rater_id"].strip(),
                                  group=group, rank=rank))
    by_question_rater: dict[tuple[str, str], list[int]] = {}
    for rec in records:
        by_question_rater.setdefault((rec.question_id, rec.rater_id),
                                     []).append(rec.rank)
    for key, ranks in by_question_rater.items():
        if sorted(ranks) != [1, 2, 3]:
            raise MalformedRecord(
                f"question/rater {key} ranks {sorted(ranks)} are not a "
                "permutation of [1, 2, 3]")
    return records


@dataclass(frozen=True)
class RankSummary:
    group: str
    mean: float
    ci_lo: float
    ci_hi: float
    n: int


def rank_summary(records: Sequence[RankRecord], group: str) -> RankSummary:
    """Mean rank of one group with its 95% confidence interval."""
    ranks = np.array([rec.rank for rec in records if rec.group == group],
                     dtype=np.float64)
    if ranks.size < 2:
        raise InsufficientSamples(
            f"group {group!r} has {ranks.size} records, need >= 2")
    mean = float(ranks.mean())
    sd = float(ranks.std(ddof=1))
    half = student_t_quantile(0.975, ranks.size - 1) * sd / math.sqrt(ranks.size)
    return RankSummary(group=group, mean=mean, ci_lo=mean - half,
                       ci_hi=mean + half, n=int(ranks.size))


def metric_rank_correlation(
        joined: dict[str, list[tuple[float, int]]],
) -> dict[str, Optional[CorrelationResult]]:
    """Pearson r (+p, n) between each metric's values and received ranks.

    ``joined`` maps metric name -> (metric value, rank) pairs from the
    questions targeting that metric.  Sign is not adjusted: with rank 1
    meaning most similar, similarity metrics come out negative and
    difference metrics positive.  Degenerate metrics yield None.
    """
    out: dict[str, Optional[CorrelationResult]] = {}
    for name in METRIC_NAMES:
        rows = joined.get(name, [])
        if len(rows) < 3:
            out[name] = None
            continue
        values = [v for v, _ in rows]
        ranks = [float(r) for _, r in rows]
        try:
            out[name] = correlation_with_p(values, ranks)
        except DegenerateInput:
            out[name] = None
    return out
