"""H/M/L grouping of metric scores around the population mean."""

from typing import Sequence

import numpy as np

from ..errors import DegenerateDistribution
from .metrics import DIFFERENCE, MetricSpec


def group_by_metric(values: Sequence[float], spec: MetricSpec,
                    ) -> tuple[list[str], tuple[float, float]]:
    """Label each value H, M, or L relative to mean +/- one standard deviation.

    Values inside the closed interval [mu - sigma, mu + sigma] are M
    (population sigma).  Above it is H for similarity metrics and L for
    difference metrics, and symmetrically below.  Returns the labels plus
    the (mu - sigma, mu + sigma) boundaries.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise DegenerateDistribution(f"need >= 2 values, got {arr.size}")
    mu = float(arr.mean())
    sigma = float(arr.std(ddof=0))
    if sigma == 0.0:
        raise DegenerateDistribution("zero variance: no H/M/L structure")
    lo, hi = mu - sigma, mu + sigma
    above, below = ("H", "L") if spec.polarity != DIFFERENCE else ("L", "H")
    labels = []
    for v in arr:
        if v > hi:
            labels.append(above)
        elif v < lo:
            labels.append(below)
        else:
            labels.append("M")
    return labels, (lo, hi)
