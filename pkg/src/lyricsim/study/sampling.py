"""Uniform sampling of cross-track lyric-set pairs."""

import random

from ..corpus import CorpusStore, count_feasible_pairs
from ..errors import NotEnoughPairs


def sample_pairs(store: CorpusStore, n: int, seed: int) -> list[tuple[str, str]]:
    """Draw n distinct cross-track pairs, uniform over the feasible pairs.

    Rejection sampling on uniform set-id pairs: same-track draws and
    already-seen pairs are rejected, so every feasible pair is equally
    likely.  Deterministic under the seed.
    """
    feasible = count_feasible_pairs(store)
    if n > feasible:
        raise NotEnoughPairs(f"requested {n} pairs, only {feasible} feasible")
    set_ids = store.sorted_set_ids()
    track_of = {sid: store.lyric_sets[sid].track_id for sid in set_ids}
    rng = random.Random(seed)
    seen: set[tuple[str, str]] = set()
    pairs: list[tuple[str, str]] = []
    count = len(set_ids)
    while len(pairs) < n:
        a = set_ids[rng.randrange(count)]
        b = set_ids[rng.randrange(count)]
        if a == b or track_of[a] == track_of[b]:
            continue
        pair = (a, b) if a < b else (b, a)
        if pair in seen:
            continue
        seen.add(pair)
        pairs.append(pair)
    return pairs
