"""Phoneme-bigram repetition ratio and the derived musical-difference metric."""

from ..errors import TooShort


def repetition_ratio(phonemes: list[str]) -> float:
    """Unique bigrams over total bigrams, in (0, 1].

    Lower values mean heavier repetition.  Requires at least one bigram.
    """
    if len(phonemes) < 2:
        raise TooShort(f"need >= 2 phonemes, got {len(phonemes)}")
    bigrams = list(zip(phonemes, phonemes[1:]))
    return len(set(bigrams)) / len(bigrams)


def musical_difference(a: list[str], b: list[str]) -> float:
    """Repetition-degree gap plus the repetition ratio of the concatenation.

    The concatenation is plain, in argument order, with no separator, so the
    result is slightly order-sensitive through the junction bigram; the
    absolute-difference term is exactly symmetric.  Strictly positive even
    for identical inputs, and below 2.
    """
    ra = repetition_ratio(a)
    rb = repetition_ratio(b)
    return abs(ra - rb) + repetition_ratio(a + b)
