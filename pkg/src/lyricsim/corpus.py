"""Corpus ingestion: tracks, lyric sections, tokenization, phonemization.

The corpus is built once from line-delimited track records plus a
CMU-style pronunciation lexicon, then treated as immutable.  Each track
carries one or more lyric sections; a section (a :class:`LyricSet`) is the
unit every similarity metric operates on.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

from .errors import DuplicateTrackId, MalformedRecord
from . import util

GENRES = ("rock", "pop", "country", "hip-hop", "electronic", "rnb", "other")

# Aliases seen in the wild for the genre labels above.
_GENRE_ALIASES = {
    "r&b": "rnb", "rb": "rnb", "hiphop": "hip-hop", "hip hop": "hip-hop",
    "edm": "electronic",
}

STORE_FORMAT_VERSION = 1


@dataclass
class Track:
    track_id: str
    title: str
    artist: str
    genre: str
    mood: Optional[tuple[float, float]]  # (valence, arousal)
    lyric_set_ids: list[str] = field(default_factory=list)


@dataclass
class LyricSet:
    set_id: str
    track_id: str
    section_index: int
    lines: list[str]
    tokens: list[str]
    phonemes: list[str]
    phoneme_coverage: float


class PronunciationLexicon:
    """Word -> phoneme-list mapping with case-insensitive lookup."""

    def __init__(self, entries: Optional[dict[str, list[str]]] = None):
        self.entries: dict[str, list[str]] = entries or {}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word.upper() in self.entries

    def lookup(self, word: str) -> Optional[list[str]]:
        return self.entries.get(word.upper())


@dataclass
class IngestStats:
    track_count: int
    lyric_set_count: int
    mean_sections_per_track: float
    mean_phoneme_coverage: float


@dataclass
class CorpusStore:
    tracks: dict[str, Track]
    lyric_sets: dict[str, LyricSet]
    ingest_stats: IngestStats
    warnings: dict[str, int] = field(default_factory=dict)

    def sorted_set_ids(self) -> list[str]:
        return sorted(self.lyric_sets)


@dataclass
class LexiconError:
    line_number: int
    message: str


def parse_lexicon(source: Iterable[str],
                  valid_symbols: Optional[set[str]] = None,
                  ) -> tuple[PronunciationLexicon, list[LexiconError]]:
    """Parse a CMU-dictionary-style stream into a lexicon.

    Line format is ``WORD  PH1 PH2 ...`` with ``WORD(2)``-style variant
    entries and ``;;;`` comment lines.  Stress digits are stripped; only the
    first pronunciation of a word is kept.  Bad lines (a word with no
    phonemes, or a token that is not an ARPABET-shaped symbol) are skipped
    and reported with their line number.

    ``valid_symbols``, when given, additionally restricts phonemes to that
    inventory (use the feature table's symbol set to guarantee downstream
    compatibility).
    """
    entries: dict[str, list[str]] = {}
    errors: list[LexiconError] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith(";;;"):
            continue
        parts = line.split()
        word = parts[0]
        if word.endswith(")") and "(" in word:
            word = word[:word.index("(")]
        if not word:
            errors.append(LexiconError(lineno, "missing word"))
            continue
        if len(parts) < 2:
            errors.append(LexiconError(lineno, f"no phonemes for {word!r}"))
            continue
        phonemes = []
        bad = None
        for tok in parts[1:]:
            base = tok[:-1] if tok and tok[-1] in "012" else tok
            if not base or not base.isalpha() or not base.isupper():
                bad = tok
                break
            if valid_symbols is not None and base not in valid_symbols:
                bad = tok
                break
            phonemes.append(base)
        if bad is not None:
            errors.append(LexiconError(lineno, f"unparseable phoneme {bad!r}"))
            continue
        # First pronunciation wins; later variants of the same word are dropped.
        entries.setdefault(word.upper(), phonemes)
    return PronunciationLexicon(entries), errors


def tokenize(lines: Iterable[str]) -> list[str]:
    """Split lyric lines into lowercase word tokens.

    Apostrophes survive inside a word ("don't"); every other non-letter
    character separates.  Purely-apostrophe runs vanish.
    """
    tokens = []
    for line in lines:
        word: list[str] = []
        for ch in line.lower() + " ":
            if ch.isalpha() or ch == "'":
                word.append(ch)
            elif word:
                tok = "".join(word).strip("'")
                if tok:
                    tokens.append(tok)
                word.clear()
    return tokens


def phonemize(tokens: list[str], lexicon: PronunciationLexicon,
              ) -> tuple[list[str], float]:
    """Concatenate lexicon pronunciations of the tokens, in order.

    Out-of-vocabulary tokens are skipped.  Returns the phoneme sequence and
    the covered-token fraction (1.0 for an empty token list).
    """
    phonemes: list[str] = []
    covered = 0
    for tok in tokens:
        pron = lexicon.lookup(tok)
        if pron is not None:
            phonemes.extend(pron)
            covered += 1
    coverage = covered / len(tokens) if tokens else 1.0
    return phonemes, coverage


def ingest_corpus(records: Iterable[dict], lexicon: PronunciationLexicon,
                  ) -> CorpusStore:
    """Build an immutable corpus store from track records.

    Each record is a mapping with ``track_id``, ``title``, ``artist``,
    ``genre``, optional ``valence``/``arousal``, and ``sections`` (a list of
    lists of lines).  Sections with no non-blank line are skipped and
    tallied under the ``empty_sections`` warning; unknown genres map to
    ``other`` under ``unknown_genres``.
    """
    tracks: dict[str, Track] = {}
    lyric_sets: dict[str, LyricSet] = {}
    warnings = {"empty_sections": 0, "unknown_genres": 0}
    coverage_sum = 0.0

    for rec in records:
        try:
            track_id = str(rec["track_id"])
            sections = rec["sections"]
        except (KeyError, TypeError) as exc:
            raise MalformedRecord(f"track record missing field: {exc}") from exc
        if track_id in tracks:
            raise DuplicateTrackId(track_id)
        if not isinstance(sections, list) or not sections:
            raise MalformedRecord(f"track {track_id!r} has no sections")

        genre = str(rec.get("genre", "other")).lower()
        genre = _GENRE_ALIASES.get(genre, genre)
        if genre not in GENRES:
            warnings["unknown_genres"] += 1
            genre = "other"

        mood = None
        if rec.get("valence") is not None and rec.get("arousal") is not None:
            mood = (float(rec["valence"]), float(rec["arousal"]))

        track = Track(track_id=track_id, title=str(rec.get("title", "")),
                      artist=str(rec.get("artist", "")), genre=genre, mood=mood)
        for index, lines in enumerate(sections):
            lines = [str(x) for x in lines]
            if not any(line.strip() for line in lines):
                warnings["empty_sections"] += 1
                continue
            tokens = tokenize(lines)
            phonemes, coverage = phonemize(tokens, lexicon)
            set_id = f"{track_id}:{index:03d}"
            lyric_sets[set_id] = LyricSet(
                set_id=set_id, track_id=track_id, section_index=index,
                lines=lines, tokens=tokens, phonemes=phonemes,
                phoneme_coverage=coverage)
            track.lyric_set_ids.append(set_id)
            coverage_sum += coverage
        tracks[track_id] = track

    n_tracks, n_sets = len(tracks), len(lyric_sets)
    stats = IngestStats(
        track_count=n_tracks,
        lyric_set_count=n_sets,
        mean_sections_per_track=(n_sets / n_tracks) if n_tracks else 0.0,
        mean_phoneme_coverage=(coverage_sum / n_sets) if n_sets else 0.0,
    )
    return CorpusStore(tracks=tracks, lyric_sets=lyric_sets,
                       ingest_stats=stats, warnings=warnings)


def count_feasible_pairs(store: CorpusStore) -> int:
    """Number of cross-track lyric-set pairs: C(N,2) minus same-track pairs."""
    n_total = len(store.lyric_sets)
    same = sum(len(t.lyric_set_ids) * (len(t.lyric_set_ids) - 1) // 2
               for t in store.tracks.values())
    return n_total * (n_total - 1) // 2 - same


# -- persistence -------------------------------------------------------------

def save_store(store: CorpusStore, directory: str) -> None:
    """Write the store as a manifest plus two JSONL files, sorted by id.

    Serialization is canonical (sorted keys, shortest-round-trip floats), so
    identical stores always produce byte-identical directories.
    """
    util.ensure_dir(directory)
    util.write_json(f"{directory}/manifest.json", {
        "format_version": STORE_FORMAT_VERSION,
        "ingest_stats": vars(store.ingest_stats),
        "warnings": store.warnings,
    })
    util.write_jsonl(f"{directory}/tracks.jsonl", (
        {"track_id": t.track_id, "title": t.title, "artist": t.artist,
         "genre": t.genre, "mood": list(t.mood) if t.mood else None,
         "lyric_set_ids": t.lyric_set_ids}
        for _, t in sorted(store.tracks.items())))
    util.write_jsonl(f"{directory}/lyric_sets.jsonl", (
        {"set_id": s.set_id, "track_id": s.track_id,
         "section_index": s.section_index, "lines": s.lines,
         "tokens": s.tokens, "phonemes": s.phonemes,
         "phoneme_coverage": s.phoneme_coverage}
        for _, s in sorted(store.lyric_sets.items())))


def load_store(directory: str) -> CorpusStore:
    manifest = util.read_json(f"{directory}/manifest.json")
    if manifest.get("format_version") != STORE_FORMAT_VERSION:
        raise MalformedRecord(
            f"unsupported store format {manifest.get('format_version')!r}")
    tracks = {}
    for rec in util.read_jsonl(f"{directory}/tracks.jsonl"):
        mood = tuple(rec["mood"]) if rec.get("mood") else None
        tracks[rec["track_id"]] = Track(
            track_id=rec["track_id"], title=rec["title"], artist=rec["artist"],
            genre=rec["genre"], mood=mood, lyric_set_ids=rec["lyric_set_ids"])
    lyric_sets = {}
    for rec in util.read_jsonl(f"{directory}/lyric_sets.jsonl"):
        lyric_sets[rec["set_id"]] = LyricSet(
            set_id=rec["set_id"], track_id=rec["track_id"],
            section_index=rec["section_index"], lines=rec["lines"],
            tokens=rec["tokens"], phonemes=rec["phonemes"],
            phoneme_coverage=rec["phoneme_coverage"])
    stats = IngestStats(**manifest["ingest_stats"])
    return CorpusStore(tracks=tracks, lyric_sets=lyric_sets,
                       ingest_stats=stats,
                       warnings=manifest.get("warnings", {}))


def read_track_records(source: TextIO) -> Iterable[dict]:
    """Iterate the line-delimited track-record input format."""
    import json
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"line {lineno}: {exc}") from exc
        if not isinstance(rec, dict):
            raise MalformedRecord(f"line {lineno}: expected an object")
        yield rec
