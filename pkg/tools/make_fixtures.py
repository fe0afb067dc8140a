#!/usr/bin/env python3
"""Regenerate the checked-in test fixtures (corpus, lexicon, vector files).

Everything is seeded, so reruns are byte-identical.  The corpus is 20
tracks x 4 sections over a themed vocabulary: themes give the topic model
and the semantic/audio vectors recoverable structure, and the lexicon
covers every word so phoneme coverage is 1.0.

Usage: python tools/make_fixtures.py [outdir]   (default tests/fixtures)
"""

import json
import os
import sys

import numpy as np

# word -> ARPABET pronunciation (stress digits included, as a real lexicon
# would carry them; the parser strips them).
PRONUNCIATIONS = {
    "love": "L AH1 V", "heart": "HH AA1 R T", "baby": "B EY1 B IY0",
    "girl": "G ER1 L", "boy": "B OY1", "kiss": "K IH1 S",
    "hold": "HH OW1 L D", "tight": "T AY1 T", "tonight": "T AH0 N AY1 T",
    "forever": "F ER0 EH1 V ER0", "eyes": "AY1 Z", "hand": "HH AE1 N D",
    "soul": "S OW1 L",
    "night": "N AY1 T", "dance": "D AE1 N S", "floor": "F L AO1 R",
    "beat": "B IY1 T", "drum": "D R AH1 M", "music": "M Y UW1 Z IH0 K",
    "party": "P AA1 R T IY0", "club": "K L AH1 B", "bass": "B EY1 S",
    "rhythm": "R IH1 DH AH0 M", "move": "M UW1 V", "body": "B AA1 D IY0",
    "sweat": "S W EH1 T", "midnight": "M IH1 D N AY2 T",
    "road": "R OW1 D", "home": "HH OW1 M", "train": "T R EY1 N",
    "town": "T AW1 N", "river": "R IH1 V ER0", "truck": "T R AH1 K",
    "dust": "D AH1 S T", "ride": "R AY1 D", "wheels": "W IY1 L Z",
    "highway": "HH AY1 W EY2", "miles": "M AY1 L Z",
    "engine": "EH1 N JH AH0 N", "smoke": "S M OW1 K",
    "money": "M AH1 N IY0", "gold": "G OW1 L D",
    "diamond": "D AY1 M AH0 N D", "chains": "CH EY1 N Z",
    "hustle": "HH AH1 S AH0 L", "street": "S T R IY1 T",
    "city": "S IH1 T IY0", "cash": "K AE1 SH", "bank": "B AE1 NG K",
    "stack": "S T AE1 K", "paper": "P EY1 P ER0", "grind": "G R AY1 N D",
    "boss": "B AO1 S", "crown": "K R AW1 N", "king": "K IH1 NG",
    "queen": "K W IY1 N", "throne": "TH R OW1 N",
    "dream": "D R IY1 M", "stars": "S T AA1 R Z", "moon": "M UW1 N",
    "sky": "S K AY1", "rain": "R EY1 N", "tears": "T IH1 R Z",
    "cry": "K R AY1", "shine": "SH AY1 N", "glow": "G L OW1",
    "ocean": "OW1 SH AH0 N", "wave": "W EY1 V", "fly": "F L AY1",
    "free": "F R IY1", "sun": "S AH1 N", "summer": "S AH1 M ER0",
    "winter": "W IH1 N T ER0", "cold": "K OW1 L D",
    "morning": "M AO1 R N IH0 NG", "light": "L AY1 T", "fire": "F AY1 ER0",
    "burn": "B ER1 N", "flame": "F L EY1 M",
    "the": "DH AH0", "a": "AH0", "and": "AE1 N D", "in": "IH0 N",
    "my": "M AY1", "your": "Y AO1 R", "we": "W IY1", "you": "Y UW1",
    "i": "AY1", "me": "M IY1", "on": "AA1 N", "of": "AH1 V",
    "to": "T UW1", "all": "AO1 L", "like": "L AY1 K", "away": "AH0 W EY1",
    "down": "D AW1 N", "up": "AH1 P", "never": "N EH1 V ER0",
    "always": "AO1 L W EY2 Z", "gone": "G AO1 N", "lost": "L AO1 S T",
    "found": "F AW1 N D", "know": "N OW1", "feel": "F IY1 L",
    "take": "T EY1 K", "make": "M EY1 K", "way": "W EY1", "day": "D EY1",
    "life": "L AY1 F", "world": "W ER1 L D", "again": "AH0 G EH1 N",
    "oh": "OW1", "yeah": "Y AE1",
}

THEMES = {
    "love": ["love", "heart", "baby", "girl", "boy", "kiss", "hold", "tight",
             "tonight", "forever", "eyes", "hand", "soul"],
    "dance": ["night", "dance", "floor", "beat", "drum", "music", "party",
              "club", "bass", "rhythm", "move", "body", "sweat", "midnight"],
    "road": ["road", "home", "train", "town", "river", "truck", "dust",
             "ride", "wheels", "highway", "miles", "engine", "smoke"],
    "money": ["money", "gold", "diamond", "chains", "hustle", "street",
              "city", "cash", "bank", "stack", "paper", "grind", "boss",
              "crown", "king", "queen", "throne"],
    "sky": ["dream", "stars", "moon", "sky", "rain", "tears", "cry", "shine",
            "glow", "ocean", "wave", "fly", "free", "sun", "summer",
            "winter", "cold", "morning", "light", "fire", "burn", "flame"],
}

FUNCTION_WORDS = ["the", "a", "and", "in", "my", "your", "we", "you", "i",
                  "me", "on", "of", "to", "all", "like", "away", "down",
                  "up", "never", "always", "gone", "lost", "found", "know",
                  "feel", "take", "make", "way", "day", "life", "world",
                  "again", "oh", "yeah"]

GENRES = ["rock", "pop", "country", "hip-hop", "electronic", "rnb"]

SEED = 20240901
N_TRACKS = 20
SECTIONS_PER_TRACK = 4
LINES_PER_SECTION = 4


def make_line(rng, theme_words, other_words):
    n = int(rng.integers(5, 8))
    words = []
    for _ in range(n):
        roll = rng.random()
        if roll < 0.62:
            words.append(theme_words[int(rng.integers(len(theme_words)))])
        elif roll < 0.85:
            words.append(FUNCTION_WORDS[int(rng.integers(len(FUNCTION_WORDS)))])
        else:
            words.append(other_words[int(rng.integers(len(other_words)))])
    return " ".join(words)


def make_corpus(rng):
    theme_names = sorted(THEMES)
    records = []
    for t in range(N_TRACKS):
        theme = theme_names[t % len(theme_names)]
        other = theme_names[(t + 1 + t // len(theme_names)) % len(theme_names)]
        sections = []
        for _ in range(SECTIONS_PER_TRACK):
            lines = [make_line(rng, THEMES[theme], THEMES[other])
                     for _ in range(LINES_PER_SECTION)]
            if rng.random() < 0.35:
                lines[2] = lines[0]  # chorus-style repetition
            sections.append(lines)
        valence = float(np.round(rng.uniform(-2, 2), 2))
        arousal = float(np.round(rng.uniform(-2, 2), 2))
        records.append({
            "track_id": f"t{t:02d}",
            "title": f"{theme.title()} Song {t:02d}",
            "artist": f"The {other.title()} Band",
            "genre": GENRES[t % len(GENRES)],
            "valence": valence,
            "arousal": arousal,
            "sections": sections,
        })
    # pin one mood pair to a hand-checkable sad-song value
    records[0]["valence"], records[0]["arousal"] = -1.94, -0.66
    return records, theme_names


def rounded(vec, places=4):
    return [float(np.round(x, places)) for x in vec]


def main(outdir="tests/fixtures"):
    os.makedirs(outdir, exist_ok=True)
    rng = np.random.default_rng(SEED)

    records, theme_names = make_corpus(rng)
    with open(f"{outdir}/corpus.jsonl", "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")

    with open(f"{outdir}/lexicon.txt", "w", encoding="utf-8") as fh:
        fh.write(";;; fixture pronunciation lexicon\n")
        for word in sorted(PRONUNCIATIONS):
            fh.write(f"{word.upper()}  {PRONUNCIATIONS[word]}\n")

    # semantic vectors: per-theme centroid + noise, keyed by lyric-set id
    centroids = {name: rng.standard_normal(384) for name in theme_names}
    with open(f"{outdir}/semantic.jsonl", "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"kind": "semantic", "dim": 384}) + "\n")
        for t, rec in enumerate(records):
            theme = theme_names[t % len(theme_names)]
            for s in range(SECTIONS_PER_TRACK):
                vec = centroids[theme] + 0.45 * rng.standard_normal(384)
                fh.write(json.dumps({"id": f"{rec['track_id']}:{s:03d}",
                                     "vec": rounded(vec)}) + "\n")

    # audio vectors: per-genre centroid + noise, keyed by track id
    genre_centroids = {g: rng.standard_normal(200) for g in GENRES}
    with open(f"{outdir}/audio.jsonl", "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"kind": "audio", "dim": 200}) + "\n")
        for rec in records:
            vec = genre_centroids[rec["genre"]] + 0.5 * rng.standard_normal(200)
            fh.write(json.dumps({"id": rec["track_id"],
                                 "vec": rounded(vec)}) + "\n")

    # mood vectors mirror the corpus metadata exactly
    with open(f"{outdir}/mood.jsonl", "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"kind": "mood", "dim": 2}) + "\n")
        for rec in records:
            fh.write(json.dumps({"id": rec["track_id"],
                                 "vec": [rec["valence"], rec["arousal"]]})
                     + "\n")

    print(f"fixtures written to {outdir}")


if __name__ == "__main__":
    main(*sys.argv[1:])
