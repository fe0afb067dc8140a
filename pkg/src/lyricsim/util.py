"""Shared IO helpers: canonical JSON, JSONL streams, file hashing."""

import hashlib
import json
import os
from typing import Any, Iterable, Iterator


def canonical_json(obj: Any) -> str:
    """Serialize deterministically: sorted keys, no whitespace padding.

    Floats go through ``repr`` (via json), which is shortest-round-trip in
    Python 3, so load(dump(x)) is bit-exact and equal inputs always yield
    byte-identical text.
    """
    return json.dumps(obj, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"), allow_nan=False)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(obj))
        fh.write("\n")


def read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_jsonl(path: str, records: Iterable[Any]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(canonical_json(rec))
            fh.write("\n")


def read_jsonl(path: str) -> Iterator[Any]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def stable_seed(base_seed: int, *parts: str) -> int:
    """Derive a per-item seed from a base seed and string parts.

    Uses blake2b, not ``hash()``, so the derivation survives interpreter
    restarts (PYTHONHASHSEED randomizes ``hash``).
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\x00")
    return (int.from_bytes(h.digest(), "big") ^ (base_seed & (2 ** 64 - 1))) & (2 ** 63 - 1)


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
