"""Project configuration: defaults, key-value config files, flag precedence.

Precedence is defaults < config file < explicit command-line flags.  The
defaults here are the single source of truth; the CLI builds its option
defaults from this table and a test asserts the help text matches it.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import MalformedRecord

# Flat key -> default. Keys double as config-file keys and CLI flag names
# (dashes for underscores).
DEFAULTS: dict[str, Any] = {
    "seed": 0,
    "jobs": 1,
    "lda_k": 50,
    "lda_alpha": 1.0,       # 50 / k at the default k
    "lda_beta": 0.01,
    "lda_iterations": 200,
    "lda_min_df": 3,
    "infer_burn_in": 50,
    "infer_samples": 10,
    "pca_dims": 50,
    "closeness_threshold": 0.99,
    "group_cap": 50,
    "top_k": 10,
    "weight_topic_sim": 0.0,
    "weight_semantic_sim": 0.65,
    "weight_mood_diff": 0.0,
    "weight_audio_sim": 0.48,
    "weight_phonetic_sim": 0.0,
    "weight_musical_diff": 0.74,
}

_TYPES = {key: type(value) for key, value in DEFAULTS.items()}


@dataclass
class ProjectConfig:
    values: dict[str, Any] = field(default_factory=lambda: dict(DEFAULTS))

    def get(self, key: str) -> Any:
        return self.values[key]


def parse_config(source, path: str = "<config>") -> dict[str, Any]:
    """Parse ``key = value`` lines; '#' starts a comment."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedRecord(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in DEFAULTS:
            raise MalformedRecord(f"{path}:{lineno}: unknown key {key!r}")
        typ = _TYPES[key]
        try:
            out[key] = typ(value) if typ is not bool else value.lower() in ("1", "true", "yes")
        except ValueError:
            raise MalformedRecord(
                f"{path}:{lineno}: cannot parse {value!r} as {typ.__name__}") from None
    return out


def load_config(path: Optional[str]) -> ProjectConfig:
    config = ProjectConfig()
    if path:
        with open(path, encoding="utf-8") as fh:
            config.values.update(parse_config(fh, path))
    return config
