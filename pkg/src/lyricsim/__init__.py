"""lyricsim: lyric similarity metrics, experiment pipeline, and recommender."""

__version__ = "0.1.0"
