"""Closed vocabularies used by lexicon entries, IR components and scoring."""

FREQUENCIES = ("never", "sometimes", "always")
STRENGTHS = ("weak", "medium", "strong")
NUANCE_TYPES = ("emphasis", "suggestion", "implication", "denotation")
ATTITUDES = ("pejorative", "neutral", "favorable")
LEVELS = ("low", "neutral", "high")

DEFAULT_FREQUENCY = "always"
DEFAULT_STRENGTH = "medium"

# Numeric position of a style level; style penalties are distances on this axis.
LEVEL_VALUES = {"low": -1, "neutral": 0, "high": 1}
