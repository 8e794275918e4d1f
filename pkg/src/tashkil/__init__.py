"""Arabic diacritic normalization, validation, statistics and diacritization."""

__version__ = "0.1.0"
