"""Budget-constrained attribute recommendation over binary-attribute records."""

__version__ = "0.1.0"
