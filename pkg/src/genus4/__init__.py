"""Point-count bounds for genus-4 curves over finite fields with fewer than 100 elements."""

__version__ = "0.1.0"
