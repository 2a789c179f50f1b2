"""lcarank: log-Chebyshev ratings of alternatives from pairwise comparisons."""

__version__ = "0.1.0"
