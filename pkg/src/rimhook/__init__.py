"""Longest increasing subsequences of random colored and signed permutations."""

__version__ = "0.1.0"
