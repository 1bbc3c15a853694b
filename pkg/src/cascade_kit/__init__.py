"""Cascades of strongly orthogonal roots and invariant theory of the nilradical n."""

__version__ = "0.1.0"
