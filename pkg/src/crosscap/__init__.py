"""Crosscap numbers of knots from triangulated knot complements via normal surfaces."""

__version__ = "0.1.0"
