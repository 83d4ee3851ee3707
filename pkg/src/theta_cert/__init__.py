"""Exact resultant certificates and ball-arithmetic checks for theta-constant relations."""

__version__ = "0.1.0"
