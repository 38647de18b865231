"""Coherent Calculus - coherent-state transforms and the functional calculus they induce."""

__version__ = "0.1.0"
