"""Preftree - preference-ordered maximum spanning tree models from Likert surveys."""

__version__ = "0.1.0"
