"""Corpus exploration toolkit: entity co-occurrence networks and temporal
entity-term streams built from annotated text collections."""

__version__ = "0.1.0"
