"""Referring expression generation over a taxonomic knowledge base with a
hearer model."""

__version__ = "0.1.0"
