"""Corpus runner and build benchmark."""
