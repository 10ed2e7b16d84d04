"""Embedded Springer data packs."""
