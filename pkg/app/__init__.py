"""Symplectic quandle toolkit."""
