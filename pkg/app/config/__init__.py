"""Configuration module for the symplectic quandle toolkit."""
from .settings import settings, get_settings

__all__ = ["settings", "get_settings"]
