"""
hpzo Configuration - settings.yml loading with HPZO_* environment overrides.
"""

from .settings import EnvironmentOverrides, Settings, get_settings, settings

__all__ = ["EnvironmentOverrides", "Settings", "get_settings", "settings"]
