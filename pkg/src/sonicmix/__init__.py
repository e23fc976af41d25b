"""Offline sound-effect synthesis from recorded assets and Mixer Script."""

__version__ = "0.1.0"
