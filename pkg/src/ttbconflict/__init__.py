"""Collision timing for vehicles flying uncertain turn-to-bearing maneuvers."""

__version__ = "0.1.0"
