"""Moldable task scheduling toolkit for (delta, k)-monotonic tasks."""

__version__ = "1.0.0"
__author__ = "MoldSched Team"
