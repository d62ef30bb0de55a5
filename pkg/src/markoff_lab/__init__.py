"""Orbit structure of Markoff-type cubic surfaces over prime fields."""

__version__ = "0.1.0"
