"""Exact subgroup growth of Fuchsian groups and arithmetic covolume bounds."""

__version__ = "0.1.0"
