"""Exact enumeration of anisotropic self-avoiding polygons, section
reduction of their vertical-bond structure, and the Hadamard recurrence
built from 2-4-2 blocks."""

__version__ = "0.1.0"
