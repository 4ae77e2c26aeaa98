"""Toolkit for d-independent sets in 1-planar graphs.

Generates the extremal graph families with machine-checkable certificates,
evaluates the closed-form upper bounds exactly, and confirms tightness with
an exact branch-and-bound solver at desk scale.
"""

__version__ = "0.1.0"
