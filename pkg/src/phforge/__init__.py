"""Planar Pythagorean-hodograph curve toolkit.

Curves are complex-valued polynomials on [0,1]; the package provides the
induced inner-product geometry (norm, distance, angle), Householder-based
orthogonal curve systems, bounded constraint-preserving shape
modification, and arc-length adjustment, with a CLI and a stateless HTTP
service on top.
"""

__version__ = "0.1.0"
