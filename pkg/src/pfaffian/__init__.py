"""Singular holomorphic foliations in the plane: reduction, classification,
holonomy and Rolle-compatibility of their Levi-flat companions."""

__version__ = "0.1.0"
