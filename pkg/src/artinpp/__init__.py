"""Exact computations with pp formulas, dual modules and finitely presented
functors over finite-dimensional algebras over GF(p)."""

__version__ = "0.1.0"
