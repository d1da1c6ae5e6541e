"""Exact computations in affine q-Schur algebras and their tensor-space representation."""

__version__ = "0.1.0"
