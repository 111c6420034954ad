"""Hermitian lattices over imaginary quadratic orders Z[sqrt(-p)] and O_K."""

__version__ = "0.1.0"
