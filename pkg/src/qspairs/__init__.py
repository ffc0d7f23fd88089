"""Exact computer algebra for Drinfeld doubles of diagonal pre-Nichols
algebras: coideal subalgebras, star products, and quasi R/K-matrices."""

__version__ = "0.1.0"
