"""Finite Gowers FIN_k theorem machinery."""
__version__ = "0.1.0"
