"""Quasi-Hopf twistors for U_q(sl2): exact algebra and elliptic numerics."""

__version__ = "0.1.0"
