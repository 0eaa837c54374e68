"""Exact computations in Nichols-Woronowicz algebras of the complex reflection groups G(e,1,n)."""

__version__ = "0.1.0"
