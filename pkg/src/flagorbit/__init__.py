"""Exact classification of Borel orbits on Lagrangian Grassmannians of
U(n,n) and Sp(2n,R), with clan atlases and real-fiber data."""

__version__ = "0.1.0"
