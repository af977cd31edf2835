"""Rigorous computation toolkit for the 5-point energy phase transition:
exact interval/rational arithmetic, configuration-space searches with
certificates, polynomial positivity proofs, and the transition-exponent
bracket."""

__version__ = "1.0.0"
