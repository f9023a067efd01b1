"""
Quantum-probe metrology for dephasing environments.

Computes dephasing rates of a qubit (or d-level probe) coupled to an Ohmic-like
bosonic bath, the resulting Fisher and quantum Fisher information for the
ohmicity parameter s, optimal interaction times, and simulates measurement
based estimation of s to check the Cramér-Rao bound.
"""

__version__ = "0.1.0"
