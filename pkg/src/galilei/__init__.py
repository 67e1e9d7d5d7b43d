"""Exact-arithmetic toolkit for Galilei-invariant wave equations.

Constructs and verifies homogeneous-Galilei representations, solves the
invariance conditions for first-order wave operators, reproduces the
associated solution tables, and carries out the minimal/anomalous
coupling reductions -- all over Gaussian rationals with no tolerances.
"""

__version__ = "0.1.0"
