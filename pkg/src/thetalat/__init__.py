"""Exact Siegel theta coefficients for even lattices, plus congruence verifiers."""
