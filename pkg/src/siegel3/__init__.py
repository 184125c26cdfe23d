"""Exact and numerical toolkit for the computable objects attached to
three-variable spectral series on the degree-3 Siegel space: branch-correct
power functions, the degree-3 gamma factor, lattice summation identities,
Eisenstein/Epstein series, Minkowski reduction and automorphism counts,
the dihedral functional-equation group, Koecher-Maass series, and truncated
symplectic coset sums."""

__version__ = "0.1.0"
