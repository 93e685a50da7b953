"""Numerical verification lab for moments of Dirichlet L-functions.

Everything here is explicitly computable at desk scale: Dirichlet
characters and their Gauss sums, Kloosterman-type exponential sums,
Voronoi summation for twisted divisor functions, rigorous L-function
evaluation, truncated Laurent residue calculus for the main-term
polynomials, shifted convolution sums, and quadrature of the fourth
moment along the critical line.
"""

__version__ = "0.1.0"
