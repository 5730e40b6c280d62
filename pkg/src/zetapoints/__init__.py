"""Locating a-points of the Riemann zeta function and evaluating the
explicit asymptotic formulas for sums of zeta-derivatives over them."""

__version__ = "0.1.0"
