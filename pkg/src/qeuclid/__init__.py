"""Exact symbolic tools for quantum Euclidean spaces.

Builds the braid matrix and metric of the q-deformed orthogonal series,
the extended coordinate algebra with its normal-ordering rewrite system,
the two covariant differential calculi, frames with their dual inner
derivations, and the flat covariant derivatives -- and verifies every
structural identity as an exact zero residual.
"""

__version__ = "0.1.0"
