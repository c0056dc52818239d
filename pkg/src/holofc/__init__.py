"""holofc: functional calculi for finite-dimensional model operators.

Strip/sector/parabola contour calculi, Phillips and principal-value
calculi, transference-inequality verification on discretized vector-valued
Lp spaces, and a cosine-function/phase-space layer, with a batch CLI.
"""

from . import measures, norms, operators, regions, symbols  # noqa: F401

__version__ = "0.1.0"
