"""Half-space potential theory of the relativistic stable process.

Closed-form and quadrature evaluation of the transition density, Poisson
kernel, Green function, potential kernel and jump intensity, plus an exact
path sampler and Monte Carlo estimators used to cross-check the formulas.
"""

from relkernel._backend import backend_name

__version__ = "0.1.0"
__all__ = ["backend_name", "__version__"]
