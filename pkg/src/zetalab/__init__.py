"""zetalab: numerical experiments on critical-line zeta level sets.

Subpackages cover prime block schedules, fast zeta evaluation, the
deterministic prime random walk with its mollifiers and barrier windows,
the steinhaus random model with exponential tilting, separable twist
polynomials, Dirichlet L central values in the q-aspect, and a CLI that
assembles the lower-bound pipeline.
"""

__version__ = "0.1.0"

from .accel import USE_NUMBA, backend_name

__all__ = ["USE_NUMBA", "backend_name", "__version__"]
