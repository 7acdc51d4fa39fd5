"""Zero localization for Cauchy transforms of discrete measures.

Arbitrary-precision tools for functions f(z) = sum a_n mu_n^(1/2) / (z - t_n),
their entire counterparts F = A f, certified zero counting, disk-grid
localization statistics, polynomial density diagnostics in l2(mu) and
finite-stage canonical systems.
"""

__version__ = "0.1.0"

from .errors import (CauchylocError, DegenerateStage, InvalidInput, NumericalFailure,
                     PoleError, UnresolvedWinding)
from .measure import DiscreteMeasure, make_example, validate
from .products import CanonicalProduct, eval_product
from .cauchy import CauchyFunction, eval_F, eval_f
from .zeros import Circle, Rectangle, find_zeros, winding_count
from .localization import extract_attraction_set, localize, make_grid, ordering_check
from .density import borichev_sodin_test, density_residuals, hamburger_series
from .cansys import Hamiltonian, spectral_data, structure_pair, transfer

__all__ = [
    "CauchylocError", "DegenerateStage", "InvalidInput", "NumericalFailure", "PoleError",
    "UnresolvedWinding", "DiscreteMeasure", "make_example", "validate", "CanonicalProduct",
    "eval_product", "CauchyFunction", "eval_F", "eval_f", "Circle", "Rectangle",
    "find_zeros", "winding_count", "extract_attraction_set", "localize", "make_grid",
    "ordering_check", "borichev_sodin_test", "density_residuals", "hamburger_series",
    "Hamiltonian", "spectral_data", "structure_pair", "transfer",
]
