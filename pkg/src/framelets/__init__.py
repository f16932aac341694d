"""
Complex tight framelet filter banks with optimal frequency separation.

Modules
-------
laurent     Laurent polynomial arithmetic.
spectral    Fejer-Riesz spectral factorization.
analysis    Tightness checks, the separation bound and the d_R, d_A, d_B report.
construct   Shortest-support tight banks from a low-pass filter.
optimize    Paraunitary lattice search that minimizes d_B.
render      Cascade evaluation and 2D tensor-product generators.
bankfile    Text format for filter banks.
cli         The ``framelets`` command.
"""
from .analysis import (FilterBank, SeparationReport, A_of, B_of, bspline_lowpass,
                       det_relation_check, optimal_pointwise, separation_report, verify_tight)
from .construct import ConstructParams, derive_shortest_bank, divide_with_window
from .laurent import LaurentPoly
from .optimize import (LatticeColumn, apply_column, objective_dB, optimize_bank, realify,
                       realize_column)
from .render import CascadeGrid, Grid2D, cascade_phi, export, tensor_generators, wavelet_from_phi
from .spectral import FactorizationResult, poly_roots, spectral_factorize

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "FilterBank", "SeparationReport", "FactorizationResult",
    "ConstructParams", "LatticeColumn", "CascadeGrid", "Grid2D",
    "A_of", "B_of", "bspline_lowpass", "det_relation_check", "optimal_pointwise",
    "separation_report", "verify_tight", "spectral_factorize", "poly_roots",
    "derive_shortest_bank", "divide_with_window", "optimize_bank", "realize_column",
    "apply_column", "realify", "objective_dB", "cascade_phi", "wavelet_from_phi",
    "tensor_generators", "export",
]
