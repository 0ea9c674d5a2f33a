"""Clamped transmission eigenvalues of planar domains by boundary integrals.

Modules: :mod:`specfun` (cylinder functions), :mod:`geometry` (boundary
curves), :mod:`bie` (Nystrom layer operators and holomorphic families),
:mod:`nep` (contour-integral eigensolver), :mod:`dtn` (Dirichlet-to-Neumann
symbols), :mod:`oracle` (disk reference spectra), :mod:`spectrum` and
:mod:`cli` (reports and the command line).
"""
from .geometry import from_name
from .spectrum import SolverParams, build_report, compute_spectrum

__version__ = "0.1.0"

__all__ = ["from_name", "SolverParams", "build_report", "compute_spectrum", "__version__"]
