"""Quantum state transfer on XY qubit networks with energy shifts and disorder."""

from .analytic import Family, analytic_fidelity, pst_schedule
from .graph import Graph, complete, complete_minus_edge, count_geodesics, path, theta
from .hamiltonian import NoiseMode, NoiseSpec, apply_noise, build, full_space_oracle
from .kernels import BACKEND
from .noise import average_fidelity_sweep, shifted_vs_unshifted_comparison
from .search import maximize_fidelity
from .spectral import eigendecompose, fidelity, fidelity_trace, propagator

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Family",
    "Graph",
    "NoiseMode",
    "NoiseSpec",
    "analytic_fidelity",
    "apply_noise",
    "average_fidelity_sweep",
    "build",
    "complete",
    "complete_minus_edge",
    "count_geodesics",
    "eigendecompose",
    "fidelity",
    "fidelity_trace",
    "full_space_oracle",
    "maximize_fidelity",
    "path",
    "propagator",
    "pst_schedule",
    "shifted_vs_unshifted_comparison",
    "theta",
]
