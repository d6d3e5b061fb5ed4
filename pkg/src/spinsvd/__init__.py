"""Heisenberg-ring solvers and SVD analysis of spin correlation matrices."""

from .basis import SectorBasis, Wavefunction, apply_hamiltonian, correlator_zz, enumerate_sector
from .corr import CorrelationMatrix, build_from_mps, build_from_wavefunction, build_thermal
from .exact import FullSpectrum, GroundSolution, full_spectrum, lanczos_ground_state
from .mps import MpsState, energy, mps_correlator_zz, optimize_site, random_init, sweep_optimize
from .svd_analysis import (
    ScalingFit,
    SvdSpectrum,
    component,
    degeneracy_pairs,
    dominant_wavenumber,
    eigendecompose,
    fit_scaling,
    haar_transform,
    kernel_reconstruct,
    measure_domain_size,
)

__all__ = [
    "SectorBasis",
    "Wavefunction",
    "enumerate_sector",
    "apply_hamiltonian",
    "correlator_zz",
    "GroundSolution",
    "FullSpectrum",
    "lanczos_ground_state",
    "full_spectrum",
    "MpsState",
    "random_init",
    "energy",
    "optimize_site",
    "sweep_optimize",
    "mps_correlator_zz",
    "CorrelationMatrix",
    "build_from_wavefunction",
    "build_from_mps",
    "build_thermal",
    "SvdSpectrum",
    "ScalingFit",
    "eigendecompose",
    "component",
    "degeneracy_pairs",
    "dominant_wavenumber",
    "measure_domain_size",
    "fit_scaling",
    "kernel_reconstruct",
    "haar_transform",
]
