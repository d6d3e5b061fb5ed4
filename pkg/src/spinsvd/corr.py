"""The N x N matrix of two-point spin correlators <Sz_i Sz_j>."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import mps as mps_mod


@dataclass(eq=False)
class CorrelationMatrix:
    n_sites: int
    entries: np.ndarray  # symmetric, PSD
    provenance: str  # "ed-ground" | "mps" | "thermal(beta=...)"

    def trace(self):
        return float(np.trace(self.entries))

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.entries)[0])

    def row_sum_max(self):
        return float(np.max(np.abs(self.entries.sum(axis=1))))

    def circulant_deviation(self):
        """Largest |S_ij - S_kl| over pairs with equal (i-j) mod N."""
        n = self.n_sites
        dev = 0.0
        first = self.entries[0]
        for i in range(n):
            row = np.roll(self.entries[i], -i)
            dev = max(dev, float(np.max(np.abs(row - first))))
        return dev

    def validate(self):
        """Raise on violation of the structural invariants."""
        s = self.entries
        if not np.array_equal(s, s.T):
            raise ValueError("matrix not exactly symmetric")
        if np.max(np.abs(np.diag(s) - 0.25)) > 1e-12:
            raise ValueError("diagonal deviates from 1/4")
        if self.min_eigenvalue() < -1e-10:
            raise ValueError("matrix not positive semidefinite")
        if self.provenance == "ed-ground":
            if self.row_sum_max() > 1e-12:
                raise ValueError("ground-state row sums not zero")
            if self.circulant_deviation() > 1e-12:
                raise ValueError("ground-state matrix not circulant")


def _mirror(s):
    """Exact symmetry: keep the upper triangle, mirror it down."""
    return np.triu(s) + np.triu(s, 1).T


def build_from_wavefunction(wf):
    """Correlation matrix of a normalized sector wavefunction."""
    if wf.basis.sz_total != 0:
        warnings.warn(
            "wavefunction outside the S_z=0 sector: zero-row-sum invariant waived",
            stacklevel=2,
        )
        provenance = "ed-ground-sz!=0"
    else:
        provenance = "ed-ground"
    z = wf.basis.z_values()
    weighted = z * (wf.amps**2)[:, None]
    s = _mirror(weighted.T @ z)
    np.fill_diagonal(s, 0.25 * float(np.sum(wf.amps**2)))
    return CorrelationMatrix(wf.basis.n_sites, s, provenance)


def build_from_mps(state):
    """Correlation matrix of an (optimized) periodic MPS."""
    s = _mirror(mps_mod.correlation_matrix(state))
    return CorrelationMatrix(state.n_sites, s, "mps")


def build_thermal(spectrum, beta):
    """S_ij(beta) = Z^-1 sum_n e^{-beta E_n} <n|Sz_i Sz_j|n>.

    Each eigenstate contributes through its configuration-basis weights;
    Boltzmann factors use ground-energy subtraction for overflow safety.
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    n = spectrum.n_sites
    e0 = spectrum.energies[0]
    s = np.zeros((n, n))
    z_part = 0.0
    for sector in spectrum.sectors:
        w = np.exp(-beta * (sector.energies - e0))
        z_part += float(np.sum(w))
        if beta == 0.0:
            # trace is basis independent; summing configurations directly
            # keeps the exact +-1/4 cancellations of the identity weight
            q = np.ones(sector.basis.dim)
        else:
            q = (sector.vectors**2) @ w
        zvals = sector.basis.z_values()
        s += (zvals * q[:, None]).T @ zvals
    s = _mirror(s / z_part)
    return CorrelationMatrix(n, s, f"thermal(beta={beta:g})")
