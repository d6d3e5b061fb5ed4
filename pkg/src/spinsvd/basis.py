"""Spin-1/2 ring restricted to a fixed total-S_z sector.

Configurations are stored as integers: bit i set means spin up at site i.
The Hamiltonian is the isotropic antiferromagnetic exchange on a periodic
chain, applied matrix-free through precomputed per-bond flip tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .errors import InvalidSizeError

ED_SITE_CAP = 20


@dataclass(frozen=True, eq=False)
class SectorBasis:
    """All configurations of an n_sites ring with fixed total S_z, sorted."""

    n_sites: int
    sz_total: float
    configs: np.ndarray  # int64, strictly increasing

    def __len__(self):
        return len(self.configs)

    @property
    def dim(self):
        return len(self.configs)

    def index_of(self, config):
        """Position of a configuration in the sorted list."""
        pos = int(np.searchsorted(self.configs, config))
        if pos >= len(self.configs) or self.configs[pos] != config:
            raise KeyError(f"configuration {config:#x} not in sector")
        return pos

    def z_values(self):
        """(dim, n_sites) array of S^z eigenvalues (+-1/2) per site."""
        shifts = np.arange(self.n_sites, dtype=np.int64)
        bits = (self.configs[:, None] >> shifts[None, :]) & 1
        return bits.astype(np.float64) - 0.5


@dataclass(eq=False)
class Wavefunction:
    """Real amplitude vector over a sector basis."""

    basis: SectorBasis
    amps: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def normalized(self):
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize zero wavefunction")
        return Wavefunction(self.basis, self.amps / n)


def enumerate_sector(n_sites, sz_total=0):
    """Enumerate all configurations with popcount = n_sites/2 + sz_total.

    Returns an empty basis when sz_total is unattainable.
    """
    if n_sites % 2 != 0 or n_sites < 4:
        raise InvalidSizeError(f"n_sites must be even and >= 4, got {n_sites}")
    n_up_f = n_sites / 2 + sz_total
    n_up = int(round(n_up_f))
    if abs(n_up_f - n_up) > 1e-12 or n_up < 0 or n_up > n_sites:
        configs = np.empty(0, dtype=np.int64)
    else:
        configs = np.fromiter(
            (sum(1 << p for p in combo) for combo in combinations(range(n_sites), n_up)),
            dtype=np.int64,
            count=comb(n_sites, n_up),
        )
        configs.sort()
    return SectorBasis(n_sites, sz_total, configs)


def neel_config(n_sites):
    """The smaller-integer Neel configuration (up spins on even sites)."""
    return sum(1 << i for i in range(0, n_sites, 2))


class _BondTables:
    """Per-bond diagonal energies and spin-flip index maps for one sector."""

    def __init__(self, basis):
        n = basis.n_sites
        z = basis.z_values()
        bonds = [(i, (i + 1) % n) for i in range(n)]
        self.diagonal = np.zeros(basis.dim)
        self.flips = []  # (source indices, target indices) per bond
        for i, j in bonds:
            self.diagonal += z[:, i] * z[:, j]
            mask = (1 << i) | (1 << j)
            anti = (z[:, i] * z[:, j]) < 0  # bits differ on the bond
            src = np.nonzero(anti)[0]
            flipped = basis.configs[src] ^ mask
            tgt = np.searchsorted(basis.configs, flipped)
            self.flips.append((src, tgt))


_tables_cache = {}


def _tables(basis):
    key = (basis.n_sites, basis.sz_total)
    if key not in _tables_cache:
        _tables_cache[key] = _BondTables(basis)
    return _tables_cache[key]


def apply_hamiltonian(wf, j_coupling=1.0):
    """H|wf> for H = J sum_i [Sz_i Sz_{i+1} + (S+_i S-_{i+1} + h.c.)/2].

    The result is unnormalized and stays in the same S_z sector.
    """
    tab = _tables(wf.basis)
    out = tab.diagonal * wf.amps
    for src, tgt in tab.flips:
        out[tgt] += 0.5 * wf.amps[src]
    return Wavefunction(wf.basis, j_coupling * out)


def apply_hamiltonian_to_array(basis, amps, j_coupling=1.0):
    """Array-in array-out version of apply_hamiltonian (hot path helper)."""
    tab = _tables(basis)
    out = tab.diagonal * amps
    for src, tgt in tab.flips:
        out[tgt] += 0.5 * amps[src]
    if j_coupling != 1.0:
        out *= j_coupling
    return out


def dense_hamiltonian(basis, j_coupling=1.0):
    """Dense sector Hamiltonian matrix (small sectors only)."""
    tab = _tables(basis)
    h = np.diag(tab.diagonal)
    for src, tgt in tab.flips:
        h[tgt, src] += 0.5
    return j_coupling * h


def correlator_zz(wf, i, j):
    """<wf| Sz_i Sz_j |wf>; diagonal in the configuration basis."""
    n = wf.basis.n_sites
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"site index out of range for n_sites={n}")
    z = wf.basis.z_values()
    return float(np.sum(wf.amps**2 * z[:, i] * z[:, j]))
