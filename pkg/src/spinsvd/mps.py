"""Periodic-boundary matrix product state optimized site by site.

The state is |psi> = sum_s tr(A_1^{s_1} ... A_N^{s_N}) |s_1...s_N> with
site-dependent chi x chi real matrices. Each local update solves the
generalized eigenproblem H_eff |A> = E N_eff |A> on the 2*chi^2 vector of
one site's tensor, with all other tensors fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError

_SZ = np.diag([-0.5, 0.5])
_SP = np.array([[0.0, 0.0], [1.0, 0.0]])  # <up|S+|down> = 1
_SM = _SP.T
_I2 = np.eye(2)

# N_eff regularization: relative identity shift and relative cutoff below
# which Gram directions are projected out (PBC Gram matrices are routinely
# near-singular).
_NEFF_EPS = 1e-10
_NEFF_CUTOFF = 1e-8


@dataclass
class SweepReport:
    sweep_index: int
    energy: float
    energy_change: float
    spectrum_change: float | None = None


@dataclass(eq=False)
class MpsState:
    n_sites: int
    chi: int
    tensors: np.ndarray  # shape (n_sites, 2, chi, chi)

    def copy(self):
        return MpsState(self.n_sites, self.chi, self.tensors.copy())


def _transfer(a, op=None):
    """Doubled transfer matrix sum_{s',s} op[s',s] kron(A^{s'}, A^{s})."""
    if op is None:
        return np.kron(a[0], a[0]) + np.kron(a[1], a[1])
    out = 0.0
    for sp in range(2):
        for s in range(2):
            if op[sp, s] != 0.0:
                out = out + op[sp, s] * np.kron(a[sp], a[s])
    return out


def _transfer_set(state):
    """Plain, Sz-, S+- and S--inserted transfer matrices for every site."""
    e, ez, ep, em = [], [], [], []
    for a in state.tensors:
        e.append(_transfer(a))
        ez.append(_transfer(a, _SZ))
        ep.append(_transfer(a, _SP))
        em.append(_transfer(a, _SM))
    return e, ez, ep, em


def _update_transfer_set(ts, state, k):
    e, ez, ep, em = ts
    a = state.tensors[k]
    e[k] = _transfer(a)
    ez[k] = _transfer(a, _SZ)
    ep[k] = _transfer(a, _SP)
    em[k] = _transfer(a, _SM)


def _env_to_quadratic(g, chi):
    """Ring environment (b'b, a'a) -> matrix on the site vector (a'b', ab)."""
    return g.reshape(chi, chi, chi, chi).transpose(2, 0, 3, 1).reshape(chi * chi, chi * chi)


def _site_matrices(ts, k, n_sites, chi, j_coupling):
    """Effective H and Gram matrix for the tensor at site k.

    One pass around the ring (sites k+1 ... k+N-1) accumulates the plain
    product, the interior Hamiltonian bonds, and the two bonds touching k.
    """
    e, ez, ep, em = ts
    d2 = chi * chi
    js = [(k + 1 + t) % n_sites for t in range(n_sites - 1)]

    p = np.eye(d2)
    q = np.zeros((d2, d2))
    rz = rp = rm = None
    fz = fp = fm = None
    glz = glp = glm = None

    for idx, j in enumerate(js):
        last = idx == len(js) - 1
        q = q @ e[j]
        if rz is not None:
            q += rz @ ez[j] + 0.5 * (rp @ em[j] + rm @ ep[j])
        if last:
            glz, glp, glm = p @ ez[j], p @ ep[j], p @ em[j]
            rz = rp = rm = None
        else:
            rz, rp, rm = p @ ez[j], p @ ep[j], p @ em[j]
        if idx == 0:
            fz, fp, fm = ez[j], ep[j], em[j]
        else:
            fz, fp, fm = fz @ e[j], fp @ e[j], fm @ e[j]
        p = p @ e[j]

    heff = (
        np.kron(_I2, _env_to_quadratic(q, chi))
        + np.kron(_SZ, _env_to_quadratic(fz + glz, chi))
        + 0.5 * np.kron(_SP, _env_to_quadratic(fm + glm, chi))
        + 0.5 * np.kron(_SM, _env_to_quadratic(fp + glp, chi))
    )
    heff *= j_coupling
    neff = np.kron(_I2, _env_to_quadratic(p, chi))
    heff = 0.5 * (heff + heff.T)
    neff = 0.5 * (neff + neff.T)
    return heff, neff


def random_init(n_sites, chi, seed=0):
    """Random MPS with nonzero norm; identical tensors for identical seeds."""
    if chi < 1:
        raise ValueError("chi must be >= 1")
    for attempt in range(8):
        rng = np.random.default_rng(seed + attempt)
        tensors = rng.standard_normal((n_sites, 2, chi, chi)) / np.sqrt(chi)
        state = MpsState(n_sites, chi, tensors)
        n2 = norm_squared(state)
        if np.isfinite(n2) and n2 > 1e-300:
            state.tensors *= n2 ** (-0.5 / n_sites)
            return state
    raise RuntimeError("could not draw a finite-norm random MPS in 8 attempts")


def norm_squared(state):
    """<psi|psi> = tr of the ring product of plain transfer matrices."""
    prod = None
    for a in state.tensors:
        t = _transfer(a)
        prod = t if prod is None else prod @ t
    return float(np.trace(prod))


def energy(state, j_coupling=1.0):
    """Rayleigh quotient <psi|H|psi>/<psi|psi>."""
    ts = _transfer_set(state)
    heff, neff = _site_matrices(ts, 0, state.n_sites, state.chi, j_coupling)
    x = state.tensors[0].reshape(-1)
    denom = float(x @ neff @ x)
    if abs(denom) < 1e-300:
        raise ConditioningError("state norm vanishes")
    return float(x @ heff @ x) / denom


def _solve_site(heff, neff):
    """Lowest generalized eigenpair on the well-conditioned Gram subspace."""
    dim = neff.shape[0]
    shift = _NEFF_EPS * np.trace(neff) / dim
    d, v = np.linalg.eigh(neff + shift * np.eye(dim))
    keep = d > _NEFF_CUTOFF * d[-1]
    if not np.any(keep):
        raise ConditioningError(
            f"all {dim} Gram directions below cutoff (max eigenvalue {d[-1]:.3e})"
        )
    w = v[:, keep] / np.sqrt(d[keep])
    ht = w.T @ heff @ w
    ht = 0.5 * (ht + ht.T)
    evals, y = np.linalg.eigh(ht)
    x = w @ y[:, 0]
    return float(evals[0]), x


def optimize_site(state, site, j_coupling=1.0, transfer_set=None):
    """Replace one site tensor by the locally optimal one; returns energy.

    Mutates state in place. The returned value is the new global Rayleigh
    quotient (equal to the generalized eigenvalue of the local problem).
    """
    ts = transfer_set if transfer_set is not None else _transfer_set(state)
    heff, neff = _site_matrices(ts, site, state.n_sites, state.chi, j_coupling)
    x_old = state.tensors[site].reshape(-1)
    e_old = float(x_old @ heff @ x_old) / float(x_old @ neff @ x_old)
    _, x = _solve_site(heff, neff)
    n2 = float(x @ neff @ x)
    if not np.isfinite(n2) or n2 <= 0:
        raise ConditioningError(f"updated site has non-positive norm {n2:.3e}")
    e_new = float(x @ heff @ x) / n2
    if e_new >= e_old:
        # the projected subspace can miss part of the current tensor when
        # Gram directions are discarded; never accept an energy rise
        return e_old
    x = x / np.sqrt(n2)
    state.tensors[site] = x.reshape(2, state.chi, state.chi)
    _update_transfer_set(ts, state, site)
    return e_new


def sweep_optimize(state, j_coupling=1.0, n_sweeps=40, track_spectrum=False):
    """Sequential site-by-site optimization, n_sweeps full forward passes.

    Energy converges within a few sweeps; the correlation-matrix spectrum
    needs many more, so track_spectrum records its relative change per
    sweep when requested.
    """
    state = state.copy()
    ts = _transfer_set(state)
    reports = []
    prev_energy = np.inf
    prev_spec = None
    for sweep in range(n_sweeps):
        e_sweep = None
        for site in range(state.n_sites):
            e_sweep = optimize_site(state, site, j_coupling, transfer_set=ts)
        spec_change = None
        if track_spectrum:
            lam = np.sort(np.linalg.eigvalsh(correlation_matrix(state)))[::-1] ** 2
            if prev_spec is not None:
                denom = np.maximum(np.abs(prev_spec), 1e-300)
                spec_change = float(np.max(np.abs(lam - prev_spec) / denom))
            prev_spec = lam
        change = e_sweep - prev_energy if np.isfinite(prev_energy) else np.nan
        reports.append(SweepReport(sweep, e_sweep, change, spec_change))
        prev_energy = e_sweep
    return state, reports


def mps_correlator_zz(state, i, j):
    """<Sz_i Sz_j> on the (not necessarily normalized) MPS."""
    n = state.n_sites
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"site index out of range for n_sites={n}")
    num = None
    den = None
    for site, a in enumerate(state.tensors):
        t = _transfer(a)
        if i == j == site:
            m = 0.25 * t  # (Sz)^2 = identity/4
        elif site in (i, j):
            m = _transfer(a, _SZ)
        else:
            m = t
        num = m if num is None else num @ m
        den = t if den is None else den @ t
    n2 = float(np.trace(den))
    if abs(n2) < 1e-300:
        raise ConditioningError("state norm vanishes")
    return float(np.trace(num)) / n2


def correlation_matrix(state):
    """All <Sz_i Sz_j> entries, using prefix/suffix transfer products."""
    n = state.n_sites
    e = [_transfer(a) for a in state.tensors]
    ez = [_transfer(a, _SZ) for a in state.tensors]

    suffix = [None] * (n + 1)
    suffix[n] = np.eye(e[0].shape[0])
    for m in range(n - 1, -1, -1):
        suffix[m] = e[m] @ suffix[m + 1]
    n2 = float(np.trace(suffix[0]))
    if abs(n2) < 1e-300:
        raise ConditioningError("state norm vanishes")

    out = np.empty((n, n))
    prefix = np.eye(e[0].shape[0])
    for i in range(n):
        out[i, i] = 0.25
        left = prefix @ ez[i]
        for j in range(i + 1, n):
            val = float(np.trace(left @ ez[j] @ suffix[j + 1])) / n2
            out[i, j] = val
            out[j, i] = val
            left = left @ e[j]
        prefix = prefix @ e[i]
    return out
