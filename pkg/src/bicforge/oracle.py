"""Brute-force oracle: dense finite-difference diagonalization in a hard-wall box.

Independent of every solver in the package: 3-point Laplacian, central
first difference for the linear-in-p term (exactly Hermitian by
construction), Dirichlet walls. Deliberately dense and size-capped; the
point is trust, not scale. Hard walls (not periodic) avoid momentum
quantization accidentally coinciding with the real poles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .errors import GridTooLarge
from .grids import Grid, SpinorField
from .models import BandModel
from .potentials import PotentialSpec, sample_potential

MAX_DENSE_DIM = 16384


@dataclass(frozen=True)
class FdHamiltonian:
    grid: Grid
    n_bands: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_residual(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())


@dataclass(frozen=True)
class LocalizationMetrics:
    ipr: float
    tail_mass: float


def assemble(model: BandModel, grid: Grid,
             potential: PotentialSpec | Sequence | None) -> FdHamiltonian:
    """Dense Hermitian matrix of H on the grid; raises GridTooLarge beyond
    16384 rows. Real-valued models come back as float64 (faster eigh)."""
    n, nb = grid.n_points, model.n_bands
    dim = n * nb
    if dim > MAX_DENSE_DIM:
        raise GridTooLarge(f"dense oracle refuses {dim} > {MAX_DENSE_DIM} rows")
    dx = grid.dx
    m = model.mass
    kin = 1.0 / (2.0 * m * dx * dx)
    eye = np.eye(nb)
    diag_block = 2.0 * kin * eye + model.a0
    hop_up = -kin * eye + (-1j / (2.0 * dx)) * model.a1
    hop_dn = -kin * eye + (+1j / (2.0 * dx)) * model.a1

    h = np.zeros((n, nb, n, nb), dtype=complex)
    ii = np.arange(n)
    h[ii, :, ii, :] = diag_block
    h[ii[:-1], :, ii[1:], :] = hop_up
    h[ii[1:], :, ii[:-1], :] = hop_dn

    if potential is not None:
        if isinstance(potential, (list, tuple)):
            for ch, spec in enumerate(potential):
                if spec is None:
                    continue
                h[ii, ch, ii, ch] += sample_potential(spec, grid)
        else:
            v = sample_potential(potential, grid)
            h[ii, :, ii, :] += v[:, None, None] * model.b

    mat = h.reshape(dim, dim)
    if np.abs(mat.imag).max() == 0.0:
        mat = mat.real.copy()
    return FdHamiltonian(grid=grid, n_bands=nb, matrix=mat)


def spectrum(h: FdHamiltonian) -> np.ndarray:
    """All eigenvalues, ascending."""
    return eigvalsh(h.matrix)


def eigen_near(h: FdHamiltonian, e_target: float, k: int
               ) -> list[tuple[float, SpinorField]]:
    """k eigenpairs nearest e_target, eigenvectors normalized to unit norm^2.

    Two passes: values everywhere, then vectors only for the selected index
    range (subset eigensolver).
    """
    if k > 20:
        raise ValueError("k must be <= 20 (oracle stays small and checkable)")
    values = eigvalsh(h.matrix)
    order = np.argsort(np.abs(values - e_target), kind="stable")
    chosen = np.sort(order[:k])
    lo, hi = int(chosen[0]), int(chosen[-1])
    vals, vecs = eigh(h.matrix, subset_by_index=(lo, hi))
    out = []
    for idx in chosen:
        j = idx - lo
        psi = vecs[:, j].reshape(h.grid.n_points, h.n_bands).astype(complex)
        nrm = np.sqrt(np.sum(np.abs(psi) ** 2) * h.grid.dx)
        psi /= nrm
        out.append((float(vals[j]), SpinorField(grid=h.grid, values=psi)))
    out.sort(key=lambda t: abs(t[0] - e_target))
    return out


def localization(state: SpinorField, x_cut: float) -> LocalizationMetrics:
    """Inverse participation ratio and the norm fraction beyond |x| > x_cut."""
    grid = state.grid
    if not (0 <= x_cut <= grid.x_max):
        raise ValueError("x_cut must lie within the grid")
    dens = state.density
    dx = grid.dx
    total = float(np.sum(dens) * dx)
    ipr = float(np.sum(dens ** 2) * dx / total ** 2)
    outside = np.abs(grid.x) > x_cut
    tail = float(np.sum(dens[outside]) * dx / total)
    return LocalizationMetrics(ipr=ipr, tail_mass=tail)
