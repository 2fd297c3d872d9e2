"""Self-consistent bound-state solver psi = Int G_E(x-x') V(x') B psi(x') dx'.

Discretized on a uniform grid with trapezoid weights, the right-hand side
becomes a dense (nN x nN) map M(E); solutions are fixed points, found by
tracking the eigenvalue of M(E) nearest 1 and root-finding its crossing of
1 as the energy sweeps the mixed-pole window.

M has block Toeplitz structure (the kernel depends on x_i - x_j only), so
the solver applies it through FFT convolutions instead of materializing the
matrix; assemble_map builds the explicit dense matrix for inspection and
cross-checks. Both paths share the same kernel samples and weights.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.fft import fft, ifft, next_fast_len
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigs

from .errors import GridTooCoarse, NoNearUnitEigenvalue, NoSolutionInRange
from .green import GreenKernel, residue_green
from .grids import Grid, SpinorField
from .models import BandModel
from .potentials import PotentialSpec, decay_scale, sample_potential

MAX_PHASE_STEP = 0.3          # dx * p_real above this cannot resolve the sine
ACCEPT_EIG_DISTANCE = 0.5     # |lambda - 1| beyond this is "no solution here"
RESIDUAL_LIMIT = 1e-6


@dataclass(frozen=True)
class SolveReport:
    """One accepted fixed point of the discretized map."""

    energy: float
    operator_eigenvalue: complex
    state: SpinorField
    fixed_point_residual: float


def _source_factors(model: BandModel, grid: Grid,
                    potential: PotentialSpec | Sequence) -> np.ndarray:
    """Per-site matrix factors F_j = V(x_j) B w_j (or diag(V_i(x_j)) w_j)."""
    n, nb = grid.n_points, model.n_bands
    w = grid.weights
    if isinstance(potential, (list, tuple)):
        if len(potential) != nb:
            raise ValueError("need one potential entry per channel")
        f = np.zeros((n, nb, nb))
        for ch, spec in enumerate(potential):
            if spec is None:
                continue
            f[:, ch, ch] = sample_potential(spec, grid) * w
        return f
    v = sample_potential(potential, grid)
    return (v * w)[:, None, None] * model.b


def _kernel_checked(model: BandModel, energy: float, grid: Grid) -> GreenKernel:
    kernel = residue_green(model, energy)
    ps = kernel.real_momenta
    if ps.size and grid.dx * ps.max() > MAX_PHASE_STEP:
        raise GridTooCoarse(
            f"dx*p = {grid.dx * ps.max():.3g} rad/step exceeds {MAX_PHASE_STEP}")
    return kernel


def _coverage_warning(grid: Grid, kernel: GreenKernel,
                      potential: PotentialSpec | Sequence) -> None:
    specs = potential if isinstance(potential, (list, tuple)) else [potential]
    rates = [decay_scale(s) for s in specs if s is not None]
    rates.append(kernel.decay_rate)
    slowest = min(rates)
    if np.isfinite(slowest) and grid.x_max * slowest < 10.0:
        warnings.warn(
            f"grid half-width {grid.x_max:g} is under 10 decay lengths (rate {slowest:g})",
            stacklevel=3)


def _kernel_samples(kernel: GreenKernel, grid: Grid) -> np.ndarray:
    """Kernel matrices at all separations, index d = i - j + (n-1)."""
    n = grid.n_points
    diffs = grid.dx * np.arange(-(n - 1), n)
    return kernel.evaluate(diffs)


def assemble_map(model: BandModel, energy: float, grid: Grid,
                 potential: PotentialSpec | Sequence) -> np.ndarray:
    """Dense (nN x nN) matrix of the discretized self-consistency map.

    Memory grows as (nN)^2 complex; solve_state and find_energy apply the
    same map matrix-free and scale to much larger grids.
    """
    kernel = _kernel_checked(model, energy, grid)
    _coverage_warning(grid, kernel, potential)
    n, nb = grid.n_points, model.n_bands
    samples = _kernel_samples(kernel, grid)
    factors = _source_factors(model, grid, potential)
    idx = np.arange(n)[:, None] - np.arange(n)[None, :] + (n - 1)
    blocks = np.einsum("ijab,jbc->iajc", samples[idx], factors.astype(complex))
    return blocks.reshape(n * nb, n * nb)


class _ConvMap(LinearOperator):
    """Matrix-free application of the map via FFT convolution."""

    def __init__(self, model: BandModel, energy: float, grid: Grid,
                 potential: PotentialSpec | Sequence):
        self.grid = grid
        self.n_bands = model.n_bands
        n = grid.n_points
        kernel = _kernel_checked(model, energy, grid)
        _coverage_warning(grid, kernel, potential)
        self.kernel = kernel
        self.factors = _source_factors(model, grid, potential).astype(complex)
        self.support = np.flatnonzero(np.abs(self.factors).max(axis=(1, 2)) > 0)
        samples = _kernel_samples(kernel, grid)
        self._fft_len = next_fast_len(2 * n - 1)
        self._kf = fft(samples, n=self._fft_len, axis=0)
        dim = n * model.n_bands
        super().__init__(dtype=complex, shape=(dim, dim))

    def _convolve(self, u: np.ndarray) -> np.ndarray:
        """Sum_j K(x_i - x_j) u_j for a per-site source u of shape (n, N)."""
        n = self.grid.n_points
        uf = fft(u, n=self._fft_len, axis=0)
        yf = np.einsum("dab,db->da", self._kf, uf)
        return ifft(yf, axis=0)[n - 1:2 * n - 1]

    def _matvec(self, v: np.ndarray) -> np.ndarray:
        n, nb = self.grid.n_points, self.n_bands
        u = np.einsum("jbc,jc->jb", self.factors, v.reshape(n, nb))
        return self._convolve(u).reshape(n * nb)

    @property
    def is_null(self) -> bool:
        return self.support.size == 0

    def support_matrix(self) -> np.ndarray:
        """Map restricted to the potential support.

        The nonzero spectrum of the full map equals that of
        T[(j,a),(j',b)] = [F_j K(x_j - x_j')]_{ab} over support sites j, j';
        for compact potentials (a handful of delta sites) this is a tiny
        dense eigenproblem instead of an Arnoldi iteration.
        """
        xs = self.grid.x[self.support]
        ks = self.kernel.evaluate((xs[:, None] - xs[None, :]).reshape(-1))
        ks = ks.reshape(len(xs), len(xs), self.n_bands, self.n_bands)
        t = np.einsum("jab,jpbc->japc", self.factors[self.support], ks)
        m = len(xs) * self.n_bands
        return t.reshape(m, m)

    def lift_support_vector(self, u_small: np.ndarray, lam: complex) -> np.ndarray:
        """Full-grid eigenvector from its potential-support restriction."""
        n, nb = self.grid.n_points, self.n_bands
        u = np.zeros((n, nb), dtype=complex)
        u[self.support] = u_small.reshape(len(self.support), nb)
        return (self._convolve(u) / lam).reshape(n * nb)


# Potential support (sites x channels) small enough for a direct dense eig.
DIRECT_SUPPORT_LIMIT = 512


def _eigs_near_one(op: _ConvMap, k: int, want_vectors: bool):
    """Eigenvalue of the map nearest 1 (searched among the k largest)."""
    dim = op.shape[0]
    if op.is_null:
        if want_vectors:
            return 0.0 + 0.0j, np.zeros(dim, dtype=complex)
        return 0.0 + 0.0j, None
    if op.support.size * op.n_bands <= DIRECT_SUPPORT_LIMIT:
        t = op.support_matrix()
        if want_vectors:
            vals, vecs = np.linalg.eig(t)
            best = int(np.argmin(np.abs(vals - 1.0)))
            lam = complex(vals[best])
            if lam == 0.0:
                return lam, np.zeros(dim, dtype=complex)
            return lam, op.lift_support_vector(vecs[:, best], lam)
        vals = np.linalg.eigvals(t)
        best = int(np.argmin(np.abs(vals - 1.0)))
        return complex(vals[best]), None
    k = min(k, dim - 2)
    v0 = np.full(dim, 1.0 / np.sqrt(dim))  # deterministic Arnoldi start
    try:
        if want_vectors:
            vals, vecs = eigs(op, k=k, which="LM", v0=v0, tol=1e-11)
        else:
            vals = eigs(op, k=k, which="LM", v0=v0, tol=1e-11,
                        return_eigenvectors=False)
            vecs = None
    except ArpackNoConvergence as exc:
        vals = exc.eigenvalues
        vecs = exc.eigenvectors if want_vectors else None
        if vals is None or len(vals) == 0:
            raise NoNearUnitEigenvalue("Arnoldi iteration found no eigenvalues") from exc
    best = int(np.argmin(np.abs(vals - 1.0)))
    vec = vecs[:, best] if vecs is not None else None
    return complex(vals[best]), vec


def _fix_phase(values: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest component is real positive,
    then scale so the peak channel amplitude is 1."""
    imax = np.unravel_index(int(np.argmax(np.abs(values))), values.shape)
    peak = values[imax]
    return values / peak if abs(peak) else values


def solve_state(model: BandModel, energy: float, grid: Grid,
                potential: PotentialSpec | Sequence, *, k: int = 16) -> SolveReport:
    """Eigenvector of the map for the eigenvalue nearest 1.

    The state is rescaled so its peak channel amplitude is 1 and its global
    phase makes the peak real; fixed_point_residual = |psi - M psi|/|psi|.
    """
    op = _ConvMap(model, energy, grid, potential)
    lam, vec = _eigs_near_one(op, k, want_vectors=True)
    if abs(lam - 1.0) > ACCEPT_EIG_DISTANCE:
        raise NoNearUnitEigenvalue(
            f"nearest map eigenvalue {lam:.6g} is {abs(lam - 1):.3g} away from 1")
    values = _fix_phase(vec.reshape(grid.n_points, model.n_bands))
    resid = np.linalg.norm(op.matvec(values.reshape(-1)) - values.reshape(-1))
    resid /= np.linalg.norm(values)
    return SolveReport(energy=float(energy), operator_eigenvalue=lam,
                       state=SpinorField(grid=grid, values=values),
                       fixed_point_residual=float(resid))


def _branch_value(model: BandModel, energy: float, grid: Grid,
                  potential, k: int) -> complex:
    op = _ConvMap(model, energy, grid, potential)
    lam, _ = _eigs_near_one(op, k, want_vectors=False)
    return lam


def find_energy(model: BandModel, grid: Grid, potential: PotentialSpec | Sequence,
                e_lo: float, e_hi: float, *, mesh_points: int = 200,
                scan_grid: Grid | None = None, k: int = 12,
                refine_tol: float = 1e-9, jobs: int | None = None) -> list[SolveReport]:
    """Scan [e_lo, e_hi], bracket crossings of Re(eigenvalue) = 1, refine.

    The mesh phase may run on a coarser scan_grid; refinement always runs
    on the main grid. Returns every converged solution, ordered by energy.
    """
    if not e_hi > e_lo:
        raise ValueError("need e_hi > e_lo")
    mesh_grid = scan_grid or grid
    energies = np.linspace(e_lo, e_hi, mesh_points)

    def probe(e: float) -> float:
        try:
            return float(_branch_value(model, e, mesh_grid, potential, k).real) - 1.0
        except (ArpackError, NoNearUnitEigenvalue):
            return float("nan")

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            h = list(pool.map(probe, energies))
    else:
        h = [probe(e) for e in energies]

    def fine(e: float) -> float:
        return float(_branch_value(model, e, grid, potential, k).real) - 1.0

    reports = []
    for i in range(len(energies) - 1):
        ha, hb = h[i], h[i + 1]
        if np.isnan(ha) or np.isnan(hb) or ha * hb > 0 or (ha == 0 and hb == 0):
            continue
        ea, eb = float(energies[i]), float(energies[i + 1])
        fa, fb = (ha, hb) if mesh_grid is grid else (fine(ea), fine(eb))
        converged = False
        for _ in range(80):
            if fb == fa:
                break
            e_new = eb - fb * (eb - ea) / (fb - fa)
            lo, hi = min(ea, eb), max(ea, eb)
            if not (lo - abs(hi - lo) <= e_new <= hi + abs(hi - lo)):
                e_new = 0.5 * (ea + eb)  # secant left the bracket; bisect
            if abs(e_new - eb) < refine_tol:
                eb = e_new
                converged = True
                break
            ea, fa = eb, fb
            eb, fb = e_new, fine(e_new)
        if not converged and abs(fb) > RESIDUAL_LIMIT:
            continue
        try:
            rep = solve_state(model, eb, grid, potential, k=max(k, 16))
        except NoNearUnitEigenvalue:
            continue
        if rep.fixed_point_residual < RESIDUAL_LIMIT:
            reports.append(rep)
    if not reports:
        raise NoSolutionInRange(f"no fixed point in ({e_lo:g}, {e_hi:g})")
    reports.sort(key=lambda r: r.energy)
    return reports


def default_grid(kernel_decay: float, potential: PotentialSpec | Sequence,
                 n_points: int = 2048) -> Grid:
    """Rule-of-thumb grid: half-width max(10/potential rate, 15/kernel rate)."""
    specs = potential if isinstance(potential, (list, tuple)) else [potential]
    rates = [decay_scale(s) for s in specs if s is not None]
    v_rate = min(rates) if rates else float("inf")
    half = 15.0 / kernel_decay if np.isfinite(kernel_decay) else 0.0
    if np.isfinite(v_rate):
        half = max(half, 10.0 / v_rate)
    if half <= 0:
        half = 20.0
    return Grid.symmetric(half_width=half, n_points=n_points)
