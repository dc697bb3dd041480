"""Dual-lattice coefficients, the Janssen form, and Wexler-Raz checks.

The dual-lattice (adjoint) coefficients are c[l, n] = <gamma, M_{l/a} T_{n/b} g>.
They are simultaneously the Fourier coefficients of the correlation functions
(G[n] has l-th cell Fourier coefficient a^{-d} c[l, n]) and the expansion
coefficients of the frame operator,

    S = (1 / <gamma, g>) sum_{l,n} c[l, n] M_{l/a} T_{n/b},

absolutely convergent when sum |c[l, n]| < infinity.  Absolute summability
can only be probed up to truncation, so the summability flag reported here
is an explicit shell-decay heuristic, not a proof.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DegenerateWindowPairError
from .grid import Grid, GridFunction, shift_array
from .operators import GaborSystem, _apply_axes

__all__ = [
    "JanssenLattice",
    "janssen_coefficients",
    "janssen_apply",
    "fourier_reconstruct_correlation",
    "ConditionAPrime",
    "condition_a_prime",
    "WexlerRazResult",
    "wexler_raz_check",
]


@dataclass
class JanssenLattice:
    """Dual-lattice coefficients over |l| <= L, |n| <= N (componentwise).

    entries carries the d modulation axes first, then the d shift axes.
    normalization is the center entry c[0, 0] = <gamma, g> (the identical
    inner product, by construction).  outer_shell_mass is the summed
    magnitude on the outermost index shell, a crude truncation-tail gauge.
    """

    entries: np.ndarray
    a: float
    b: float
    grid: Grid
    ell_radius: int
    n_radius: int

    def __post_init__(self):
        d = self.entries.ndim // 2
        want = (2 * self.ell_radius + 1,) * d + (2 * self.n_radius + 1,) * d
        if self.entries.shape != want:
            raise ValueError(f"entries shape {self.entries.shape} does not match radii {want}")

    @property
    def dim(self) -> int:
        return self.entries.ndim // 2

    @property
    def normalization(self) -> complex:
        center = (self.ell_radius,) * self.dim + (self.n_radius,) * self.dim
        return complex(self.entries[center])

    @property
    def outer_shell_mass(self) -> float:
        d = self.dim
        mass = 0.0
        full = math.fsum(float(v) for v in np.abs(self.entries).ravel())
        if self.ell_radius == 0 and self.n_radius == 0:
            return 0.0
        inner = self.entries[(slice(1, -1),) * d + (slice(1, -1),) * d] \
            if self.ell_radius > 0 and self.n_radius > 0 else np.zeros(0)
        mass = full - math.fsum(float(v) for v in np.abs(inner).ravel())
        return mass

    def entry(self, l, n) -> complex:
        d = self.dim
        l = (int(l),) if np.isscalar(l) else tuple(int(v) for v in l)
        n = (int(n),) if np.isscalar(n) else tuple(int(v) for v in n)
        if len(l) != d or len(n) != d:
            raise IndexError(f"indices must have {d} components each")
        idx = tuple(v + self.ell_radius for v in l) + tuple(v + self.n_radius for v in n)
        if any(not 0 <= i < s for i, s in zip(idx, self.entries.shape)):
            raise IndexError(f"lattice index (l={l}, n={n}) outside stored radii")
        return complex(self.entries[idx])


def _mod_phase_matrix(grid: Grid, a: float, ell_radius: int, sign: float) -> np.ndarray:
    # Q[j, i] = exp(sign * 2*pi*i * l_j * x_i / a) for l_j = -L..L, one axis
    x = grid.axis_coords()
    ls = np.arange(-ell_radius, ell_radius + 1)
    return np.exp(sign * 2j * np.pi / a * np.outer(ls, x))


def janssen_coefficients(sys: GaborSystem, ell_radius: int, n_radius: int) -> JanssenLattice:
    """Compute c[l, n] = <gamma, M_{l/a} T_{n/b} g> over the given radii."""
    if ell_radius < 0 or n_radius < 0:
        raise ValueError("radii must be nonnegative")
    grid = sys.grid
    d = grid.dim
    q_conj = _mod_phase_matrix(grid, sys.a, ell_radius, sign=-1.0)
    shape = (2 * ell_radius + 1,) * d + (2 * n_radius + 1,) * d
    entries = np.zeros(shape, dtype=complex)
    for pos, n in zip(np.ndindex((2 * n_radius + 1,) * d),
                      product(range(-n_radius, n_radius + 1), repeat=d)):
        gs = shift_array(sys.g.values, np.array(n) * sys.inv_b_steps)
        if not gs.any():
            continue
        w = sys.gamma.values * np.conj(gs)
        block = grid.cell_measure * _apply_axes(q_conj, w)
        entries[(Ellipsis,) + pos] = block
    return JanssenLattice(entries, sys.a, sys.b, grid, ell_radius, n_radius)


def janssen_apply(f: GridFunction, lattice: JanssenLattice) -> GridFunction:
    """Apply the truncated dual-lattice expansion of the frame operator.

    out = (1 / c[0,0]) sum_{l,n} c[l, n] * exp(2 pi i <l, x>/a) * f(x - n/b);
    terms are reduced in sorted (l, n) order.  Time shifts n/b must be
    commensurate with the grid of f.

    On the grid the modulation index l aliases with period a/h per axis
    (frequencies l/a and l/a + 1/h sample identically), so an l range
    reaching a nonvanishing alias duplicates content; keep 2L+1 within one
    period unless the out-of-band coefficients vanish.
    """
    nrm = lattice.normalization
    if abs(nrm) <= 1e-12:
        raise DegenerateWindowPairError("lattice normalization <gamma, g> is degenerate")
    grid = f.grid
    d = lattice.dim
    if grid.dim != d:
        raise ValueError(f"lattice dimension {d} does not match grid dimension {grid.dim}")
    ibs = grid.steps_scalar(1.0 / lattice.b)
    q_syn = _mod_phase_matrix(grid, lattice.a, lattice.ell_radius, sign=+1.0)
    out = np.zeros(grid.shape, dtype=complex)
    for pos, n in zip(np.ndindex((2 * lattice.n_radius + 1,) * d),
                      product(range(-lattice.n_radius, lattice.n_radius + 1), repeat=d)):
        col = lattice.entries[(Ellipsis,) + pos]
        if not col.any():
            continue
        synth = _apply_axes(q_syn.T.copy(), col)
        out += synth * shift_array(f.values, np.array(n) * ibs)
    return GridFunction(grid, out / nrm)


def fourier_reconstruct_correlation(lattice: JanssenLattice, n) -> np.ndarray:
    """Partial Fourier synthesis of the correlation function G[n] on its cell.

    G[n](x) ~ a^{-d} sum_{|l| <= L} c[l, n] exp(2 pi i <l, x>/a) at the cell
    samples x in [0, a)^d.  Raises IndexError when row n is not stored.
    """
    d = lattice.dim
    n = (int(n),) if np.isscalar(n) else tuple(int(v) for v in n)
    if len(n) != d:
        raise IndexError(f"row index must have {d} components")
    pos = tuple(v + lattice.n_radius for v in n)
    if any(not 0 <= i < 2 * lattice.n_radius + 1 for i in pos):
        raise IndexError(f"row n={n} outside stored radius {lattice.n_radius}")
    col = lattice.entries[(Ellipsis,) + pos]
    p = lattice.grid.steps_scalar(lattice.a)
    xs = np.arange(p) * lattice.grid.spacing
    ls = np.arange(-lattice.ell_radius, lattice.ell_radius + 1)
    q = np.exp(2j * np.pi / lattice.a * np.outer(xs, ls))  # (p, 2L+1)
    return lattice.a ** (-d) * _apply_axes(q, col)


@dataclass
class ConditionAPrime:
    """Shell-wise absolute sums of the dual-lattice coefficients.

    partial_sums[s] is the cumulative magnitude over max(|l|, |n|) <= s.
    satisfied is the documented heuristic (not a proof): the outermost shell
    contributes less than `shell_fraction` of the total.
    """

    partial_sums: np.ndarray
    satisfied: bool
    shell_fraction: float = 1e-6


def condition_a_prime(sys: GaborSystem, max_shell: int,
                      shell_fraction: float = 1e-6) -> ConditionAPrime:
    """Probe absolute summability of the dual-lattice coefficients by shells."""
    lattice = janssen_coefficients(sys, max_shell, max_shell)
    d = lattice.dim
    mags = np.abs(lattice.entries)
    shells = [[] for _ in range(max_shell + 1)]
    for idx in np.ndindex(mags.shape):
        l = tuple(i - max_shell for i in idx[:d])
        n = tuple(i - max_shell for i in idx[d:])
        s = max(max(abs(v) for v in l), max(abs(v) for v in n))
        shells[s].append(float(mags[idx]))
    shell_sums = [math.fsum(vals) for vals in shells]
    partial = np.cumsum(shell_sums)
    total = partial[-1]
    ok = total > 0 and shell_sums[-1] < shell_fraction * total
    return ConditionAPrime(partial, bool(ok), shell_fraction)


@dataclass
class WexlerRazResult:
    """Dual-lattice coefficients normalized by <gamma, g>, with the
    biorthogonality verdict at the requested tolerance."""

    normalized: np.ndarray
    is_biorthogonal: bool
    max_offdiag: float
    diag: complex


def wexler_raz_check(sys: GaborSystem, ell_radius: int, n_radius: int,
                     tol: float = 1e-10) -> WexlerRazResult:
    """Test c[l, n] / <gamma, g> = delta_{l 0} delta_{n 0} on the stored ranges."""
    lattice = janssen_coefficients(sys, ell_radius, n_radius)
    nrm = lattice.normalization
    if abs(nrm) <= 1e-12:
        raise DegenerateWindowPairError("normalization <gamma, g> is degenerate")
    normalized = lattice.entries / nrm
    d = lattice.dim
    center = (ell_radius,) * d + (n_radius,) * d
    mags = np.abs(normalized)
    diag = complex(normalized[center])
    mags_off = mags.copy()
    mags_off[center] = 0.0
    max_offdiag = float(mags_off.max())
    ok = abs(diag - 1.0) <= tol and max_offdiag <= tol
    return WexlerRazResult(normalized, bool(ok), max_offdiag, diag)
