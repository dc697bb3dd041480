"""Correlation functions, the Walnut form of the frame operator, and bounds.

The correlation function for lattice index n,

    G[n](x) = sum_k conj(g)(x - n/b - a k) * gamma(x - a k),

is a-periodic, so it is stored on the fundamental cell [0, a)^d only and
extended periodically on demand.  On the grid it is computed exactly by
folding the full-grid product conj(T_{n/b} g) * gamma into the cell, which
enumerates every nonvanishing k.  The frame operator then reads

    S f = (1 / <gamma, g>) * sum_n a^d G[n] * f(. - n/b),

an exact finite sum: the time direction needs no approximation because n is
confined to the support interaction of the windows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .amalgam import wiener_norm
from .grid import Grid, GridFunction, shift_array, support_index_bounds
from .operators import GaborSystem

__all__ = [
    "CorrelationFamily",
    "correlation_member_range",
    "correlation_fn",
    "correlation_family",
    "diagonal_correlation",
    "periodic_extension",
    "walnut_apply",
    "apply_diagonal_defect",
    "apply_remainder",
    "operator_norm_upper_bound",
    "SumTranslates",
    "sum_translates",
    "TailSum",
    "tail_sum",
    "fold_to_cell",
]


def fold_to_cell(values: np.ndarray, cell_steps: int, origin_steps: int) -> np.ndarray:
    """Sum samples into their residue slot modulo the cell, per axis.

    Slot j of the result collects every sample whose index i satisfies
    (i - origin_steps) % cell_steps == j, i.e. the lattice sum
    sum_k v(x + a k) evaluated at the cell points x = j h in [0, a).
    """
    out = values
    for ax in range(values.ndim):
        idx = (np.arange(out.shape[ax]) - origin_steps) % cell_steps
        moved = np.moveaxis(out, ax, 0)
        acc = np.zeros((cell_steps,) + moved.shape[1:], dtype=out.dtype)
        np.add.at(acc, idx, moved)
        out = np.moveaxis(acc, 0, ax)
    return out


def periodic_extension(cell: np.ndarray, grid: Grid) -> np.ndarray:
    """Extend a fundamental-cell array to the whole grid by periodicity."""
    out = cell
    p = cell.shape[0]
    idx = (np.arange(grid.samples_per_axis) - grid.half_extent_steps) % p
    for ax in range(out.ndim):
        out = np.take(out, idx, axis=ax)
    return out


def _as_tuple(n, dim: int) -> tuple[int, ...]:
    if np.isscalar(n):
        if dim != 1:
            raise ValueError(f"lattice index must have {dim} components, got scalar {n!r}")
        return (int(n),)
    n = tuple(int(v) for v in n)
    if len(n) != dim:
        raise ValueError(f"lattice index must have {dim} components, got {n!r}")
    return n


def correlation_member_range(sys: GaborSystem) -> list[range]:
    """Per-axis ranges of n with T_{n/b} g and gamma overlapping on the grid.

    Exact: n/b must lie in the Minkowski difference supp(gamma) - supp(g),
    evaluated in integer index arithmetic, so every nonzero member is
    enumerated and nothing else.
    """
    gb = support_index_bounds(sys.g)
    cb = support_index_bounds(sys.gamma)
    if gb is None or cb is None:
        return [range(0)] * sys.grid.dim
    ibs = sys.inv_b_steps
    out = []
    for (gl, gh), (cl, ch) in zip(gb, cb):
        lo = -((gh - cl) // ibs)  # ceil((cl - gh) / ibs)
        hi = (ch - gl) // ibs
        out.append(range(int(lo), int(hi) + 1))
    return out


def correlation_fn(sys: GaborSystem, n) -> np.ndarray:
    """Samples of G[n] on the fundamental cell [0, a)^d (zero if no overlap)."""
    nt = _as_tuple(n, sys.grid.dim)
    steps = np.array(nt) * sys.inv_b_steps
    w = np.conj(shift_array(sys.g.values, steps)) * sys.gamma.values
    return fold_to_cell(w, sys.a_steps, sys.grid.half_extent_steps)


@dataclass
class CorrelationFamily:
    """All correlation members of a system, keyed by the lattice index tuple."""

    system: GaborSystem
    members: dict[tuple[int, ...], np.ndarray]

    @property
    def cell_shape(self) -> tuple[int, ...]:
        return (self.system.a_steps,) * self.system.grid.dim

    def sup(self, n) -> float:
        arr = self.members.get(_as_tuple(n, self.system.grid.dim))
        return 0.0 if arr is None else float(np.abs(arr).max())


def correlation_family(sys: GaborSystem) -> CorrelationFamily:
    members = {}
    for n in product(*correlation_member_range(sys)):
        members[n] = correlation_fn(sys, n)
    return CorrelationFamily(sys, members)


def diagonal_correlation(sys: GaborSystem) -> np.ndarray:
    """The normalized diagonal function (a^d / <gamma, g>) * G[0] on the cell.

    Periodizes conj(g) * gamma at step a and scales so the densification
    limit is the constant 1; independent of b.
    """
    d = sys.grid.dim
    return (sys.a ** d / sys.pairing) * correlation_fn(sys, (0,) * d)


def walnut_apply(f: GridFunction, sys: GaborSystem,
                 family: CorrelationFamily | None = None) -> GridFunction:
    """Apply the frame operator in its multiplication-and-shift form.

    Exact (no frequency truncation); members are reduced in sorted index
    order for reproducibility.
    """
    if family is None:
        family = correlation_family(sys)
    grid = sys.grid
    scale = sys.a ** grid.dim / sys.pairing
    out = np.zeros(grid.shape, dtype=complex)
    for n in sorted(family.members):
        cell = family.members[n]
        if not cell.any():
            continue
        shifted = shift_array(f.values, np.array(n) * sys.inv_b_steps)
        out += periodic_extension(cell, grid) * shifted
    return GridFunction(grid, scale * out)


def apply_diagonal_defect(f: GridFunction, sys: GaborSystem) -> GridFunction:
    """The diagonal part of S - I: multiply pointwise by (diagonal correlation - 1)."""
    mult = periodic_extension(diagonal_correlation(sys), sys.grid) - 1.0
    return GridFunction(f.grid, mult * f.values)


def apply_remainder(f: GridFunction, sys: GaborSystem,
            family: CorrelationFamily | None = None) -> GridFunction:
    """The off-diagonal remainder: the Walnut sum restricted to n != 0.

    S f - f = apply_diagonal_defect(f) + apply_remainder(f) exactly.
    """
    if family is None:
        family = correlation_family(sys)
    grid = sys.grid
    zero = (0,) * grid.dim
    scale = sys.a ** grid.dim / sys.pairing
    out = np.zeros(grid.shape, dtype=complex)
    for n in sorted(family.members):
        if n == zero:
            continue
        cell = family.members[n]
        if not cell.any():
            continue
        shifted = shift_array(f.values, np.array(n) * sys.inv_b_steps)
        out += periodic_extension(cell, grid) * shifted
    return GridFunction(grid, scale * out)


def operator_norm_upper_bound(sys: GaborSystem, pq=None) -> float:
    """Closed-form bound on ||S|| over every W(L^p, l^q), uniform in (p, q):

        (a^d / |<gamma, g>|) (1 + 1/a)^d (2 + 2b)^d ||g||_W ||gamma||_W.

    The pq argument is accepted for interface symmetry and ignored.
    """
    d = sys.grid.dim
    return (
        sys.a ** d / abs(sys.pairing)
        * (1.0 + 1.0 / sys.a) ** d
        * (2.0 + 2.0 * sys.b) ** d
        * wiener_norm(sys.g)
        * wiener_norm(sys.gamma)
    )


@dataclass
class SumTranslates:
    """Cell samples of sum_n |g(x - a n)| with the covering bound check."""

    cell: np.ndarray
    bound: float
    within_bound: bool


def sum_translates(g: GridFunction, a: float) -> SumTranslates:
    """Periodization of |g| at step a, checked against (1 + 1/a)^d ||g||_W."""
    grid = g.grid
    p = grid.steps_scalar(a)
    cell = fold_to_cell(np.abs(g.values), p, grid.half_extent_steps)
    bound = (1.0 + 1.0 / a) ** grid.dim * wiener_norm(g)
    peak = float(cell.max()) if cell.size else 0.0
    return SumTranslates(cell, bound, peak <= bound * (1.0 + 1e-12))


@dataclass
class TailSum:
    """Correlation-sum diagnostics.

    tail     : sum over n != 0 of a^d * sup |G[n]|  (the densification tail)
    sup_sum  : sum over all n of sup |G[n]|
    bound    : (1 + 1/a)^d (2 + 2b)^d ||g||_W ||gamma||_W, bounding sup_sum
    """

    tail: float
    sup_sum: float
    bound: float
    within_bound: bool


def tail_sum(sys: GaborSystem, family: CorrelationFamily | None = None) -> TailSum:
    if family is None:
        family = correlation_family(sys)
    d = sys.grid.dim
    zero = (0,) * d
    sups = {n: float(np.abs(cell).max()) if cell.size else 0.0
            for n, cell in family.members.items()}
    tail = math.fsum(sys.a ** d * s for n, s in sorted(sups.items()) if n != zero)
    sup_total = math.fsum(s for _, s in sorted(sups.items()))
    bound = ((1.0 + 1.0 / sys.a) ** d * (2.0 + 2.0 * sys.b) ** d
             * wiener_norm(sys.g) * wiener_norm(sys.gamma))
    return TailSum(tail, sup_total, bound, sup_total <= bound * (1.0 + 1e-12))
