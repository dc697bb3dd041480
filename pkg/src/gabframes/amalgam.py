"""Wiener amalgam norms W(L^p, l^q) on integer-translated unit cubes.

The local norm on the cube [k, k+1)^d is a plain Riemann sum with cell
weight h^d (for p < inf) or the max over grid samples (the discrete
essential sup, a lower bound for the true one).  Cube-local norms are then
aggregated in l^q over all integer k; compact support makes the aggregation
finite exactly.  The same h^d weight is used by the pairing, so the
Hoelder-type inequalities hold exactly in the discrete model.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .grid import GridFunction, inner_product

__all__ = [
    "Exponent",
    "ExponentPair",
    "conjugate_exponent",
    "lp_norm_on_cube",
    "cube_norms",
    "amalgam_norm",
    "wiener_norm",
    "pairing",
    "holder_bound",
]


@dataclass(frozen=True)
class Exponent:
    """An exponent in [1, inf]; infinity is math.inf, kept symbolic."""

    value: float

    def __post_init__(self):
        if not (self.value >= 1.0):  # also rejects nan
            raise ValueError(f"exponent must satisfy p >= 1, got {self.value!r}")

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    def conjugate(self) -> "Exponent":
        if self.is_inf:
            return Exponent(1.0)
        if self.value == 1.0:
            return Exponent(math.inf)
        return Exponent(self.value / (self.value - 1.0))

    @classmethod
    def of(cls, p) -> "Exponent":
        if isinstance(p, Exponent):
            return p
        if isinstance(p, str):
            s = p.strip().lower()
            if s in ("inf", "infinity", "oo"):
                return cls(math.inf)
            return cls(float(s))
        return cls(float(p))

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return "inf" if self.is_inf else f"{self.value:g}"


@dataclass(frozen=True)
class ExponentPair:
    """The pair (p, q) indexing W(L^p, l^q)."""

    p: Exponent
    q: Exponent

    @classmethod
    def of(cls, p, q=None) -> "ExponentPair":
        if isinstance(p, ExponentPair) and q is None:
            return p
        if q is None:
            p, q = p  # (p, q) tuple
        return cls(Exponent.of(p), Exponent.of(q))

    def conjugate(self) -> "ExponentPair":
        return ExponentPair(self.p.conjugate(), self.q.conjugate())

    def __str__(self) -> str:
        return f"({self.p}, {self.q})"


def conjugate_exponent(p) -> Exponent:
    """p' with 1/p + 1/p' = 1; maps 1 <-> inf and fixes 2."""
    return Exponent.of(p).conjugate()


def _cube_k_range(grid) -> range:
    # integer cubes [k, k+1) that intersect [-T, T)
    t = grid.half_extent_steps / grid.samples_per_unit
    return range(math.floor(-t), math.ceil(t))


def lp_norm_on_cube(f: GridFunction, k, p) -> float:
    """L^p norm of f restricted to the cube [k, k+1)^d (0 if disjoint)."""
    p = Exponent.of(p)
    grid = f.grid
    k = np.atleast_1d(np.asarray(k, dtype=int))
    if k.shape != (grid.dim,):
        raise ValueError(f"cube index must have {grid.dim} component(s)")
    sl = []
    for kj in k:
        lo = kj * grid.samples_per_unit + grid.half_extent_steps
        hi = lo + grid.samples_per_unit
        lo, hi = max(lo, 0), min(hi, grid.samples_per_axis)
        if lo >= hi:
            return 0.0
        sl.append(slice(lo, hi))
    block = np.abs(f.values[tuple(sl)])
    if p.is_inf:
        return float(block.max())
    return float((grid.cell_measure * np.sum(block ** p.value)) ** (1.0 / p.value))


def cube_norms(f: GridFunction, p) -> np.ndarray:
    """Local L^p norms over all integer cubes meeting the domain.

    Returns an array of shape (C,)*d where C is the number of cubes per axis.
    """
    p = Exponent.of(p)
    grid = f.grid
    m = grid.samples_per_unit
    if grid.half_extent_steps % m == 0:
        # integer half extent: the domain tiles exactly into cubes
        c = grid.samples_per_axis // m
        shape = ()
        for _ in range(grid.dim):
            shape += (c, m)
        block = np.abs(f.values).reshape(shape)
        intra = tuple(range(1, 2 * grid.dim, 2))
        if p.is_inf:
            return block.max(axis=intra)
        return (grid.cell_measure * (block ** p.value).sum(axis=intra)) ** (1.0 / p.value)
    ks = _cube_k_range(grid)
    out = np.empty((len(ks),) * grid.dim)
    for idx, kt in zip(np.ndindex(out.shape), product(ks, repeat=grid.dim)):
        out[idx] = lp_norm_on_cube(f, kt, p)
    return out


def amalgam_norm(f: GridFunction, pq) -> float:
    """The W(L^p, l^q) norm: l^q aggregation of the per-cube L^p norms."""
    pq = ExponentPair.of(pq)
    local = cube_norms(f, pq.p)
    if pq.q.is_inf:
        return float(local.max())
    return float((local ** pq.q.value).sum() ** (1.0 / pq.q.value))


def wiener_norm(g: GridFunction) -> float:
    """The Wiener space norm: sum over cubes of the local sup, W(L^inf, l^1)."""
    return amalgam_norm(g, (math.inf, 1))


def pairing(f: GridFunction, g: GridFunction) -> complex:
    """The duality pairing <f, g> = h^d sum f conj(g) (same as inner_product)."""
    return inner_product(f, g)


def holder_bound(f: GridFunction, g: GridFunction, pq) -> tuple[float, float]:
    """Diagnostic pair (|<f, g>|, ||f||_{W(p,q)} * ||g||_{W(p',q')}).

    The first entry never exceeds the second: Hoelder holds exactly for the
    shared Riemann-sum discretization.
    """
    pq = ExponentPair.of(pq)
    lhs = abs(pairing(f, g))
    rhs = amalgam_norm(f, pq) * amalgam_norm(g, pq.conjugate())
    return lhs, rhs
