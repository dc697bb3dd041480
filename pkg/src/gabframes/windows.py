"""Window families and their sampling onto grids.

Four families cover the regimes of interest: cube indicators (discontinuous
but Riemann integrable), cardinal B-splines (continuous piecewise
polynomials), truncated Gaussians (smooth, rapidly decaying lattice
coefficients), and fat-Cantor indicators (Smith-Volterra-Cantor sets:
positive measure, nowhere dense in the limit, the sup-norm spoiler).

Every family samples to a function with finite Wiener norm.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from .errors import UnsupportedDimensionError
from .grid import Grid, GridFunction

__all__ = [
    "WindowSpec",
    "sample_window",
    "fat_cantor_intervals",
    "fat_cantor_measure",
    "bspline_profile",
    "window_library",
]

_FAMILIES = ("indicator_cube", "bspline", "gaussian", "fat_cantor")


@dataclass(frozen=True)
class WindowSpec:
    """Declarative window description, serializable to a flat JSON object.

    Exactly the parameters of the chosen family are set:
    indicator_cube(side), bspline(order), gaussian(sigma, radius),
    fat_cantor(depth).
    """

    family: str
    side: float | None = None
    order: int | None = None
    sigma: float | None = None
    radius: float | None = None
    depth: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown window family {self.family!r}; expected one of {_FAMILIES}")
        need = {
            "indicator_cube": ("side",),
            "bspline": ("order",),
            "gaussian": ("sigma", "radius"),
            "fat_cantor": ("depth",),
        }[self.family]
        for name in ("side", "order", "sigma", "radius", "depth"):
            val = getattr(self, name)
            if name in need:
                if val is None:
                    raise ValueError(f"{self.family} window requires parameter {name!r}")
                if val <= 0:
                    raise ValueError(f"window parameter {name}={val!r} must be strictly positive")
            elif val is not None:
                raise ValueError(f"{self.family} window does not take parameter {name!r}")
        if self.order is not None and int(self.order) != self.order:
            raise ValueError(f"bspline order must be an integer, got {self.order!r}")
        if self.depth is not None and (int(self.depth) != self.depth or self.depth < 1):
            raise ValueError(f"fat_cantor depth must be an integer >= 1, got {self.depth!r}")

    # -- constructors ------------------------------------------------------
    @classmethod
    def indicator_cube(cls, side: float = 1.0) -> "WindowSpec":
        return cls("indicator_cube", side=side)

    @classmethod
    def bspline(cls, order: int = 2) -> "WindowSpec":
        return cls("bspline", order=order)

    @classmethod
    def gaussian(cls, sigma: float = 1.0, radius: float = 3.0) -> "WindowSpec":
        return cls("gaussian", sigma=sigma, radius=radius)

    @classmethod
    def fat_cantor(cls, depth: int) -> "WindowSpec":
        return cls("fat_cantor", depth=depth)

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        out = {"family": self.family}
        for name in ("side", "order", "sigma", "radius", "depth"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out

    @classmethod
    def from_json(cls, obj) -> "WindowSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "family" not in obj:
            raise ValueError(f"window spec must be an object with a 'family' key, got {obj!r}")
        known = {"family", "side", "order", "sigma", "radius", "depth"}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown window spec key(s): {sorted(extra)}")
        return cls(**obj)


def bspline_profile(order: int, x: np.ndarray) -> np.ndarray:
    """Cardinal B-spline of the given order, supported on [0, order).

    Order 1 is the unit indicator; order 2 the unit hat peaking at 1.
    """
    if order == 1:
        return ((x >= 0) & (x < 1)).astype(float)
    prev = bspline_profile(order - 1, x)
    prev_shift = bspline_profile(order - 1, x - 1)
    return (x * prev + (order - x) * prev_shift) / (order - 1)


def fat_cantor_intervals(depth: int) -> list[tuple[Fraction, Fraction]]:
    """Closed intervals of the depth-k Smith-Volterra-Cantor set in [0, 1].

    At step j each of the 2^(j-1) pieces loses its open middle interval of
    length 4^(-j).  Endpoints are exact rationals.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth!r}")
    pieces = [(Fraction(0), Fraction(1))]
    for j in range(1, depth + 1):
        half_gap = Fraction(1, 2 * 4**j)
        nxt = []
        for lo, hi in pieces:
            mid = (lo + hi) / 2
            nxt.append((lo, mid - half_gap))
            nxt.append((mid + half_gap, hi))
        pieces = nxt
    return pieces


def fat_cantor_measure(depth: int) -> Fraction:
    """Exact Lebesgue measure 1 - (1/2)(1 - 2^-k) of the depth-k set."""
    return 1 - Fraction(1, 2) * (1 - Fraction(1, 2**depth))


def _sample_fat_cantor(depth: int, grid: Grid) -> np.ndarray:
    # each construction interval is sampled half-open [lo, hi), matching the
    # package-wide cube convention; endpoints are compared as exact rationals
    m = grid.samples_per_unit
    th = grid.half_extent_steps
    n = grid.samples_per_axis
    vals = np.zeros(n)
    for lo, hi in fat_cantor_intervals(depth):
        start = ceil(lo * m) + th
        stop = ceil(hi * m) + th
        start = max(start, 0)
        stop = min(stop, n)
        if start < stop:
            vals[start:stop] = 1.0
    return vals


def sample_window(spec: WindowSpec, grid: Grid) -> GridFunction:
    """Pointwise samples of the window on the grid.

    fat_cantor requires dim = 1 (UnsupportedDimensionError otherwise).
    """
    x = grid.axis_coords()
    if spec.family == "fat_cantor":
        if grid.dim != 1:
            raise UnsupportedDimensionError("fat_cantor windows are one-dimensional")
        return GridFunction(grid, _sample_fat_cantor(spec.depth, grid))
    if spec.family == "indicator_cube":
        axis = ((x >= 0) & (x < spec.side)).astype(float)
    elif spec.family == "bspline":
        axis = bspline_profile(spec.order, x)
    else:  # gaussian, truncated to the box |x_j| <= radius
        axis = np.where(np.abs(x) <= spec.radius, np.exp(-np.pi * x**2 / spec.sigma**2), 0.0)
    vals = np.ones((), dtype=float)
    for ax in range(grid.dim):
        shape = [1] * grid.dim
        shape[ax] = grid.samples_per_axis
        vals = vals * axis.reshape(shape)
    return GridFunction(grid, vals)


def window_library() -> list[WindowSpec]:
    """The fixed window set swept by the property and bound checks."""
    return [
        WindowSpec.indicator_cube(1.0),
        WindowSpec.bspline(2),
        WindowSpec.gaussian(1.0, 3.0),
        WindowSpec.fat_cantor(2),
    ]
