"""Uniform grids on [-T, T)^d and elementary time-frequency operations.

Functions live on a uniform grid over the half-open box [-T, T)^d and are
implicitly zero outside it (compact support, no wraparound).  All time shifts
are integer multiples of the spacing h and are performed by exact sample
relocation; modulations are exact at any frequency.
"""
from __future__ import annotations

import numpy as np

from .errors import CommensurabilityError, GridMismatchError

__all__ = [
    "Grid",
    "GridFunction",
    "translate",
    "modulate",
    "tf_shift",
    "inner_product",
    "l2_norm",
    "mt_commutation_phase",
    "support_index_bounds",
    "write_csv",
]

# relative tolerance when snapping nearly-integer ratios to integers
_SNAP = 1e-9


def _snap_int(x: float, what: str) -> int:
    n = round(x)
    if abs(x - n) > _SNAP * max(1.0, abs(x)):
        raise CommensurabilityError(f"{what} = {x!r} is not an integer multiple of the grid spacing")
    return int(n)


class Grid:
    """Uniform sampling of the box [-T, T)^d.

    The spacing h satisfies h <= 1 with 1/h a positive integer, so the unit
    cube [0, 1)^d contains exactly (1/h)^d grid points, and the half extent T
    is an integer multiple of h, so x = 0 and every integer cube boundary lie
    on the grid.  N * h = 2 * T holds exactly: inputs are snapped to the
    nearest commensurate values.

    Parameters
    ----------
    half_extent : float
        Requested T > 0; snapped to the nearest multiple of the spacing.
    spacing : float
        Requested h; 1/h is snapped to an integer.
    dim : int
        Dimension d >= 1.
    """

    __slots__ = ("dim", "samples_per_unit", "half_extent_steps")

    def __init__(self, half_extent: float, spacing: float, dim: int = 1):
        if dim < 1 or int(dim) != dim:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        if spacing <= 0 or spacing > 1:
            raise ValueError(f"spacing must lie in (0, 1], got {spacing!r}")
        m = _snap_int(1.0 / spacing, "1/spacing")
        if half_extent <= 0:
            raise ValueError(f"half_extent must be positive, got {half_extent!r}")
        steps = round(half_extent * m)
        if steps < 1:
            raise ValueError(f"half_extent {half_extent!r} is below one spacing {1.0 / m!r}")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "samples_per_unit", m)
        object.__setattr__(self, "half_extent_steps", steps)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Grid is immutable")

    # -- derived views ----------------------------------------------------
    @property
    def spacing(self) -> float:
        return 1.0 / self.samples_per_unit

    @property
    def half_extent(self) -> float:
        return self.half_extent_steps * self.spacing

    @property
    def samples_per_axis(self) -> int:
        return 2 * self.half_extent_steps

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.samples_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.samples_per_axis ** self.dim

    @property
    def cell_measure(self) -> float:
        return self.spacing ** self.dim

    def axis_coords(self) -> np.ndarray:
        """Coordinates along one axis: (i - T/h) * h for i = 0..N-1."""
        return (np.arange(self.samples_per_axis) - self.half_extent_steps) * self.spacing

    def steps(self, t) -> np.ndarray:
        """Convert a shift vector to exact integer grid steps.

        Raises CommensurabilityError when any component of ``t`` is not an
        integer multiple of the spacing.
        """
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if t.shape != (self.dim,):
            raise ValueError(f"shift must have {self.dim} component(s), got shape {t.shape}")
        return np.array([_snap_int(ti * self.samples_per_unit, "shift/spacing") for ti in t])

    def steps_scalar(self, t: float) -> int:
        return _snap_int(float(t) * self.samples_per_unit, "length/spacing")

    def __eq__(self, other):
        return (
            isinstance(other, Grid)
            and self.dim == other.dim
            and self.samples_per_unit == other.samples_per_unit
            and self.half_extent_steps == other.half_extent_steps
        )

    def __hash__(self):
        return hash((self.dim, self.samples_per_unit, self.half_extent_steps))

    def __repr__(self):
        return (
            f"Grid(half_extent={self.half_extent}, spacing=1/{self.samples_per_unit}, "
            f"dim={self.dim})"
        )


class GridFunction:
    """Complex samples of a compactly supported function on a :class:`Grid`.

    Immutable: the sample array is frozen at construction and every operation
    returns a new instance, so instances are safe to share across threads.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values):
        arr = np.asarray(values, dtype=complex)
        if arr.shape == (grid.size,):
            arr = arr.reshape(grid.shape)
        if arr.shape != grid.shape:
            raise ValueError(f"values shape {arr.shape} does not match grid shape {grid.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.grid, values)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _require_same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _require_same_grid(self, other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar) -> "GridFunction":
        return GridFunction(self.grid, self.values * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.grid, -self.values)

    def __repr__(self):
        return f"GridFunction({self.grid!r}, <{self.values.shape} samples>)"


def _require_same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.grid != g.grid:
        raise GridMismatchError(f"grids differ: {f.grid!r} vs {g.grid!r}")


def shift_array(values: np.ndarray, steps) -> np.ndarray:
    """Shift samples by integer steps per axis; vacated slots become zero."""
    steps = np.atleast_1d(np.asarray(steps, dtype=int))
    out = np.zeros_like(values)
    src, dst = [], []
    for s, n in zip(steps, values.shape):
        if abs(s) >= n:
            return out
        if s >= 0:
            src.append(slice(0, n - s))
            dst.append(slice(s, n))
        else:
            src.append(slice(-s, n))
            dst.append(slice(0, n + s))
    out[tuple(dst)] = values[tuple(src)]
    return out


def translate(f: GridFunction, t) -> GridFunction:
    """T_t f = f(. - t) for t an exact multiple of the spacing per axis.

    Samples shifted past the boundary are dropped and zeros shifted in.
    """
    steps = f.grid.steps(t)
    return GridFunction(f.grid, shift_array(f.values, steps))


def _phase(grid: Grid, omega, sign: float = 1.0) -> np.ndarray:
    """exp(sign * 2*pi*i <omega, x>) as a broadcastable product over axes."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if omega.shape != (grid.dim,):
        raise ValueError(f"frequency must have {grid.dim} component(s), got shape {omega.shape}")
    x = grid.axis_coords()
    out = np.ones((), dtype=complex)
    for ax in range(grid.dim):
        shape = [1] * grid.dim
        shape[ax] = grid.samples_per_axis
        out = out * np.exp(sign * 2j * np.pi * omega[ax] * x).reshape(shape)
    return out


def modulate(f: GridFunction, omega) -> GridFunction:
    """M_omega f = exp(2*pi*i <omega, x>) f(x); exact at any frequency."""
    return GridFunction(f.grid, f.values * _phase(f.grid, omega))


def tf_shift(g: GridFunction, t, omega) -> GridFunction:
    """Time-frequency shift: g(x - t) * exp(2*pi*i <x, omega>).

    Equals M_omega T_t g; the phase multiplies by x, not x - t.
    """
    return modulate(translate(g, t), omega)


def mt_commutation_phase(t, omega) -> complex:
    """Scalar c with T_t M_omega = c * M_omega T_t, namely exp(-2*pi*i <omega, t>)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    return complex(np.exp(-2j * np.pi * float(np.dot(omega, t))))


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Riemann-sum pairing h^d * sum f(x) conj(g(x)).

    Raises GridMismatchError when the grids differ.
    """
    _require_same_grid(f, g)
    return complex(f.grid.cell_measure * np.vdot(g.values, f.values))


def l2_norm(f: GridFunction) -> float:
    return float(np.sqrt(f.grid.cell_measure) * np.linalg.norm(f.values))


def support_index_bounds(f: GridFunction) -> list[tuple[int, int]] | None:
    """Per-axis (lo, hi) index bounds of the nonzero samples, or None if f == 0."""
    nz = f.values != 0
    if not nz.any():
        return None
    bounds = []
    for ax in range(f.grid.dim):
        other = tuple(i for i in range(f.grid.dim) if i != ax)
        hit = nz.any(axis=other) if other else nz
        idx = np.nonzero(hit)[0]
        bounds.append((int(idx[0]), int(idx[-1])))
    return bounds


def write_csv(f: GridFunction, fp) -> None:
    """Write samples as CSV with columns x_1..x_d, re, im (17 significant digits)."""
    d = f.grid.dim
    header = ",".join(f"x_{j + 1}" for j in range(d)) + ",re,im\n"
    fp.write(header)
    x = f.grid.axis_coords()
    flat = f.values.reshape(-1)
    for k, idx in enumerate(np.ndindex(f.grid.shape)):
        coords = ",".join(f"{x[i]:.17g}" for i in idx)
        fp.write(f"{coords},{flat[k].real:.17g},{flat[k].imag:.17g}\n")
