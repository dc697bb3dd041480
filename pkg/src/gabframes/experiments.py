"""Densification experiments: convergence sweeps, Riemann-sum uniformity,
and the sup-norm counterexample.

The continuum limit (a, b) -> (0, 0) is realized as finite schedules of
strictly decreasing commensurate pairs.  Trend acceptance uses the
last-over-first ratio (< 0.2) rather than per-step monotonicity, because
Riemann-sum errors oscillate at commensurate resonances; per-step
monotonicity is still recorded.  Schedule points are independent and may be
evaluated by a thread pool; reports are assembled in schedule order, so
results do not depend on the pool size.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .amalgam import Exponent, ExponentPair, amalgam_norm, pairing
from .errors import ConfigError, ResolutionError
from .grid import Grid, GridFunction, support_index_bounds, translate
from .operators import GaborSystem
from .walnut import (
    correlation_family,
    fold_to_cell,
    diagonal_correlation,
    operator_norm_upper_bound,
    periodic_extension,
    tail_sum,
    walnut_apply,
)
from .windows import WindowSpec, sample_window

__all__ = [
    "SweepSchedule",
    "SweepRecord",
    "SweepReport",
    "convergence_sweep",
    "opnorm_sweep",
    "RiemannRecord",
    "riemann_uniformity",
    "DiagonalDecayRecord",
    "diagonal_decay_sweep",
    "CounterexampleRecord",
    "CounterexampleReport",
    "counterexample_run",
    "TREND_RATIO_LIMIT",
]

TREND_RATIO_LIMIT = 0.2

# fixed dual test set probing weak* convergence through pairings
_DUAL_TEST_SPECS = (
    WindowSpec.indicator_cube(1.0),
    WindowSpec.bspline(2),
    WindowSpec.gaussian(1.0, 3.0),
)


@dataclass(frozen=True)
class SweepSchedule:
    """An ordered densification schedule with its windows and test function.

    pairs must be strictly decreasing in both components and commensurate
    with the grid (a_j and 1/b_j integer multiples of the spacing).
    """

    grid: Grid
    g_spec: WindowSpec
    gamma_spec: WindowSpec
    pairs: tuple[tuple[float, float], ...]
    pq: ExponentPair
    f_spec: WindowSpec | None = None
    f_shift: tuple[float, ...] | None = None
    out_path: str | None = None

    def __post_init__(self):
        if not self.pairs:
            raise ConfigError("schedule needs at least one (a, b) pair")
        object.__setattr__(self, "pairs", tuple((float(a), float(b)) for a, b in self.pairs))
        object.__setattr__(self, "pq", ExponentPair.of(self.pq))
        prev = None
        for a, b in self.pairs:
            self.grid.steps_scalar(a)
            self.grid.steps_scalar(1.0 / b)
            if prev is not None and not (a < prev[0] and b < prev[1]):
                raise ConfigError(
                    f"schedule pairs must be strictly decreasing, got {prev} then {(a, b)}")
            prev = (a, b)

    def sample_windows(self) -> tuple[GridFunction, GridFunction]:
        return sample_window(self.g_spec, self.grid), sample_window(self.gamma_spec, self.grid)

    def sample_f(self) -> GridFunction:
        if self.f_spec is None:
            raise ConfigError("this schedule has no test-function spec")
        f = sample_window(self.f_spec, self.grid)
        if self.f_shift is not None:
            f = translate(f, self.f_shift)
        return f


@dataclass
class SweepRecord:
    a: float
    b: float
    diag_dev: float
    tail: float
    norm_bound: float
    wall_time: float
    err_f: float | None = None
    weakstar: float | None = None
    residue: float | None = None
    bound_ok: bool | None = None
    proxy_upper: float | None = None
    proxy_lower: float | None = None


@dataclass
class SweepReport:
    records: list[SweepRecord]
    trend_ratio: float
    monotone: bool
    passed: bool

    @property
    def errors(self) -> list[float]:
        return [r.err_f if r.err_f is not None else r.proxy_upper for r in self.records]


def _trend(values: list[float]) -> tuple[float, bool, bool]:
    first, last = values[0], values[-1]
    if first <= 1e-14:  # already converged at the coarsest point
        return 0.0, True, True
    ratio = last / first
    monotone = all(values[i + 1] <= values[i] + 1e-15 for i in range(len(values) - 1))
    return ratio, monotone, ratio < TREND_RATIO_LIMIT


def _boundary_margin(f: GridFunction) -> float:
    bounds = support_index_bounds(f)
    if bounds is None:
        return math.inf
    grid = f.grid
    margin_steps = min(min(lo, grid.samples_per_axis - 1 - hi) for lo, hi in bounds)
    return margin_steps * grid.spacing


def _support_diameter(f: GridFunction) -> float:
    bounds = support_index_bounds(f)
    if bounds is None:
        return 0.0
    return max(hi - lo for lo, hi in bounds) * f.grid.spacing


def _require_margin(schedule: SweepSchedule, f: GridFunction,
                    g: GridFunction, gamma: GridFunction) -> None:
    need = max(1.0 / b for _, b in schedule.pairs)
    need += _support_diameter(g) + _support_diameter(gamma)
    have = _boundary_margin(f)
    if have < need:
        raise ConfigError(
            f"test function is {have:g} from the boundary but the schedule requires a "
            f"margin of at least {need:g}; enlarge the grid or shrink the shifts")


def _map_ordered(fn, items, threads: int):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def convergence_sweep(schedule: SweepSchedule, threads: int = 1) -> SweepReport:
    """Measure ||S f - f||_{W(p,q)} along the schedule.

    The test function must keep a boundary margin of max(1/b) plus the
    window support diameters, so truncation cannot pollute the limit.
    Each record also carries the multiplier/tail split of the error bound
    and a weak*-pairing column against a fixed dual test set.
    """
    g, gamma = schedule.sample_windows()
    f = schedule.sample_f()
    _require_margin(schedule, f, g, gamma)
    pq = schedule.pq
    f_norm = amalgam_norm(f, pq)
    duals = []
    for spec in _DUAL_TEST_SPECS:
        h = sample_window(spec, schedule.grid)
        duals.append((h, amalgam_norm(h, pq.conjugate())))

    def run_pair(ab: tuple[float, float]) -> SweepRecord:
        a, b = ab
        t0 = time.perf_counter()
        sys = GaborSystem(g, gamma, a, b)
        family = correlation_family(sys)
        sf = walnut_apply(f, sys, family)
        diff = sf - f
        err = amalgam_norm(diff, pq)
        dev = float(np.abs(diagonal_correlation(sys) - 1.0).max())
        ts = tail_sum(sys, family)
        weak = max(abs(pairing(diff, h)) / hn for h, hn in duals)
        residue = _boundary_residue(sf, sys, pq)
        bound = (dev + ts.tail / abs(sys.pairing)) * f_norm + residue
        record = SweepRecord(
            a=a, b=b, diag_dev=dev, tail=ts.tail,
            norm_bound=operator_norm_upper_bound(sys),
            wall_time=time.perf_counter() - t0,
            err_f=err, weakstar=weak, residue=residue,
            bound_ok=err <= bound + 1e-12 * (1.0 + f_norm),
        )
        return record

    records = _map_ordered(run_pair, schedule.pairs, threads)
    ratio, monotone, passed = _trend([r.err_f for r in records])
    return SweepReport(records, ratio, monotone, passed)


def _boundary_residue(sf: GridFunction, sys: GaborSystem, pq: ExponentPair) -> float:
    # operator output falling within one shift-reach of the boundary; with a
    # proper margin this is zero up to window tails
    grid = sys.grid
    reach = sys.inv_b_steps + max(_support_diameter(sys.g), _support_diameter(sys.gamma)) \
        * grid.samples_per_unit
    reach = int(min(reach, grid.samples_per_axis // 2))
    if reach <= 0:
        return 0.0
    mask = np.zeros(grid.shape, dtype=bool)
    for ax in range(grid.dim):
        sl_lo = [slice(None)] * grid.dim
        sl_lo[ax] = slice(0, reach)
        sl_hi = [slice(None)] * grid.dim
        sl_hi[ax] = slice(grid.samples_per_axis - reach, grid.samples_per_axis)
        mask[tuple(sl_lo)] = True
        mask[tuple(sl_hi)] = True
    strip = GridFunction(grid, np.where(mask, sf.values, 0.0))
    return amalgam_norm(strip, pq)


def opnorm_sweep(schedule: SweepSchedule, threads: int = 1) -> SweepReport:
    """Track the operator-norm proxy: diagonal deviation +/- tail/|<gamma,g>|.

    Requires window families whose product is Riemann integrable
    (indicator, bspline, gaussian); fat_cantor is rejected.
    """
    for spec in (schedule.g_spec, schedule.gamma_spec):
        if spec.family == "fat_cantor":
            raise ConfigError("opnorm sweeps need Riemann-integrable window products; "
                              "fat_cantor windows are the counterexample, not the subject")
    g, gamma = schedule.sample_windows()

    def run_pair(ab: tuple[float, float]) -> SweepRecord:
        a, b = ab
        t0 = time.perf_counter()
        sys = GaborSystem(g, gamma, a, b)
        family = correlation_family(sys)
        dev = float(np.abs(diagonal_correlation(sys) - 1.0).max())
        ts = tail_sum(sys, family)
        spread = ts.tail / abs(sys.pairing)
        return SweepRecord(
            a=a, b=b, diag_dev=dev, tail=ts.tail,
            norm_bound=operator_norm_upper_bound(sys),
            wall_time=time.perf_counter() - t0,
            proxy_upper=dev + spread, proxy_lower=max(dev - spread, 0.0),
        )

    records = _map_ordered(run_pair, schedule.pairs, threads)
    ratio, monotone, passed = _trend([r.proxy_upper for r in records])
    return SweepReport(records, ratio, monotone, passed)


@dataclass
class RiemannRecord:
    a: float
    deviation: float


def riemann_uniformity(f: GridFunction, a_list) -> list[RiemannRecord]:
    """Worst-offset Riemann-sum defect sup_y |a^d sum_n f(y + n a) - integral f|.

    The offset y runs over every cell sample of [0, a)^d; the reference
    integral is the grid Riemann sum h^d sum f.
    """
    grid = f.grid
    integral = grid.cell_measure * complex(f.values.sum())
    out = []
    for a in a_list:
        p = grid.steps_scalar(a)
        cell = fold_to_cell(f.values, p, grid.half_extent_steps)
        dev = float(np.abs(a ** grid.dim * cell - integral).max())
        out.append(RiemannRecord(float(a), dev))
    return out


@dataclass
class DiagonalDecayRecord:
    a: float
    norm: float


def diagonal_decay_sweep(f: GridFunction, p, a_list, g: GridFunction,
                  gamma: GridFunction | None = None) -> list[DiagonalDecayRecord]:
    """Global L^p norms of the diagonal defect (diag - 1) f along cell sizes.

    Computed with the plain global Riemann sum, independent of the amalgam
    aggregation machinery.
    """
    if gamma is None:
        gamma = g
    grid = f.grid
    p = Exponent.of(p)
    out = []
    for a in a_list:
        sys = GaborSystem(g, gamma, float(a), 1.0)
        mult = periodic_extension(diagonal_correlation(sys), grid) - 1.0
        vals = np.abs(mult * f.values)
        if p.is_inf:
            nrm = float(vals.max())
        else:
            nrm = float((grid.cell_measure * np.sum(vals ** p.value)) ** (1.0 / p.value))
        out.append(DiagonalDecayRecord(float(a), nrm))
    return out


@dataclass
class CounterexampleRecord:
    depth: int
    spacing: float
    witness_a: float
    witness_norm: float
    contrast_a: float
    contrast_norm: float
    witness_ok: bool
    contrast_ok: bool
    separation_ok: bool


@dataclass
class CounterexampleReport:
    q: str
    records: list[CounterexampleRecord]
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = all(r.witness_ok and r.contrast_ok and r.separation_ok
                          for r in self.records)


DEFAULT_COUNTEREXAMPLE_CANDIDATES = (1.0, 0.5, 0.25, 0.125, 0.0625)


def counterexample_run(depths, q="inf", a_candidates=None, spacing: float | None = None,
                       half_extent: float = 2.0, threads: int = 1) -> CounterexampleReport:
    """Witness the sup-norm failure with fat-Cantor windows.

    For each depth k (grid spacing 4^-k / 8 unless overridden) the search
    maximizes the W(L^inf, l^q) norm of (diag - 1) chi_[0,1) over the candidate
    cell sizes with g = gamma = chi_{E_k}; a gap point of E_k whose a-orbit
    misses the set makes the diagonal correlation vanish there, pinning the
    norm at 1.  The same schedule
    with g = gamma = chi_[0,1) (Riemann integrable) is the contrast curve; at
    its finest a the deviation collapses, so the two curves separate.
    """
    depths = [int(k) for k in depths]
    candidates = tuple(float(a) for a in (a_candidates or DEFAULT_COUNTEREXAMPLE_CANDIDATES))
    q_pair = ExponentPair.of((math.inf, q))

    def run_depth(k: int) -> CounterexampleRecord:
        h = spacing if spacing is not None else 4.0 ** (-k) / 8.0
        if h > 4.0 ** (-k) / 4.0:
            raise ResolutionError(
                f"depth {k} gaps need spacing <= {4.0 ** (-k) / 4.0:g}, got {h:g}")
        grid = Grid(half_extent, h)
        fat = sample_window(WindowSpec.fat_cantor(k), grid)
        flat = sample_window(WindowSpec.indicator_cube(1.0), grid)
        f0 = flat  # chi_[0,1) doubles as the test function

        def deviation(window: GridFunction, a: float) -> float:
            sys = GaborSystem(window, window, a, 1.0)
            mult = periodic_extension(diagonal_correlation(sys), grid) - 1.0
            return amalgam_norm(GridFunction(grid, mult * f0.values), q_pair)

        witness_a, witness_norm = candidates[0], -math.inf
        for a in candidates:
            val = deviation(fat, a)
            if val > witness_norm:
                witness_a, witness_norm = a, val
        contrast_a = candidates[-1]
        contrast_norm = deviation(flat, contrast_a)
        separation = witness_norm / contrast_norm if contrast_norm > 0 else math.inf
        return CounterexampleRecord(
            depth=k, spacing=grid.spacing,
            witness_a=witness_a, witness_norm=witness_norm,
            contrast_a=contrast_a, contrast_norm=contrast_norm,
            witness_ok=witness_norm >= 1.0 - 2.0 * grid.spacing,
            contrast_ok=contrast_norm <= 0.05,
            separation_ok=separation >= 10.0,
        )

    records = _map_ordered(run_depth, depths, threads)
    return CounterexampleReport(str(Exponent.of(q)), records)
