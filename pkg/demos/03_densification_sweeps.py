"""Densifying the lattice drives the frame operator to the identity.

Two sweeps along a_j = b_j = 2^-j: the measured error ||S f - f|| in a
W(L^p, l^q) norm, and the operator-norm proxy built from the diagonal
deviation of the diagonal correlation from 1 and the off-diagonal tail.
"""
import math

from gabframes import (
    ExponentPair,
    Grid,
    SweepSchedule,
    WindowSpec,
    convergence_sweep,
    opnorm_sweep,
)

grid = Grid(half_extent=64.0, spacing=1 / 32)
pairs = tuple((2.0 ** -j, 2.0 ** -j) for j in range(1, 5))

for pq in [(1, 2), (2, 2), (2, math.inf)]:
    schedule = SweepSchedule(
        grid=grid,
        g_spec=WindowSpec.bspline(2),
        gamma_spec=WindowSpec.bspline(2),
        pairs=pairs,
        pq=ExponentPair.of(*pq),
        f_spec=WindowSpec.gaussian(1.0, 3.0),
    )
    report = convergence_sweep(schedule)
    print(f"convergence in W(L^{pq[0]}, l^{pq[1]})".replace("inf", "oo"))
    print(f"  {'a = b':>10} {'||Sf - f||':>14} {'diag deviation':>16} {'tail':>10} {'weak*':>10}")
    for r in report.records:
        print(f"  {r.a:>10g} {r.err_f:>14.6e} {r.diag_dev:>16.6e} "
              f"{r.tail:>10.2e} {r.weakstar:>10.2e}")
    print(f"  last/first ratio {report.trend_ratio:.2e} "
          f"(monotone={report.monotone}, passed={report.passed})\n")

schedule = SweepSchedule(
    grid=Grid(half_extent=8.0, spacing=1 / 32),
    g_spec=WindowSpec.gaussian(1.0, 3.0),
    gamma_spec=WindowSpec.gaussian(1.0, 3.0),
    pairs=tuple((2.0 ** -j, 2.0 ** -j) for j in range(1, 6)),
    pq=ExponentPair.of(2, 2),
)
report = opnorm_sweep(schedule)
print("operator-norm proxy, gaussian pair")
print(f"  {'a = b':>10} {'proxy lower':>14} {'proxy upper':>14} {'closed-form bound':>18}")
for r in report.records:
    print(f"  {r.a:>10g} {r.proxy_lower:>14.6e} {r.proxy_upper:>14.6e} {r.norm_bound:>18.4f}")
print(f"  last/first ratio {report.trend_ratio:.2e} (passed={report.passed})")
