"""Locating maximal-fidelity times and building transfer-time tables."""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidParameterError, InvalidSizeError, InvalidWindowError
from .graph import Graph, antipodes, count_geodesics, path, theta
from .hamiltonian import build
from .spectral import EigenSystem, checked_probability, eigendecompose

TABLE_THRESHOLD = 1 - 1e-3
CERTIFY_THRESHOLD = 1 - 1e-9
DEFAULT_GRID_POINTS = 100_000
WINDOW_FACTOR = 1.5
SAMPLES_PER_PERIOD = 32
TIE_TOL = 1e-9
REFINE_REL_TOL = 1e-10
MAX_REFINEMENTS = 50_000

# Transfer times as published; (dE, n) for chains and (l, n) at dE = 10 for theta graphs.
REPORTED_CHAIN_TIMES = {
    (10, 2): 0.7, (10, 3): 5, (10, 4): 19, (10, 5): 99,
    (20, 2): 0.7, (20, 3): 8, (20, 4): 81, (20, 5): 8010,
    (30, 2): 0.7, (30, 3): 12, (30, 4): 178, (30, 5): 2665,
    (40, 2): 0.7, (40, 3): 16, (40, 4): 313, (40, 5): 6260,
    (50, 2): 0.7, (50, 3): 20, (50, 4): 494, (50, 5): 12294,
}  # fmt: skip
REPORTED_THETA_TIMES = {
    (1, 3): 5, (1, 4): 19, (1, 5): 99,
    (2, 3): 3, (2, 4): 11, (2, 5): 62,
    (3, 3): 2, (3, 4): 9, (3, 5): 42,
    (4, 3): 1, (4, 4): 6, (4, 5): 36,
}  # fmt: skip
THETA_TABLE_SHIFT = 10


@dataclass(frozen=True)
class PstResult:
    t_star: float
    f_max: float
    is_pst: bool
    grid_resolution: float
    window: tuple[float, float]
    grid_points: int
    threshold: float


def _refine(w, lam, times, values, k, tol):
    lo = times[max(k - 1, 0)]
    hi = times[min(k + 1, len(times) - 1)]
    t_best, f_best = float(times[k]), float(values[k])
    if hi > lo:
        t, f = kernels.golden_max(w, lam, float(lo), float(hi), tol)
        if f > f_best:
            t_best, f_best = float(t), float(f)
    return t_best, f_best


def maximize_fidelity(
    es: EigenSystem,
    i: int,
    j: int,
    window: tuple[float, float],
    grid_points: int = DEFAULT_GRID_POINTS,
    pst_threshold: float = TABLE_THRESHOLD,
    first_reaching: bool = False,
) -> PstResult:
    """Dense grid scan of ``f(i, j; t)`` followed by golden-section refinement.

    Every grid local maximum that could still beat the best grid sample is
    refined on its bracketing interval until the bracket is below
    ``(t1 - t0) * 1e-10``. By default the global maximum is returned, with
    the earliest one winning among values within ``1e-9``. With
    ``first_reaching=True`` the earliest refined maximum with value
    ``>= pst_threshold`` is returned instead, if one exists.
    """
    t0, t1 = (float(x) for x in window)
    if not (math.isfinite(t0) and math.isfinite(t1) and t0 < t1):
        raise InvalidWindowError(f"window must satisfy t0 < t1, got {window!r}")
    if grid_points < 2:
        raise InvalidWindowError(f"need at least 2 grid points, got {grid_points}")

    w = es.weights(i, j)
    lam = np.ascontiguousarray(es.centered_eigenvalues)
    times = np.linspace(t0, t1, int(grid_points))
    h = (t1 - t0) / (grid_points - 1)
    values = checked_probability(kernels.fidelity_grid(w, lam, times))
    peaks = kernels.local_maxima(values)
    tol = (t1 - t0) * REFINE_REL_TOL

    # |f''| <= 4 R^2 with R the largest centered eigenvalue, so a sample can
    # sit at most R^2 h^2 / 2 below the peak it belongs to.
    radius = float(np.max(np.abs(lam)))
    slack = 0.5 * (radius * h) ** 2 + 1e-12

    def result(t, f):
        f = checked_probability(f)
        return PstResult(float(t), f, f >= pst_threshold, h, (t0, t1), int(grid_points), pst_threshold)

    if first_reaching:
        reachable = peaks[values[peaks] >= pst_threshold - slack]
        for k in reachable[:MAX_REFINEMENTS]:
            t, f = _refine(w, lam, times, values, k, tol)
            if f >= pst_threshold:
                return result(t, f)

    best_grid = float(values[peaks].max())
    cand = peaks[values[peaks] >= best_grid - slack]
    if cand.size > MAX_REFINEMENTS:
        cand = np.sort(cand[np.argsort(values[cand])[::-1][:MAX_REFINEMENTS]])
    refined = [_refine(w, lam, times, values, k, tol) for k in cand]
    f_top = max(f for _, f in refined)
    for t, f in refined:
        if f >= f_top - TIE_TOL:
            return result(t, f)
    raise AssertionError("unreachable")


def resolved_grid_points(es: EigenSystem, span: float, requested: int = DEFAULT_GRID_POINTS) -> int:
    """Grid size resolving the fastest oscillation with ``SAMPLES_PER_PERIOD`` samples."""
    spread = float(es.eigenvalues[-1] - es.eigenvalues[0])
    needed = math.ceil(span * spread / (2 * math.pi) * SAMPLES_PER_PERIOD) + 1
    return max(int(requested), needed)


def _cap(window_cap, reported, key):
    if window_cap is not None:
        if not window_cap > 0:
            raise InvalidWindowError(f"window cap must be positive, got {window_cap}")
        return float(window_cap)
    if key in reported:
        return WINDOW_FACTOR * reported[key]
    raise InvalidWindowError(f"no published time for {key}; pass window_cap explicitly")


def transfer_time(
    g: Graph,
    i: int,
    j: int,
    dE: float,
    window_cap: float,
    pst_threshold: float = TABLE_THRESHOLD,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> PstResult:
    """Earliest refined maximum reaching the threshold, else the global maximum.

    ``grid_points`` is a floor; it is raised as needed to resolve the fastest
    oscillation of the shifted spectrum over the window.
    """
    es = eigendecompose(build(g, {i: dE, j: dE}))
    points = resolved_grid_points(es, window_cap, grid_points)
    return maximize_fidelity(es, i, j, (0.0, window_cap), points, pst_threshold, first_reaching=True)


def chain_transfer_time(
    n: int,
    dE: float,
    pst_threshold: float = TABLE_THRESHOLD,
    window_cap: float | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> PstResult:
    if n < 2:
        raise InvalidSizeError(f"chain needs n >= 2, got {n}")
    cap = _cap(window_cap, REPORTED_CHAIN_TIMES, (dE, n))
    return transfer_time(path(n), 0, n - 1, dE, cap, pst_threshold, grid_points)


def theta_transfer_time(
    l: int,
    n: int,
    dE: float = THETA_TABLE_SHIFT,
    pst_threshold: float = TABLE_THRESHOLD,
    window_cap: float | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> PstResult:
    g = theta(l, n)
    reported = REPORTED_THETA_TIMES if dE == THETA_TABLE_SHIFT else {}
    cap = _cap(window_cap, reported, (l, n))
    a, b = antipodes(l, n)
    return transfer_time(g, a, b, dE, cap, pst_threshold, grid_points)


def estimate_transfer_time(g: Graph, i: int, j: int, chain_time: float) -> float:
    """Order-of-magnitude estimate: chain time divided by the geodesic count."""
    return chain_time / count_geodesics(g, i, j).count


@dataclass(frozen=True)
class TableRow:
    dE: float
    n: int
    l: int | None
    result: PstResult

    @property
    def window_cap(self) -> float:
        return self.result.window[1]


TABLE_HEADER = "dE,n,l,tStar,fMax,isPst,gridPoints,windowCap"


def table_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    buf.write(TABLE_HEADER + "\n")
    for row in rows:
        r = row.result
        l = "" if row.l is None else str(row.l)
        buf.write(
            f"{row.dE:.17g},{row.n},{l},{r.t_star:.17g},{r.f_max:.17g},"
            f"{str(r.is_pst).lower()},{r.grid_points},{row.window_cap:.17g}\n"
        )
    return buf.getvalue()


def _run_cells(func, cells, threads):
    if threads is not None and threads < 1:
        raise InvalidParameterError(f"threads must be >= 1, got {threads}")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: func(*c), cells))


def chain_table(
    shifts,
    sizes,
    pst_threshold: float = TABLE_THRESHOLD,
    window_cap: float | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int | None = None,
) -> list[TableRow]:
    cells = [(dE, n) for dE in shifts for n in sizes]

    def cell(dE, n):
        r = chain_transfer_time(n, dE, pst_threshold, window_cap, grid_points)
        return TableRow(dE, n, None, r)

    return _run_cells(cell, cells, threads)


def theta_table(
    ls,
    sizes,
    dE: float = THETA_TABLE_SHIFT,
    pst_threshold: float = TABLE_THRESHOLD,
    window_cap: float | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int | None = None,
) -> list[TableRow]:
    cells = [(l, n) for l in ls for n in sizes]

    def cell(l, n):
        r = theta_transfer_time(l, n, dE, pst_threshold, window_cap, grid_points)
        return TableRow(dE, n, l, r)

    return _run_cells(cell, cells, threads)
