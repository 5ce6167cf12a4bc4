"""Disorder-averaged transfer fidelity at a fixed evaluation time."""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .analytic import Family, pst_schedule
from .errors import InvalidParameterError, InvalidVarianceError, InvalidWindowError, UnsupportedGraphError
from .graph import Graph, complete, complete_minus_edge
from .hamiltonian import NoiseMode, NoiseSpec, ShiftSpec, apply_noise, build, realization_seed
from .search import maximize_fidelity
from .spectral import checked_probability, eigendecompose, fidelity

DEFAULT_SAMPLES = 2000
UNSHIFTED_WINDOW = (0.0, 10.0)


@dataclass(frozen=True, eq=False)
class SweepResult:
    sigma2_grid: np.ndarray
    mean_fidelity: np.ndarray
    std_error: np.ndarray
    samples: int
    mode: NoiseMode
    t_eval: float
    baseline: float
    shifted: bool = True

    def csv_rows(self) -> list[str]:
        return [
            f"{self.mode.value},{str(self.shifted).lower()},{s2:.17g},{m:.17g},{se:.17g},{self.samples},{self.t_eval:.17g}"
            for s2, m, se in zip(self.sigma2_grid, self.mean_fidelity, self.std_error)
        ]


SWEEP_HEADER = "mode,shifted,sigma2,mean_fidelity,std_error,samples,t_eval"


def sweep_csv(results: list[SweepResult]) -> str:
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for res in results:
        for row in res.csv_rows():
            buf.write(row + "\n")
    return buf.getvalue()


def sigma2_grid(start: float, stop: float, count: int) -> np.ndarray:
    return np.linspace(start, stop, count)


def _realization_fidelities(base, g, i, j, mode, variance, samples, t_eval, seed, grid_index):
    out = np.empty(samples)
    for r in range(samples):
        spec = NoiseSpec(mode, variance, realization_seed(seed, grid_index, r))
        es = eigendecompose(apply_noise(base, g, spec))
        out[r] = kernels.fidelity_at(es.weights(i, j), es.centered_eigenvalues, t_eval)
    return checked_probability(out)


def average_fidelity_sweep(
    g: Graph,
    shifts: ShiftSpec | None,
    i: int,
    j: int,
    mode: NoiseMode,
    sigma2: "np.ndarray | list[float]",
    samples: int,
    t_eval: float,
    seed: int,
    threads: int | None = None,
    shifted: bool = True,
) -> SweepResult:
    """Mean fidelity and its standard error for every variance on the grid.

    Realization ``r`` at grid index ``a`` is drawn from
    ``realization_seed(seed, a, r)``, so results do not depend on ``threads``.
    """
    mode = NoiseMode(mode)
    grid = np.asarray(sigma2, dtype=float)
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1, got {samples}")
    if not (math.isfinite(t_eval) and t_eval > 0):
        raise InvalidWindowError(f"evaluation time must be positive, got {t_eval}")
    for s2 in grid:
        if not s2 >= 0:
            raise InvalidVarianceError(f"variance must be >= 0, got {s2}")
    if threads is not None and threads < 1:
        raise InvalidParameterError(f"threads must be >= 1, got {threads}")

    base = build(g, shifts)
    baseline = fidelity(eigendecompose(base), i, j, t_eval)

    def point(a):
        f = _realization_fidelities(base, g, i, j, mode, float(grid[a]), samples, t_eval, seed, a)
        # Working with offsets from the baseline keeps a zero-variance point exact.
        dev = f - baseline
        mean = baseline + float(np.mean(dev))
        se = float(np.std(dev, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
        return min(max(mean, 0.0), 1.0), se

    with ThreadPoolExecutor(max_workers=threads) as pool:
        stats = list(pool.map(point, range(len(grid))))
    means = np.array([m for m, _ in stats])
    errs = np.array([s for _, s in stats])
    return SweepResult(grid, means, errs, samples, mode, float(t_eval), baseline, shifted)


def identify_family(g: Graph, i: int, j: int) -> Family:
    if g.n >= 3 and g == complete(g.n):
        return Family.KN
    if g.n >= 3 and i != j and g == complete_minus_edge(g.n, i, j):
        return Family.KN_MINUS
    raise UnsupportedGraphError(f"{g.label} is neither K_n nor K_n minus the ({i}, {j}) edge")


def shifted_vs_unshifted_comparison(
    g: Graph,
    i: int,
    j: int,
    mode: NoiseMode,
    sigma2,
    samples: int,
    seed: int,
    threads: int | None = None,
    window: tuple[float, float] = UNSHIFTED_WINDOW,
    grid_points: int = 100_000,
) -> tuple[SweepResult, SweepResult]:
    """Sweep with the optimal shift at its schedule time, and without any shift.

    The unshifted run is evaluated at the best time its own noiseless curve
    reaches inside ``window``.
    """
    family = identify_family(g, i, j)
    sched = pst_schedule(family, g.n)
    shifted = average_fidelity_sweep(
        g, {i: sched.dE_opt, j: sched.dE_opt}, i, j, mode, sigma2, samples, sched.time(0), seed, threads
    )
    es0 = eigendecompose(build(g))
    t0 = maximize_fidelity(es0, i, j, window, grid_points).t_star
    unshifted = average_fidelity_sweep(g, None, i, j, mode, sigma2, samples, t0, seed, threads, shifted=False)
    return shifted, unshifted
