"""Exact single-excitation dynamics through a symmetric eigendecomposition."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import InvalidWindowError, NumericConsistencyError, NumericInputError, VertexIndexError
from .hamiltonian import ShiftedHamiltonian

PROB_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @cached_property
    def centered_eigenvalues(self) -> np.ndarray:
        # A global energy offset only changes the phase; centering keeps lam*t small.
        lam = self.eigenvalues
        return lam - 0.5 * (lam[0] + lam[-1])

    def weights(self, i: int, j: int) -> np.ndarray:
        """Real modal weights ``V[i, k] * V[j, k]`` of the ``(i, j)`` amplitude."""
        _check_pair(self.n, i, j)
        return self.eigenvectors[i] * self.eigenvectors[j]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


@dataclass(frozen=True, eq=False)
class FidelityTrace:
    times: np.ndarray
    values: np.ndarray
    source: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,fidelity\n")
        for t, f in zip(self.times, self.values):
            buf.write(f"{t:.17g},{f:.17g}\n")
        return buf.getvalue()


def _check_pair(n: int, i: int, j: int) -> None:
    for v in (i, j):
        if not 0 <= v < n:
            raise VertexIndexError(f"vertex {v} out of range [0, {n})")


def eigendecompose(h: ShiftedHamiltonian | np.ndarray) -> EigenSystem:
    m = h.matrix if isinstance(h, ShiftedHamiltonian) else np.asarray(h, dtype=float)
    if not np.all(np.isfinite(m)):
        raise NumericInputError("Hamiltonian has non-finite entries")
    lam, vec = np.linalg.eigh(m)
    lam.setflags(write=False)
    vec.setflags(write=False)
    return EigenSystem(lam, vec)


def propagator(es: EigenSystem, t: float) -> np.ndarray:
    """``U(t) = V diag(exp(-i lam t)) V^T``."""
    if not math.isfinite(t):
        raise NumericInputError(f"time must be finite, got {t}")
    v = es.eigenvectors
    return (v * np.exp(-1j * es.eigenvalues * t)) @ v.T


def checked_probability(f):
    """Clip round-off excursions out of [0, 1]; raise on anything larger."""
    arr = np.asarray(f, dtype=float)
    lo = np.min(arr, initial=0.0)
    hi = np.max(arr, initial=1.0)
    if lo < -PROB_SLACK or hi > 1.0 + PROB_SLACK or not np.all(np.isfinite(arr)):
        raise NumericConsistencyError(f"fidelity outside [0, 1]: min={lo!r}, max={hi!r}")
    out = np.clip(arr, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def fidelity(es: EigenSystem, i: int, j: int, t: float) -> float:
    """``|<i| exp(-iHt) |j>|**2``."""
    if not math.isfinite(t):
        raise NumericInputError(f"time must be finite, got {t}")
    return checked_probability(kernels.fidelity_at(es.weights(i, j), es.centered_eigenvalues, float(t)))


def time_grid(tmax: float, steps: int) -> np.ndarray:
    """Samples ``k * tmax / steps`` for ``k = 0..steps``, endpoints included."""
    if steps < 1 or not tmax > 0:
        raise InvalidWindowError(f"need tmax > 0 and steps >= 1, got tmax={tmax}, steps={steps}")
    return np.arange(steps + 1) * (tmax / steps)


def fidelity_values(es: EigenSystem, i: int, j: int, times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(times)):
        raise NumericInputError("time grid has non-finite samples")
    return checked_probability(kernels.fidelity_grid(es.weights(i, j), es.centered_eigenvalues, times))


def fidelity_trace(es: EigenSystem, i: int, j: int, grid, source: dict | None = None) -> FidelityTrace:
    times = np.atleast_1d(np.asarray(grid, dtype=float))
    if times.size > 1 and not np.all(np.diff(times) > 0):
        raise InvalidWindowError("time grid must be strictly increasing")
    values = np.atleast_1d(fidelity_values(es, i, j, times))
    return FidelityTrace(times, values, dict(source or {}, i=i, j=j))
