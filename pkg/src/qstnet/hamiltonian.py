"""Single-excitation XY Hamiltonians with on-site energy shifts and disorder."""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from .errors import InvalidVarianceError, SizeLimitError, VertexIndexError
from .graph import Graph

COUPLING = 2.0
ORACLE_MAX_N = 12

ShiftSpec = Mapping[int, float]


@dataclass(frozen=True, eq=False)
class ShiftedHamiltonian:
    """Real symmetric ``n x n`` matrix acting on the single-excitation subspace."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        np.savetxt(buf, self.matrix, delimiter=",", fmt="%.17e")
        return buf.getvalue()


class NoiseMode(str, enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian disorder on qubit frequencies (``VERTEX``) or couplings (``EDGE``)."""

    mode: NoiseMode
    variance: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "mode", NoiseMode(self.mode))
        _check_variance(self.variance)


def _check_variance(variance: float) -> None:
    if not variance >= 0.0:
        raise InvalidVarianceError(f"variance must be >= 0, got {variance}")


def shift_vector(n: int, shifts: ShiftSpec | None) -> np.ndarray:
    diag = np.zeros(n)
    for v, value in (shifts or {}).items():
        if not 0 <= int(v) < n:
            raise VertexIndexError(f"shift on vertex {v} out of range [0, {n})")
        diag[int(v)] = float(value)
    return diag


def build(g: Graph, shifts: ShiftSpec | None = None) -> ShiftedHamiltonian:
    """Diagonal shifts plus coupling 2 on every edge, zero elsewhere."""
    m = COUPLING * g.adjacency()
    m[np.diag_indices(g.n)] = shift_vector(g.n, shifts)
    return ShiftedHamiltonian(m)


def realization_seed(seed: int, *indices: int) -> int:
    """64-bit seed for one Monte Carlo realization.

    Distinct ``(seed, indices)`` tuples map to statistically independent
    streams, so realizations can be drawn in any order or in parallel.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in indices))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def apply_noise(h: ShiftedHamiltonian, g: Graph, spec: NoiseSpec) -> ShiftedHamiltonian:
    """Add one Gaussian disorder realization drawn from ``spec.seed``.

    Vertex noise perturbs every diagonal entry independently. Edge noise
    draws one value per existing edge (in sorted edge order) and adds it to
    both symmetric entries; non-edges stay exactly zero.
    """
    _check_variance(spec.variance)
    rng = np.random.default_rng(spec.seed)
    sigma = float(np.sqrt(spec.variance))
    m = np.array(h.matrix, dtype=float)
    if spec.mode is NoiseMode.VERTEX:
        m[np.diag_indices(h.n)] += rng.normal(0.0, sigma, size=h.n)
    else:
        edges = g.sorted_edges()
        xi = rng.normal(0.0, sigma, size=len(edges))
        for (i, j), x in zip(edges, xi):
            m[i, j] += x
            m[j, i] = m[i, j]
    return ShiftedHamiltonian(m)


_I2 = sp.identity(2, format="csr", dtype=complex)
_X = sp.csr_matrix(np.array([[0, 1], [1, 0]], dtype=complex))
_Y = sp.csr_matrix(np.array([[0, -1j], [1j, 0]], dtype=complex))
_N1 = sp.csr_matrix(np.array([[0, 0], [0, 1]], dtype=complex))


def _site_product(n: int, ops: dict[int, sp.spmatrix]) -> sp.csr_matrix:
    out = sp.identity(1, format="csr", dtype=complex)
    for v in range(n):
        out = sp.kron(out, ops.get(v, _I2), format="csr")
    return out


def excitation_index(n: int, j: int) -> int:
    """Computational-basis index of the state with one excitation at vertex ``j``.

    Vertex 0 is the leftmost tensor factor.
    """
    return 1 << (n - 1 - j)


def full_space_hamiltonian(g: Graph, shifts: ShiftSpec | None = None) -> sp.csr_matrix:
    """XY network Hamiltonian on the full ``2**n`` space, plus on-site shift terms."""
    if g.n > ORACLE_MAX_N:
        raise SizeLimitError(f"full-space construction limited to n <= {ORACLE_MAX_N}, got {g.n}")
    n = g.n
    dim = 1 << n
    h = sp.csr_matrix((dim, dim), dtype=complex)
    a = g.adjacency()
    for i in range(n):
        for j in range(n):
            if i != j and a[i, j]:
                xx = _site_product(n, {i: _X, j: _X})
                yy = _site_product(n, {i: _Y, j: _Y})
                h = h + 0.5 * a[i, j] * (xx + yy)
    for v, value in enumerate(shift_vector(n, shifts)):
        if value:
            h = h + value * _site_product(n, {v: _N1})
    return h


def full_space_oracle(g: Graph, shifts: ShiftSpec | None = None) -> ShiftedHamiltonian:
    """Restrict the full-space Hamiltonian to the single-excitation block."""
    h = full_space_hamiltonian(g, shifts)
    idx = [excitation_index(g.n, j) for j in range(g.n)]
    block = h[idx, :][:, idx].toarray()
    if np.max(np.abs(block.imag), initial=0.0) > 1e-14:
        raise ArithmeticError("single-excitation block is not real")
    return ShiftedHamiltonian(np.ascontiguousarray(block.real))
