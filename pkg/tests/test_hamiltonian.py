import numpy as np
import pytest

from qstnet.errors import InvalidVarianceError, SizeLimitError, VertexIndexError
from qstnet.graph import antipodes, complete, complete_minus_edge, from_edge_list, path, theta
from qstnet.hamiltonian import (
    NoiseMode,
    NoiseSpec,
    apply_noise,
    build,
    excitation_index,
    full_space_hamiltonian,
    full_space_oracle,
    realization_seed,
    shift_vector,
)


def test_build_path2():
    h = build(path(2), {0: 1.5})
    np.testing.assert_array_equal(h.matrix, [[1.5, 2.0], [2.0, 0.0]])


def test_build_k5_with_io_shifts():
    h = build(complete(5), {0: 10, 4: 10}).matrix
    assert np.array_equal(np.diag(h), [10, 0, 0, 0, 10])
    off = h[~np.eye(5, dtype=bool)]
    assert np.all(off == 2.0)


def test_build_theta_zero_off_edges():
    g = theta(3, 4)
    h = build(g).matrix
    for a in range(g.n):
        for b in range(g.n):
            if a != b:
                assert h[a, b] == (2.0 if g.has_edge(a, b) else 0.0)


def test_hamiltonian_read_only():
    h = build(path(3))
    with pytest.raises(ValueError):
        h.matrix[0, 0] = 1.0


def test_shift_vector_range():
    with pytest.raises(VertexIndexError):
        shift_vector(3, {3: 1.0})


def test_excitation_index_leftmost_factor():
    assert excitation_index(3, 0) == 0b100
    assert excitation_index(3, 2) == 0b001


def _families_up_to(nmax):
    out = []
    for n in range(2, nmax + 1):
        out.append(complete(n))
        out.append(path(n))
        if n >= 3:
            out.append(complete_minus_edge(n, 0, n - 1))
    for l in range(1, 7):
        for m in range(3, 9):
            g = theta(l, m)
            if g.n <= nmax:
                out.append(g)
    return out


@pytest.mark.parametrize("g", _families_up_to(7), ids=lambda g: g.label)
def test_full_space_oracle_matches(g):
    rng = np.random.default_rng(g.n * 31 + g.num_edges)
    shifts = {v: float(x) for v, x in enumerate(rng.normal(0, 5, g.n))}
    ref = full_space_oracle(g, shifts).matrix
    assert np.max(np.abs(build(g, shifts).matrix - ref)) <= 1e-12


def test_full_space_dimension_and_hermitian():
    h = full_space_hamiltonian(complete(4), {0: 2.0})
    assert h.shape == (16, 16)
    assert abs(h - h.getH()).max() == 0


def test_full_space_conserves_excitation_number():
    n = 4
    h = full_space_hamiltonian(theta(2, 3), {1: 0.7}).tocoo()
    weights = np.array([bin(k).count("1") for k in range(1 << n)])
    assert np.all(weights[h.row] == weights[h.col])


def test_full_space_size_limit():
    with pytest.raises(SizeLimitError):
        full_space_oracle(path(13))


def test_noise_spec_rejects_negative_variance():
    with pytest.raises(InvalidVarianceError):
        NoiseSpec(NoiseMode.VERTEX, -0.1, 0)
    with pytest.raises(InvalidVarianceError):
        NoiseSpec("edge", float("nan"), 0)


def test_zero_variance_is_identity():
    g = complete_minus_edge(5, 0, 4)
    h = build(g, {0: 4, 4: 4})
    for mode in NoiseMode:
        assert np.array_equal(apply_noise(h, g, NoiseSpec(mode, 0.0, 7)).matrix, h.matrix)


@pytest.mark.parametrize("mode", list(NoiseMode))
def test_noise_is_symmetric_and_deterministic(mode):
    g = theta(3, 5)
    h = build(g, {0: 1.0})
    a = apply_noise(h, g, NoiseSpec(mode, 0.3, 42)).matrix
    b = apply_noise(h, g, NoiseSpec(mode, 0.3, 42)).matrix
    c = apply_noise(h, g, NoiseSpec(mode, 0.3, 43)).matrix
    assert np.array_equal(a, a.T)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_vertex_noise_touches_only_diagonal():
    g = complete(5)
    h = build(g)
    m = apply_noise(h, g, NoiseSpec(NoiseMode.VERTEX, 1.0, 3)).matrix
    off = ~np.eye(5, dtype=bool)
    assert np.array_equal(m[off], h.matrix[off])
    assert np.all(np.diag(m) != 0)


def test_edge_noise_only_on_edges():
    g = from_edge_list(4, [(0, 1), (1, 2), (2, 3)])
    h = build(g, {0: 5})
    m = apply_noise(h, g, NoiseSpec(NoiseMode.EDGE, 1.0, 3)).matrix
    assert np.array_equal(np.diag(m), np.diag(h.matrix))
    for a in range(4):
        for b in range(4):
            if a != b and not g.has_edge(a, b):
                assert m[a, b] == 0.0
    assert all(m[a, b] != 2.0 for a, b in g.edges)


def test_realization_seed_distinct():
    seeds = {realization_seed(12345, a, r) for a in range(20) for r in range(500)}
    assert len(seeds) == 20 * 500
    assert realization_seed(1, 2, 3) == realization_seed(1, 2, 3)
    assert realization_seed(1, 2, 3) != realization_seed(1, 3, 2)


@pytest.mark.parametrize("mode", list(NoiseMode))
def test_noise_moments_law_of_large_numbers(mode):
    # Each perturbed entry should be N(0, sigma^2) across realizations.
    g = complete(4)
    h = build(g)
    var = 0.5
    reps = 100_000
    draws = np.empty((reps, 4, 4))
    for r in range(reps):
        draws[r] = apply_noise(h, g, NoiseSpec(mode, var, realization_seed(9, r))).matrix
    delta = draws - h.matrix
    sel = np.eye(4, dtype=bool) if mode is NoiseMode.VERTEX else np.triu(np.ones((4, 4), dtype=bool), 1)
    samples = delta[:, sel]
    se_mean = np.sqrt(var / reps)
    assert np.all(np.abs(samples.mean(axis=0)) < 5 * se_mean)
    # sample variance has standard error ~ var * sqrt(2 / reps)
    assert np.all(np.abs(samples.var(axis=0) - var) < 5 * var * np.sqrt(2 / reps))
    corr = np.corrcoef(samples.T)
    assert np.max(np.abs(corr - np.eye(corr.shape[0]))) < 0.02
