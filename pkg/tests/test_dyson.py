"""Dyson solver: projector algebra, closed-form checks, channel
decoupling, symmetry preservation, Born limit."""

import math

import numpy as np
import pytest

from pairgf.dyson import (GridSpec, PotentialSpec, bare_channel_matrix,
                          dyson_solve, lift_spin_blocks, solve_dyson_matrix,
                          spin_projectors)
from pairgf.errors import DivergentArguments, SingularSystem
from pairgf.pair import SpinChannel


def _rng_matrices(n=4, seed=5):
    rng = np.random.default_rng(seed)
    g_e = 0.1 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    g_o = 0.1 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    g_e = g_e + g_e.T
    g_o = g_o + g_o.T
    u = rng.normal(size=n)
    w = np.full(n, 0.3)
    return g_e, g_o, u, w


# =============================================================================
# SPIN PROJECTORS
# =============================================================================

def test_projector_traces():
    lam_s, lam_t = spin_projectors()
    assert np.trace(lam_s) == pytest.approx(1.0, abs=1e-14)
    assert np.trace(lam_t) == pytest.approx(3.0, abs=1e-14)


def test_projector_orthogonality_and_completeness():
    lam_s, lam_t = spin_projectors()
    assert np.max(np.abs(lam_s @ lam_t)) < 1e-15
    assert np.max(np.abs(lam_s + lam_t - np.eye(4))) < 1e-15
    assert np.max(np.abs(lam_s @ lam_s - lam_s)) < 1e-15
    assert np.max(np.abs(lam_t @ lam_t - lam_t)) < 1e-15


def test_cross_channel_block_vanishes():
    # spin-independent potential lifted to spin space: Lambda_s U Lambda_t = 0
    lam_s, lam_t = spin_projectors()
    rng = np.random.default_rng(2)
    n = 3
    u_spin = np.kron(np.eye(4), np.diag(rng.normal(size=n)))
    cross = np.kron(lam_s, np.eye(n)) @ u_spin @ np.kron(lam_t, np.eye(n))
    assert np.linalg.norm(cross) < 1e-12


# =============================================================================
# SOLVER ALGEBRA
# =============================================================================

def test_zero_potential_returns_bare():
    g_e, _, _, w = _rng_matrices()
    got = solve_dyson_matrix(g_e, np.zeros(4), w)
    assert np.array_equal(got, g_e.astype(complex))


def test_single_point_closed_form():
    g = np.array([[0.37 - 0.21j]])
    u = np.array([1.3])
    w = np.array([0.5])
    got = solve_dyson_matrix(g, u, w)[0, 0]
    want = g[0, 0] / (1.0 - g[0, 0] * u[0] * w[0])
    assert abs(got - want) < 1e-14 * abs(want)


def test_spin_space_solve_equals_channel_assembly():
    g_e, g_o, u, w = _rng_matrices()
    big = solve_dyson_matrix(lift_spin_blocks(g_e, g_o),
                             np.tile(u, 4), np.tile(w, 4))
    assembled = lift_spin_blocks(solve_dyson_matrix(g_e, u, w),
                                 solve_dyson_matrix(g_o, u, w))
    assert np.max(np.abs(big - assembled)) < 1e-10


def test_singular_system_raises():
    g = np.array([[1.0 + 0j]])
    with pytest.raises(SingularSystem):
        solve_dyson_matrix(g, np.array([1.0]), np.array([1.0]))


def test_first_born_consistency():
    # (G - g - lam g U g)/lam^2 stays bounded as lam -> 0
    g_e, _, u, w = _rng_matrices()
    ref = None
    for lam in (1e-2, 1e-3):
        G = solve_dyson_matrix(g_e, lam * u, w)
        first = g_e @ np.diag(lam * u * w) @ g_e
        rem = np.max(np.abs(G - g_e - first)) / lam ** 2
        if ref is None:
            ref = rem
        else:
            assert rem < 4.0 * ref + 1.0


def test_channel_symmetry_preserved_by_solve():
    # exchange-closed grid: pairing i <-> sigma(i); a bare matrix with
    # g[i, j] = g[sigma(i), j] = g[i, sigma(j)] keeps that structure
    n = 4
    sigma = [1, 0, 3, 2]
    rng = np.random.default_rng(9)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    g = 0.1 * (g + g[sigma][:, sigma] + g[sigma] + g[:, sigma])
    u = rng.normal(size=n)
    u = 0.5 * (u + u[sigma])
    w = np.full(n, 0.25)
    G = solve_dyson_matrix(g, u, w)
    assert np.max(np.abs(G - G[sigma][:, sigma])) < 1e-12
    assert np.max(np.abs(G - G[sigma])) < 1e-12


# =============================================================================
# GRID AND PHYSICAL BARE MATRIX
# =============================================================================

def test_grid_symmetrizes():
    pts = [((1.0, 0, 0), (0.0, 1.0, 0))]
    grid = GridSpec.build(pts, [0.5])
    assert len(grid) == 2
    assert grid.points[1] == (grid.points[0][1], grid.points[0][0])
    assert grid.weights == (0.5, 0.5)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec.build([((0, 0, 0), (1, 0, 0))], [-1.0])
    with pytest.raises(ValueError):
        GridSpec.build([((0, 0, 0), (1, 0, 0))], [0.1, 0.2])


def test_physical_bare_diagonal_policy():
    grid = GridSpec.build([((0.4, 0, 0), (0.0, 0.8, 0)),
                           ((1.2, 0.3, 0), (0.1, 0, 0.9))], [0.3, 0.3],
                          symmetrize=False)
    pot = PotentialSpec(v_ext=lambda a: 0.0, u_pair=lambda a, b: 0.0)
    with pytest.raises(DivergentArguments):
        dyson_solve(grid, pot, 1.0, SpinChannel.SINGLET, diagonal="error")
    g = bare_channel_matrix(grid, 1.0, SpinChannel.SINGLET, diagonal="zero")
    assert g[0, 0] == 0 and g[1, 1] == 0
    assert g[0, 1] != 0
    # U = 0: the solve returns the bare matrix
    G = dyson_solve(grid, pot, 1.0, SpinChannel.SINGLET, diagonal="zero")
    assert np.array_equal(G, g)


def test_dyson_solve_with_callable_bare():
    grid = GridSpec.build([((0.4, 0, 0), (0.0, 0.8, 0)),
                           ((1.2, 0.3, 0), (0.1, 0, 0.9))], [0.3, 0.3],
                          symmetrize=False)
    pot = PotentialSpec(v_ext=lambda a: 0.1 * a[0],
                        u_pair=lambda a, b: 0.05)

    def toy(a1, b1, a2, b2, E, channel):
        da = math.dist(a1, a2) + math.dist(b1, b2)
        return 0.2 / (1.0 + da) + 0.03j

    G = dyson_solve(grid, pot, 1.0, SpinChannel.TRIPLET, bare=toy)
    assert G.shape == (2, 2)
    assert np.all(np.isfinite(G))
