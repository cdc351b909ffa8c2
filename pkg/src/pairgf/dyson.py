"""Channel-decoupled Dyson solver on small coordinate grids.

For a spin-independent one-body potential V and pair interaction u, the
perturbation U(a, b) = V(a) + V(b) + u(a, b) commutes with the spin
projectors, so the Dyson equation G = g + g U G splits into independent
even (singlet) and odd (triplet) equations.  Discretized with quadrature
weights w on a grid of (a, b) points (a Nystrom scheme),

    (I - g diag(U w)) G = g

is solved densely per channel.  In the full two-spin product space the
bare propagator is Lambda_s (x) g_even + Lambda_t (x) g_odd, and a
spin-independent potential has exactly vanishing singlet-triplet
cross blocks, which is checked structurally by the test suite.

Scope is demonstration scale: a few hundred grid points, direct solves.
Building the bare matrix from the physical pair kernel is possible only
for grids whose point pairs are all regular; the self pairing (i = j) is
always a coincident divergence, so the diagonal follows an explicit policy
("error" by default, "zero" for the punctured-Nystrom convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergentArguments, SingularSystem
from .pair import PairArgs, SpinChannel, classify_args, pair_gf_channel

_DEFAULT_CAP = 512


def spin_projectors():
    """Singlet and triplet projectors in the two-spin product basis
    (uu, ud, du, dd).  Traces are 1 and 3; the product vanishes."""
    s = np.zeros(4)
    s[1] = 1.0 / math.sqrt(2.0)
    s[2] = -1.0 / math.sqrt(2.0)
    lam_s = np.outer(s, s)
    lam_t = np.eye(4) - lam_s
    return lam_s, lam_t


def lift_spin_blocks(g_even: np.ndarray, g_odd: np.ndarray) -> np.ndarray:
    """Bare propagator in the full spin (x) position space."""
    lam_s, lam_t = spin_projectors()
    return np.kron(lam_s, g_even) + np.kron(lam_t, g_odd)


@dataclass(frozen=True)
class GridSpec:
    """Quadrature grid of (a, b) coordinate pairs with positive weights."""

    points: tuple
    weights: tuple

    def __post_init__(self):
        pts = tuple((tuple(map(float, a)), tuple(map(float, b)))
                    for a, b in self.points)
        wts = tuple(float(w) for w in self.weights)
        if len(pts) != len(wts):
            raise ValueError("points and weights length mismatch")
        if any(w <= 0 for w in wts):
            raise ValueError("weights must be positive")
        if len(pts) > _DEFAULT_CAP:
            raise ValueError(f"grid exceeds the {_DEFAULT_CAP}-point cap")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @classmethod
    def build(cls, points, weights, symmetrize: bool = True) -> "GridSpec":
        """Construct a grid, adding missing (b, a) exchange partners.

        Exchange closure is what lets the solve preserve the even/odd
        channel symmetry; each added partner carries its mirror cell's
        weight, i.e. the same weight as the original point.
        """
        pts = [(tuple(map(float, a)), tuple(map(float, b)))
               for a, b in points]
        wts = [float(w) for w in weights]
        if symmetrize:
            have = set(pts)
            for (a, b), w in list(zip(pts, wts)):
                mirror = (b, a)
                if mirror not in have:
                    pts.append(mirror)
                    wts.append(w)
                    have.add(mirror)
        return cls(tuple(pts), tuple(wts))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class PotentialSpec:
    """Spin-independent external potential and pair interaction."""

    v_ext: Callable
    u_pair: Callable

    def total(self, a, b) -> float:
        return float(self.v_ext(a)) + float(self.v_ext(b)) \
            + float(self.u_pair(a, b))


def potential_values(pot: PotentialSpec, grid: GridSpec) -> np.ndarray:
    return np.array([pot.total(a, b) for a, b in grid.points], dtype=float)


def solve_dyson_matrix(g: np.ndarray, u: np.ndarray, w: np.ndarray, *,
                       cond_limit: float = 1e12) -> np.ndarray:
    """Solve G = g + g diag(u w) G for a given bare matrix.

    Raises :class:`SingularSystem` when I - g diag(u w) is singular or its
    condition estimate exceeds ``cond_limit``.
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError("bare matrix must be square")
    uw = np.asarray(u, dtype=float) * np.asarray(w, dtype=float)
    if uw.shape != (n,):
        raise ValueError("u and w must match the grid size")
    a = np.eye(n, dtype=complex) - g * uw[np.newaxis, :]
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularSystem(f"Dyson system condition {cond:.3e} beyond limit")
    return np.linalg.solve(a, g)


def bare_channel_matrix(grid: GridSpec, E: float, channel: SpinChannel, *,
                        c_k: float = 1.0, diagonal: str = "error",
                        gf: Callable | None = None) -> np.ndarray:
    """Bare channel propagator g_ch(x_i, x_j) on the grid.

    ``gf`` overrides the physical kernel (signature
    ``gf(a1, b1, a2, b2, E, channel) -> complex``); otherwise
    :func:`pairgf.pair.pair_gf_channel` is used.  The self pairing is always
    a coincident divergence of the physical kernel: ``diagonal="zero"``
    adopts the punctured-Nystrom convention, ``diagonal="error"`` refuses.
    """
    if diagonal not in ("error", "zero"):
        raise ValueError("diagonal must be 'error' or 'zero'")
    n = len(grid)
    out = np.zeros((n, n), dtype=complex)
    for i, (a1, b1) in enumerate(grid.points):
        for j, (a2, b2) in enumerate(grid.points):
            if i == j and gf is None:
                if diagonal == "zero":
                    continue
                raise DivergentArguments(
                    classify_args(PairArgs(a1, b1, a2, b2)),
                    "grid self-pairing is coincident; use diagonal='zero' "
                    "or supply a regularized bare kernel")
            if gf is not None:
                out[i, j] = gf(a1, b1, a2, b2, E, channel)
            else:
                out[i, j] = pair_gf_channel(PairArgs(a1, b1, a2, b2), E,
                                            channel, c_k=c_k)
    return out


def dyson_solve(grid: GridSpec, pot: PotentialSpec, E: float,
                channel: SpinChannel, *, bare=None, c_k: float = 1.0,
                diagonal: str = "error",
                cond_limit: float = 1e12) -> np.ndarray:
    """Solve the channel Dyson equation on a grid.

    ``bare`` may be a precomputed matrix, a callable as accepted by
    :func:`bare_channel_matrix`, or None for the physical kernel.
    """
    if bare is None or callable(bare):
        g = bare_channel_matrix(grid, E, channel, c_k=c_k,
                                diagonal=diagonal, gf=bare)
    else:
        g = np.asarray(bare, dtype=complex)
    u = potential_values(pot, grid)
    w = np.array(grid.weights)
    return solve_dyson_matrix(g, u, w, cond_limit=cond_limit)
